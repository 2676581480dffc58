// qsymx: desk-scale verification CLI for quantum symmetric/exterior power
// structure of U_q(g)-modules at real q > 0.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qsymx/braiding.hpp"
#include "qsymx/cactus.hpp"
#include "qsymx/cartan.hpp"
#include "qsymx/groth.hpp"
#include "qsymx/report.hpp"
#include "qsymx/symext.hpp"
#include "qsymx/uqg.hpp"

using namespace qsymx;

namespace {

struct CommonOpts {
  std::string type = "A1";
  std::string hw;
  std::string summands;
  std::string with_hw;
  double q = 1.2;
  int n = 3;
  double tol = -1.0;
  std::string format = "table";
  std::string out;
  bool stamp = false;
};

Weight parse_weight(const std::string& text, int rank) {
  std::vector<int> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    coords.push_back(std::stoi(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("bad weight entry '" + item + "'");
  }
  if (static_cast<int>(coords.size()) != rank)
    throw std::invalid_argument("weight '" + text + "' has " +
                                std::to_string(coords.size()) + " entries, expected " +
                                std::to_string(rank));
  return Weight(coords);
}

std::vector<Weight> parse_summands(const std::string& text, int rank) {
  std::vector<Weight> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(parse_weight(item, rank));
  if (out.empty()) throw std::invalid_argument("empty summand list");
  return out;
}

ModuleRep build_from_opts(const RootSystem& rs, const CommonOpts& o) {
  if (!o.summands.empty()) {
    std::vector<ModuleRep> parts;
    for (const Weight& lam : parse_summands(o.summands, rs.rank))
      parts.push_back(build_simple(rs, lam, o.q));
    return direct_sum(parts);
  }
  if (o.hw.empty()) throw std::invalid_argument("one of --hw or --summands is required");
  return build_simple(rs, parse_weight(o.hw, rs.rank), o.q);
}

std::string describe_module(const CommonOpts& o) {
  return o.summands.empty() ? o.hw : o.summands;
}

Report make_report(const std::string& command, const CommonOpts& o) {
  Report rep;
  rep.add_meta("command", ReportValue::text(command));
  rep.add_meta("type", ReportValue::text(o.type));
  if (!o.summands.empty())
    rep.add_meta("summands", ReportValue::text(o.summands));
  else if (!o.hw.empty())
    rep.add_meta("hw", ReportValue::text(o.hw));
  if (!o.with_hw.empty()) rep.add_meta("with", ReportValue::text(o.with_hw));
  rep.add_meta("q", ReportValue::num(o.q));
  rep.add_meta("n", ReportValue::integer(o.n));
  rep.add_meta("tol", ReportValue::num(default_tolerance()));
  if (o.stamp) {
    const auto now = std::chrono::system_clock::now();
    rep.add_meta("timestamp",
                 ReportValue::integer(static_cast<long>(
                     std::chrono::duration_cast<std::chrono::seconds>(
                         now.time_since_epoch())
                         .count())));
  }
  return rep;
}

ReportValue groth_value(const GrothElement& g) { return ReportValue::text(to_string(g)); }

void check_residual(Report& rep, const std::string& name, double residual, double tol) {
  rep.add_check(CheckResult{name, residual < tol, {}}
                    .with("residual", ReportValue::num(residual))
                    .with("tolerance", ReportValue::num(tol)));
}

// ---- subcommand bodies ------------------------------------------------

void run_module(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  const ModuleRep m = build_from_opts(rs, o);
  long expected = 0;
  for (const Summand& s : m.summands) expected += weyl_dim(rs, s.lambda);
  rep.add_check(CheckResult{"dimension", m.dim == expected, {}}
                    .with("dim", ReportValue::integer(m.dim))
                    .with("weyl", ReportValue::integer(expected)));
  check_residual(rep, "relations", relation_residual(m), 1e-8);
  check_residual(rep, "gram_invariance", gram_invariance_residual(m), 1e-8);
}

void run_decompose(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  ModuleRep m = build_from_opts(rs, o);
  std::vector<Weight> weights;
  if (!o.with_hw.empty()) {
    const ModuleRep w = build_simple(rs, parse_weight(o.with_hw, rs.rank), o.q);
    m = tensor_module(m, w);
  }
  const GrothElement got = decompose(m);
  std::map<Weight, long> multiset;
  for (const Weight& w : m.basis_weights) ++multiset[w];
  const GrothElement oracle = peel_character(rs, multiset);
  rep.add_check(CheckResult{"oracle_agreement", got == oracle, {}}
                    .with("decomposition", groth_value(got))
                    .with("peeled", groth_value(oracle))
                    .with("dim", ReportValue::integer(m.dim)));
}

void run_braiding(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  const ModuleRep v = build_from_opts(rs, o);
  const ModuleRep w = o.with_hw.empty()
                          ? v
                          : build_simple(rs, parse_weight(o.with_hw, rs.rank), o.q);
  const TensorSpace vw({v, w});
  const TensorSpace wv({w, v});
  const Mat r = r_matrix(vw).matrix;
  check_residual(rep, "intertwiner", intertwiner_residual(vw, r), 1e-8);
  rep.add_check(CheckResult{"product_order", true, {}}.with(
      "reversed", ReportValue::boolean(r_matrix_used_reversed_order())));

  // R on the top vector: q^{(lambda|mu)} e_0.
  const double hw_expect =
      std::pow(o.q, weight_inner_d(rs, v.basis_weights[0], w.basis_weights[0]));
  Vec e0 = Vec::Zero(r.rows());
  e0(0) = 1.0;
  const double hw_res = ((r * e0 - hw_expect * e0).cwiseAbs()).maxCoeff();
  check_residual(rep, "highest_weight_action", hw_res, 1e-10);

  const Mat s_scalar = coboundary(vw, SqrtPath::scalar).matrix;
  const Mat s_spectral = coboundary(vw, SqrtPath::spectral).matrix;
  check_residual(rep, "two_path_agreement", max_abs(s_scalar - s_spectral), 1e-9);

  const Mat g_vw = kron(v.gram, w.gram);
  const Mat g_wv = kron(w.gram, v.gram);
  check_residual(rep, "sigma_unitary",
                 max_abs(s_scalar.transpose() * g_wv * s_scalar - g_vw), 1e-9);
  const Mat s_back = coboundary(wv, SqrtPath::scalar).matrix;
  check_residual(rep, "sigma_inverse",
                 max_abs(s_back * s_scalar - Mat::Identity(r.rows(), r.rows())), 1e-9);
  const Mat adj = g_vw.llt().solve(s_scalar.transpose() * g_wv);
  check_residual(rep, "sigma_adjoint_swap", max_abs(adj - s_back), 1e-9);
}

void run_cactus(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  const ModuleRep v = build_from_opts(rs, o);
  const int n = o.n;
  if (n < 2 || n > 5) throw std::invalid_argument("cactus needs 2 <= n <= 5");
  const TensorSpace t = tensor_power(v, n);
  const int dim = t.combined().dim;
  const Mat id = Mat::Identity(dim, dim);

  std::map<std::pair<int, int>, Mat> gen;
  for (int p = 1; p <= n; ++p)
    for (int tt = p + 1; tt <= n; ++tt)
      gen[{p, tt}] = cactus_generator(t, p, tt).matrix;

  double inv_res = 0, disj_res = 0, nest_res = 0;
  for (const auto& [key, mat] : gen) inv_res = std::max(inv_res, max_abs(mat * mat - id));
  for (const auto& [k1, m1] : gen)
    for (const auto& [k2, m2] : gen) {
      const auto [p, tt] = k1;
      const auto [k, l] = k2;
      if (tt < k || l < p)
        disj_res = std::max(disj_res, max_abs(m1 * m2 - m2 * m1));
      if (p <= k && l <= tt) {
        const int i = p + tt - l, j = p + tt - k;
        nest_res = std::max(nest_res, max_abs(m1 * m2 - gen[{i, j}] * m1));
      }
    }
  check_residual(rep, "involution", inv_res, 1e-8);
  check_residual(rep, "disjoint_commute", disj_res, 1e-8);
  check_residual(rep, "nesting", nest_res, 1e-8);

  double module_map = 0;
  const ModuleRep& big = t.combined();
  for (const auto& [key, mat] : gen)
    for (int i = 0; i < rs.rank; ++i) {
      module_map = std::max(module_map, max_abs(mat * big.E[i] - big.E[i] * mat));
      module_map = std::max(module_map, max_abs(mat * big.F[i] - big.F[i] * mat));
    }
  check_residual(rep, "module_map", module_map, 1e-8);

  if (n >= 3) {
    const TensorSpace t3 = tensor_power(v, 3);
    const J3Elements j3 = j3_special_elements(t3);
    const int d3 = t3.combined().dim;
    double j3_res = max_abs(j3.a.matrix * j3.a.matrix - Mat::Identity(d3, d3));
    j3_res = std::max(j3_res, max_abs(j3.psi.matrix * j3.a.matrix -
                                      j3.b.matrix * j3.psi.matrix));
    check_residual(rep, "j3_relations", j3_res, 1e-8);
  }
}

void run_sympow(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  const ModuleRep v = build_from_opts(rs, o);
  for (int k = 2; k <= o.n; ++k) {
    const QuotientComponent qs = quotient_component(v, k, PowerKind::sym);
    const QuotientComponent qe = quotient_component(v, k, PowerKind::ext);
    rep.add_check(CheckResult{"degree_" + std::to_string(k),
                              qs.embedding_ok && qe.embedding_ok &&
                                  qs.quotient_dim == qs.subspace_dim &&
                                  qe.quotient_dim == qe.subspace_dim,
                              {}}
                      .with("sym_dim", ReportValue::integer(qs.subspace_dim))
                      .with("ext_dim", ReportValue::integer(qe.subspace_dim))
                      .with("sym_ideal_dim", ReportValue::integer(qs.ideal_dim))
                      .with("ext_ideal_dim", ReportValue::integer(qe.ideal_dim))
                      .with("sym_quotient_dim", ReportValue::integer(qs.quotient_dim))
                      .with("ext_quotient_dim", ReportValue::integer(qe.quotient_dim))
                      .with("intersection",
                            ReportValue::integer(qs.intersection_dim +
                                                 qe.intersection_dim)));
  }
}

void run_flatness(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  const ModuleRep v = build_from_opts(rs, o);
  for (const FlatnessRow& row : flatness(v, o.n)) {
    rep.add_check(CheckResult{"degree_" + std::to_string(row.degree),
                              row.sym_flat && row.ext_flat,
                              {}}
                      .with("sym_dim", ReportValue::integer(row.sym_dim))
                      .with("sym_classical", ReportValue::integer(row.sym_classical))
                      .with("ext_dim", ReportValue::integer(row.ext_dim))
                      .with("ext_classical", ReportValue::integer(row.ext_classical)));
  }
}

void run_commutativity(Report& rep, const RootSystem& rs, const CommonOpts& o,
                       bool super) {
  const ModuleRep v = build_from_opts(rs, o);
  const CommutativityResult r = commutativity_check(v, o.n, super);
  rep.add_check(CheckResult{super ? "super_commutativity" : "commutativity",
                            r.residual < 1e-8,
                            {}}
                    .with("residual", ReportValue::num(r.residual))
                    .with("tolerance", ReportValue::num(1e-8))
                    .with("worst_generator",
                          ReportValue::text("s_{" + std::to_string(r.worst_p) + "," +
                                            std::to_string(r.worst_t) + "}")));
}

void run_cube(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  const ModuleRep v = build_from_opts(rs, o);
  const CubeIdentityReport r = verify_cube_identity(v);
  CheckResult main{"identity_holds", r.identity_holds, {}};
  main.with("quantum_sym", groth_value(r.quantum_sym))
      .with("quantum_ext", groth_value(r.quantum_ext))
      .with("classical_sym", groth_value(r.classical_sym))
      .with("classical_ext", groth_value(r.classical_ext));
  if (!r.mismatches.empty()) {
    std::string bad;
    for (const Weight& w : r.mismatches) bad += to_string(w);
    main.with("differing_terms", ReportValue::text(bad));
  }
  rep.add_check(std::move(main));
  rep.add_check(CheckResult{"lifted_identity", r.lifted_holds, {}});
  rep.add_check(CheckResult{"koszul_count", r.koszul_ok, {}}
                    .with("sym_dim", ReportValue::integer(r.sym_dim))
                    .with("ext_dim", ReportValue::integer(r.ext_dim))
                    .with("difference", ReportValue::integer(r.koszul_difference))
                    .with("expected", ReportValue::integer(r.koszul_expected)));
  rep.add_check(CheckResult{"fixed_space_description", r.lemma_fixed_space_ok, {}});

  const ZwicknaglReport z = zwicknagl_cubes(v);
  rep.add_check(CheckResult{"zwicknagl_lower_cubes", z.identity_ok, {}}
                    .with("s3_lower", groth_value(z.s3_lower))
                    .with("l3_lower", groth_value(z.l3_lower)));
}

void run_koszul(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  const ModuleRep v = build_from_opts(rs, o);
  const HilbertKoszul h = hilbert_and_koszul(v);
  CheckResult c{"koszul_count", h.koszul_ok, {}};
  for (size_t k = 0; k < h.sym.dims.size(); ++k)
    c.with("sym_" + std::to_string(k), ReportValue::integer(h.sym.dims[k]));
  for (size_t k = 0; k < h.ext.dims.size(); ++k)
    c.with("ext_" + std::to_string(k), ReportValue::integer(h.ext.dims[k]));
  c.with("difference", ReportValue::integer(h.difference))
      .with("expected", ReportValue::integer(h.expected));
  rep.add_check(std::move(c));
}

void run_psi(Report& rep, const RootSystem& rs, const CommonOpts& o) {
  const ModuleRep v = build_from_opts(rs, o);
  const PsiSpectrumReport r = psi_spectrum_check(v);
  CheckResult c{"psi_spectrum", r.pass, {}};
  if (r.q_is_one)
    c.with("psi_cubed_exact", ReportValue::boolean(r.psi_cubed_exact));
  else
    c.with("min_singular_value", ReportValue::num(r.overall_min))
        .with("threshold", ReportValue::num(0.05));
  rep.add_check(std::move(c));
}

void run_suite(Report& rep, const CommonOpts& base) {
  struct Job {
    std::string type;
    std::string hw;
    std::string summands;
  };
  const std::vector<Job> jobs = {
      {"A1", "1", ""},       {"A1", "2", ""},     {"A1", "3", ""},
      {"A1", "", "1;2"},     {"A2", "1,0", ""},   {"A2", "0,1", ""},
      {"A2", "", "1,0;0,1"}, {"B2", "1,0", ""},   {"B2", "0,1", ""},
  };
  for (const Job& job : jobs) {
    for (double q : {1.2, 1.3}) {
      CommonOpts o = base;
      o.type = job.type;
      o.hw = job.hw;
      o.summands = job.summands;
      o.q = q;
      const RootSystem rs = build_root_system(parse_cartan_type(o.type));
      const ModuleRep v = build_from_opts(rs, o);
      const std::string tag = job.type + " " + describe_module(o) + " q=" +
                              format_sig12(q);
      const CubeIdentityReport r = verify_cube_identity(v);
      rep.add_check(CheckResult{"cube " + tag,
                                r.identity_holds && r.lifted_holds && r.koszul_ok &&
                                    r.lemma_fixed_space_ok,
                                {}}
                        .with("quantum_sym", groth_value(r.quantum_sym))
                        .with("quantum_ext", groth_value(r.quantum_ext)));
      if (q == 1.2) {
        // q-independence witness: identical decompositions at 1.3.
        CommonOpts o2 = o;
        o2.q = 1.3;
        const ModuleRep v2 = build_from_opts(rs, o2);
        const QuantumCube c1s = quantum_cube(v, PowerKind::sym);
        const QuantumCube c2s = quantum_cube(v2, PowerKind::sym);
        const QuantumCube c1e = quantum_cube(v, PowerKind::ext);
        const QuantumCube c2e = quantum_cube(v2, PowerKind::ext);
        rep.add_check(
            CheckResult{"q_independence " + job.type + " " + describe_module(o),
                        c1s.decomposition == c2s.decomposition &&
                            c1e.decomposition == c2e.decomposition,
                        {}});
        const PsiSpectrumReport psi = psi_spectrum_check(v);
        rep.add_check(CheckResult{"psi " + tag, psi.pass, {}}.with(
            "min_singular_value", ReportValue::num(psi.overall_min)));
      }
    }
  }
  for (const std::string& type : {"A1", "A2"}) {
    CommonOpts o = base;
    o.type = type;
    o.hw = (type == "A1") ? "1" : "1,0";
    o.q = 1.2;
    const RootSystem rs = build_root_system(parse_cartan_type(type));
    const ModuleRep v = build_from_opts(rs, o);
    for (int n : {3, 4}) {
      const CommutativityResult c = commutativity_check(v, n, false);
      const CommutativityResult cs = commutativity_check(v, n, true);
      rep.add_check(CheckResult{"commutativity " + type + " n=" + std::to_string(n),
                                c.residual < 1e-8 && cs.residual < 1e-8,
                                {}}
                        .with("residual", ReportValue::num(c.residual))
                        .with("super_residual", ReportValue::num(cs.residual)));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsymx: quantum symmetric/exterior power verification"};
  app.require_subcommand(1);

  CommonOpts opts;
  if (const char* env = std::getenv("QSYMX_TOL")) opts.tol = std::atof(env);

  bool super_flag = false;
  std::vector<CLI::App*> subs;
  for (const char* name :
       {"module", "decompose", "braiding", "cactus", "sympow", "flatness",
        "commutativity", "cube", "koszul", "psi", "suite"}) {
    CLI::App* s = app.add_subcommand(name);
    s->add_option("--type", opts.type, "Cartan type: A1, A2 or B2");
    s->add_option("--hw", opts.hw, "highest weight, e.g. 3 or 1,0");
    s->add_option("--summands", opts.summands, "direct sum, e.g. \"1,0;0,1\"");
    s->add_option("--with", opts.with_hw, "second tensor factor highest weight");
    s->add_option("--q", opts.q, "deformation parameter (default 1.2)");
    s->add_option("--n", opts.n, "degree / tensor power (default 3)");
    s->add_option("--tol", opts.tol, "rank/kernel tolerance (default 1e-9)");
    s->add_option("--format", opts.format, "table, json or csv");
    s->add_option("--out", opts.out, "write the report to a file");
    s->add_flag("--stamp", opts.stamp, "include a timestamp in the report meta");
    if (std::string(name) == "commutativity")
      s->add_flag("--super", super_flag, "check the sign-twisted variant");
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (opts.tol > 0) set_default_tolerance(opts.tol);
    if (opts.format != "table" && opts.format != "json" && opts.format != "csv")
      throw std::invalid_argument("unknown format '" + opts.format + "'");

    const std::string cmd = app.get_subcommands().front()->get_name();
    Report rep = make_report(cmd, opts);

    if (cmd == "suite") {
      run_suite(rep, opts);
    } else {
      const RootSystem rs = build_root_system(parse_cartan_type(opts.type));
      if (cmd == "module") run_module(rep, rs, opts);
      else if (cmd == "decompose") run_decompose(rep, rs, opts);
      else if (cmd == "braiding") run_braiding(rep, rs, opts);
      else if (cmd == "cactus") run_cactus(rep, rs, opts);
      else if (cmd == "sympow") run_sympow(rep, rs, opts);
      else if (cmd == "flatness") run_flatness(rep, rs, opts);
      else if (cmd == "commutativity") run_commutativity(rep, rs, opts, super_flag);
      else if (cmd == "cube") run_cube(rep, rs, opts);
      else if (cmd == "koszul") run_koszul(rep, rs, opts);
      else if (cmd == "psi") run_psi(rep, rs, opts);
    }

    std::string text;
    if (opts.format == "json") text = rep.to_json();
    else if (opts.format == "csv") text = rep.to_csv();
    else text = rep.to_table();

    if (!opts.out.empty()) {
      std::ofstream f(opts.out, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot write to '" + opts.out + "'");
      f << text;
    } else {
      std::cout << text;
    }
    return rep.all_pass() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // Construction rejections are failed verifications.
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}
