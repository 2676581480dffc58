#include "qsymx/groth.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qsymx {

void GrothElement::add(const Weight& lambda, long m) {
  if (!lambda.dominant())
    throw std::invalid_argument("GrothElement keys must be dominant, got " +
                                to_string(lambda));
  const long v = (terms[lambda] += m);
  if (v == 0) terms.erase(lambda);
}

long GrothElement::mult(const Weight& lambda) const {
  const auto it = terms.find(lambda);
  return it == terms.end() ? 0 : it->second;
}

bool GrothElement::nonnegative() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const auto& kv) { return kv.second >= 0; });
}

long GrothElement::total_dim(const RootSystem& rs) const {
  long total = 0;
  for (const auto& [lam, m] : terms) total += m * weyl_dim(rs, lam);
  return total;
}

GrothElement GrothElement::operator+(const GrothElement& o) const {
  GrothElement out = *this;
  for (const auto& [lam, m] : o.terms) out.add(lam, m);
  return out;
}

GrothElement GrothElement::operator-(const GrothElement& o) const {
  GrothElement out = *this;
  for (const auto& [lam, m] : o.terms) out.add(lam, -m);
  return out;
}

GrothElement termwise_min(const GrothElement& a, const GrothElement& b) {
  GrothElement out;
  for (const auto& [lam, m] : a.terms) {
    const long v = std::min(m, b.mult(lam));
    if (v != 0) out.add(lam, v);
  }
  for (const auto& [lam, m] : b.terms) {
    if (a.terms.count(lam)) continue;
    const long v = std::min(0L, m);
    if (v != 0) out.add(lam, v);
  }
  return out;
}

std::string to_string(const GrothElement& g) {
  if (g.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [lam, m] : g.terms) {
    if (!first) os << " + ";
    os << m << "*V" << to_string(lam);
    first = false;
  }
  return os.str();
}

namespace {

// Highest-weight multiplicity on one dominant weight block of a module,
// optionally restricted to a subspace with weight-block basis `w`.
int hw_count(const ModuleRep& m, const std::vector<int>& idxs, const Mat* w) {
  const int cols = w ? static_cast<int>(w->cols()) : static_cast<int>(idxs.size());
  if (!cols) return 0;
  Mat stack(m.rs.rank * m.dim, cols);
  for (int i = 0; i < m.rs.rank; ++i) {
    if (w) {
      stack.block(i * m.dim, 0, m.dim, cols) = m.E[i] * (*w);
    } else {
      for (size_t c = 0; c < idxs.size(); ++c)
        stack.block(i * m.dim, c, m.dim, 1) = m.E[i].col(idxs[c]);
    }
  }
  Eigen::Index rank = numerical_rank_guarded(stack);
  return cols - static_cast<int>(rank);
}

}  // namespace

GrothElement decompose(const ModuleRep& m) {
  GrothElement out;
  for (const auto& [wt, idxs] : m.weight_blocks()) {
    if (!wt.dominant()) continue;
    const int k = hw_count(m, idxs, nullptr);
    if (k > 0) out.add(wt, k);
  }
  if (out.total_dim(m.rs) != m.dim)
    throw std::runtime_error("decompose rejected: multiplicities sum to " +
                             std::to_string(out.total_dim(m.rs)) + " but dim is " +
                             std::to_string(m.dim));
  return out;
}

GrothElement decompose(const TensorSpace& t) { return decompose(t.combined()); }

GrothElement decompose_subspace(const ModuleRep& big, const Mat& basis) {
  GrothElement out;
  for (const auto& [wt, idxs] : big.weight_blocks()) {
    if (!wt.dominant()) continue;
    // Weight-wt part of the (graded) span: project the basis onto the block.
    Mat c = Mat::Zero(big.dim, basis.cols());
    for (int j = 0; j < basis.cols(); ++j)
      for (int idx : idxs) c(idx, j) = basis(idx, j);
    const Mat w = orthonormal_colspace(c);
    if (!w.cols()) continue;
    const int k = hw_count(big, idxs, &w);
    if (k > 0) out.add(wt, k);
  }
  if (out.total_dim(big.rs) != basis.cols())
    throw std::runtime_error(
        "decompose_subspace rejected: multiplicities sum to " +
        std::to_string(out.total_dim(big.rs)) + " but the subspace dimension is " +
        std::to_string(basis.cols()));
  return out;
}

std::map<Weight, long> classical_weights(const RootSystem& rs, const Weight& lambda) {
  if (!lambda.dominant())
    throw std::invalid_argument("classical_weights requires a dominant weight");
  // w0(lambda): -lambda for A1/B2, -(swap) for A2.
  Weight w0l = lambda * -1;
  if (rs.type == CartanType::A2) std::swap(w0l.coords[0], w0l.coords[1]);
  const auto cmax_r = root_coordinates(rs, lambda - w0l);
  std::vector<long> cmax;
  for (const Rat& c : cmax_r) {
    if (c.denominator() != 1 || c.numerator() < 0)
      throw std::runtime_error("weight box for Freudenthal is not integral");
    cmax.push_back(static_cast<long>(c.numerator()));
  }

  // Enumerate the box lambda - sum c_i alpha_i, ascending in sum c_i.
  std::vector<std::pair<long, Weight>> points;
  std::vector<long> c(rs.rank, 0);
  while (true) {
    Weight mu = lambda;
    long h = 0;
    for (int i = 0; i < rs.rank; ++i) {
      mu = mu - rs.alpha(i) * static_cast<int>(c[i]);
      h += c[i];
    }
    points.emplace_back(h, mu);
    int i = 0;
    while (i < rs.rank && c[i] == cmax[i]) c[i++] = 0;
    if (i == rs.rank) break;
    ++c[i];
  }
  std::sort(points.begin(), points.end());

  const Rat lr2 = weight_inner(rs, lambda + rs.rho, lambda + rs.rho);
  std::map<Weight, long> mult;
  for (const auto& [h, mu] : points) {
    if (h == 0) {
      mult[mu] = 1;
      continue;
    }
    const Rat den = lr2 - weight_inner(rs, mu + rs.rho, mu + rs.rho);
    if (den <= Rat(0)) {
      mult[mu] = 0;
      continue;
    }
    Rat num = 0;
    for (const Weight& beta : rs.positive_roots) {
      for (long k = 1;; ++k) {
        const Weight nu = mu + beta * static_cast<int>(k);
        const auto it = mult.find(nu);
        if (it == mult.end()) break;  // left the box; multiplicities vanish beyond
        num += Rat(it->second) * weight_inner(rs, nu, beta);
      }
    }
    const Rat v = Rat(2) * num / den;
    if (v.denominator() != 1)
      throw std::runtime_error("Freudenthal recursion produced a non-integer");
    mult[mu] = static_cast<long>(v.numerator());
  }
  std::map<Weight, long> out;
  long total = 0;
  for (const auto& [mu, m] : mult) {
    if (m < 0) throw std::runtime_error("Freudenthal recursion produced a negative");
    if (m > 0) {
      out[mu] = m;
      total += m;
    }
  }
  if (total != weyl_dim(rs, lambda))
    throw std::runtime_error("classical character total does not match the Weyl dimension");
  return out;
}

GrothElement peel_character(const RootSystem& rs, std::map<Weight, long> multiset) {
  GrothElement out;
  while (!multiset.empty()) {
    // Largest weight by height in root coordinates, ties by coordinates.
    auto best = multiset.begin();
    Rat best_h(-1000000, 1);
    for (auto it = multiset.begin(); it != multiset.end(); ++it) {
      Rat h = 0;
      for (const Rat& ci : root_coordinates(rs, it->first)) h += ci;
      if (h > best_h || (h == best_h && it->first > best->first)) {
        best_h = h;
        best = it;
      }
    }
    const Weight lam = best->first;
    const long m = best->second;
    if (!lam.dominant() || m < 0)
      throw std::runtime_error("character peeling hit a corrupt multiset at " +
                               to_string(lam));
    for (const auto& [mu, k] : classical_weights(rs, lam)) {
      const long v = (multiset[mu] -= m * k);
      if (v == 0) multiset.erase(mu);
      else if (v < 0)
        throw std::runtime_error("character peeling went negative at " + to_string(mu));
    }
    out.add(lam, m);
  }
  return out;
}

GrothElement classical_cube(const RootSystem& rs, const std::vector<Weight>& weights,
                            PowerKind kind) {
  std::map<Weight, long> multiset;
  const int n = static_cast<int>(weights.size());
  for (int i = 0; i < n; ++i) {
    for (int j = (kind == PowerKind::sym) ? i : i + 1; j < n; ++j) {
      for (int k = (kind == PowerKind::sym) ? j : j + 1; k < n; ++k) {
        ++multiset[weights[i] + weights[j] + weights[k]];
      }
    }
  }
  return peel_character(rs, multiset);
}

QuantumCube quantum_cube(const ModuleRep& v, PowerKind kind) {
  QuantumCube out;
  const TensorSpace t3 = tensor_power(v, 3);
  const Mat basis = power_subspace(v, 3, kind);
  out.dim = basis.cols();
  out.decomposition = decompose_subspace(t3.combined(), basis);

  // Cross-check: the subspace is the joint fixed space {a v = +/-v, psi v = v}.
  const J3Elements j3 = j3_special_elements(t3);
  const int dn = t3.combined().dim;
  Mat stack(2 * dn, dn);
  stack.topRows(dn) = j3.a.matrix;
  stack.topRows(dn).diagonal().array() += (kind == PowerKind::sym) ? -1.0 : 1.0;
  stack.bottomRows(dn) = j3.psi.matrix - Mat::Identity(dn, dn);
  const Mat fixed = kernel_basis_guarded(stack);
  bool ok = (fixed.cols() == basis.cols());
  if (ok && basis.cols() > 0) {
    Mat joint(dn, fixed.cols() + basis.cols());
    joint << fixed, basis;
    ok = (numerical_rank_guarded(joint) == basis.cols());
  }
  out.lemma_fixed_space_ok = ok;
  return out;
}

CubeIdentityReport verify_cube_identity(const ModuleRep& v) {
  CubeIdentityReport rep;
  const QuantumCube qs = quantum_cube(v, PowerKind::sym);
  const QuantumCube ql = quantum_cube(v, PowerKind::ext);
  rep.quantum_sym = qs.decomposition;
  rep.quantum_ext = ql.decomposition;
  rep.sym_dim = qs.dim;
  rep.ext_dim = ql.dim;
  rep.lemma_fixed_space_ok = qs.lemma_fixed_space_ok && ql.lemma_fixed_space_ok;
  rep.classical_sym = classical_cube(v.rs, v.basis_weights, PowerKind::sym);
  rep.classical_ext = classical_cube(v.rs, v.basis_weights, PowerKind::ext);

  const GrothElement lhs = rep.quantum_sym - rep.quantum_ext;
  const GrothElement rhs = rep.classical_sym - rep.classical_ext;
  rep.identity_holds = (lhs == rhs);
  if (!rep.identity_holds) {
    const GrothElement diff = lhs - rhs;
    for (const auto& [lam, m] : diff.terms) rep.mismatches.push_back(lam);
  }
  rep.lifted_holds =
      (rep.quantum_sym + rep.classical_ext == rep.classical_sym + rep.quantum_ext);

  rep.koszul_expected = static_cast<long>(v.dim) * v.dim;
  rep.koszul_difference = rep.sym_dim - rep.ext_dim;
  rep.koszul_ok = (rep.koszul_difference == rep.koszul_expected);
  return rep;
}

PsiSpectrumReport psi_spectrum_check(const ModuleRep& v) {
  PsiSpectrumReport rep;
  rep.q_is_one = (v.q == 1.0);
  const TensorSpace t3 = tensor_power(v, 3);
  const J3Elements j3 = j3_special_elements(t3);
  const ModuleRep& big = t3.combined();

  rep.overall_min = 1e300;
  for (const auto& [wt, idxs] : big.weight_blocks()) {
    if (!wt.dominant()) continue;
    Mat stack(big.rs.rank * big.dim, idxs.size());
    for (int i = 0; i < big.rs.rank; ++i)
      for (size_t c = 0; c < idxs.size(); ++c)
        stack.block(i * big.dim, c, big.dim, 1) = big.E[i].col(idxs[c]);
    const Mat null = kernel_basis(stack);
    if (!null.cols()) continue;
    Mat h = Mat::Zero(big.dim, null.cols());
    for (int j = 0; j < null.cols(); ++j)
      for (size_t c = 0; c < idxs.size(); ++c) h(idxs[c], j) = null(c, j);
    // psi preserves highest weight spaces (it is a module map).
    const Mat restricted = h.transpose() * j3.psi.matrix * h;
    Eigen::BDCSVD<Mat> svd(restricted + Mat::Identity(restricted.rows(), restricted.cols()));
    const double smin = svd.singularValues().minCoeff();
    rep.min_singular.emplace_back(wt, smin);
    rep.overall_min = std::min(rep.overall_min, smin);
  }
  if (rep.q_is_one) {
    const Mat psi3 = j3.psi.matrix * j3.psi.matrix * j3.psi.matrix;
    rep.psi_cubed_exact =
        (max_abs(psi3 - Mat::Identity(big.dim, big.dim)) == 0.0);
    rep.pass = rep.psi_cubed_exact;
  } else {
    rep.pass = rep.overall_min > 0.05;
  }
  return rep;
}

ZwicknaglReport zwicknagl_cubes(const ModuleRep& v) {
  ZwicknaglReport rep;
  const TensorSpace t2 = tensor_power(v, 2);
  const ModuleRep s2 = submodule(t2.combined(), power_subspace(v, 2, PowerKind::sym));
  const ModuleRep l2 = submodule(t2.combined(), power_subspace(v, 2, PowerKind::ext));
  const GrothElement s2v = decompose(tensor_module(s2, v));
  const GrothElement l2v = decompose(tensor_module(l2, v));
  const GrothElement w = termwise_min(s2v, l2v);
  rep.s3_lower = s2v - w;
  rep.l3_lower = l2v - w;
  const GrothElement classical = classical_cube(v.rs, v.basis_weights, PowerKind::sym) -
                                 classical_cube(v.rs, v.basis_weights, PowerKind::ext);
  rep.identity_ok = (rep.s3_lower - rep.l3_lower == classical);
  return rep;
}

}  // namespace qsymx
