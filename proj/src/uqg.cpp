#include "qsymx/uqg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsymx {

double quantum_integer(long n, double qi) {
  if (qi <= 0) throw std::invalid_argument("quantum_integer requires qi > 0");
  if (qi == 1.0) return static_cast<double>(n);
  const double nn = static_cast<double>(n);
  return (std::pow(qi, nn) - std::pow(qi, -nn)) / (qi - 1.0 / qi);
}

double quantum_factorial(long n, double qi) {
  double v = 1.0;
  for (long k = 1; k <= n; ++k) v *= quantum_integer(k, qi);
  return v;
}

double ModuleRep::qi(int i) const { return std::pow(q, rs.symmetrizers[i]); }

Mat ModuleRep::K(int i, int power) const {
  Mat k = Mat::Zero(dim, dim);
  const double base = qi(i);
  for (int a = 0; a < dim; ++a)
    k(a, a) = std::pow(base, power * basis_weights[a].coords[i]);
  return k;
}

std::map<Weight, std::vector<int>> ModuleRep::weight_blocks() const {
  std::map<Weight, std::vector<int>> blocks;
  for (int a = 0; a < dim; ++a) blocks[basis_weights[a]].push_back(a);
  return blocks;
}

namespace {

double grading_residual(const ModuleRep& m) {
  // E_i entries may only connect mu -> mu + alpha_i, F_i only mu -> mu - alpha_i.
  double worst = 0;
  for (int i = 0; i < m.rs.rank; ++i) {
    const Weight ai = m.rs.alpha(i);
    for (int a = 0; a < m.dim; ++a) {
      for (int b = 0; b < m.dim; ++b) {
        if (!(m.basis_weights[a] == m.basis_weights[b] + ai))
          worst = std::max(worst, std::abs(m.E[i](a, b)));
        if (!(m.basis_weights[a] == m.basis_weights[b] - ai))
          worst = std::max(worst, std::abs(m.F[i](a, b)));
      }
    }
  }
  return worst;
}

double serre_residual(const ModuleRep& m) {
  double worst = 0;
  for (int i = 0; i < m.rs.rank; ++i) {
    const double qi = m.qi(i);
    for (int j = 0; j < m.rs.rank; ++j) {
      if (i == j) continue;
      const int nmax = 1 - m.rs.cartan_matrix[i][j];
      for (const auto* gen : {&m.E, &m.F}) {
        const Mat& xi = (*gen)[i];
        const Mat& xj = (*gen)[j];
        Mat acc = Mat::Zero(m.dim, m.dim);
        for (int n = 0; n <= nmax; ++n) {
          Mat left = Mat::Identity(m.dim, m.dim);
          for (int k = 0; k < nmax - n; ++k) left *= xi;
          Mat right = Mat::Identity(m.dim, m.dim);
          for (int k = 0; k < n; ++k) right *= xi;
          const double sign = (n % 2) ? -1.0 : 1.0;
          acc += sign / (quantum_factorial(nmax - n, qi) * quantum_factorial(n, qi)) *
                 left * xj * right;
        }
        worst = std::max(worst, max_abs(acc));
      }
    }
  }
  return worst;
}

}  // namespace

double relation_residual(const ModuleRep& m) {
  double worst = grading_residual(m);
  for (int i = 0; i < m.rs.rank; ++i) {
    const double qi = m.qi(i);
    const Mat Ki = m.K(i);
    const Mat Kinv = m.K(i, -1);
    for (int j = 0; j < m.rs.rank; ++j) {
      const double qij = std::pow(qi, m.rs.cartan_matrix[i][j]);
      worst = std::max(worst, max_abs(Ki * m.E[j] * Kinv - qij * m.E[j]));
      worst = std::max(worst, max_abs(Ki * m.F[j] * Kinv - m.F[j] / qij));
      Mat comm = m.E[i] * m.F[j] - m.F[j] * m.E[i];
      if (i == j) {
        for (int a = 0; a < m.dim; ++a)
          comm(a, a) -= quantum_integer(m.basis_weights[a].coords[i], qi);
      }
      worst = std::max(worst, max_abs(comm));
    }
  }
  return std::max(worst, serre_residual(m));
}

double gram_invariance_residual(const ModuleRep& m) {
  // (a v, w) = (v, a* w) with E* = K F, F* = E K^{-1}, K* = K reads
  // E^T G = G K F,  F^T G = G E K^{-1},  K^T G = G K.
  double worst = 0;
  for (int i = 0; i < m.rs.rank; ++i) {
    const Mat Ki = m.K(i);
    worst = std::max(worst, max_abs(m.E[i].transpose() * m.gram - m.gram * Ki * m.F[i]));
    worst = std::max(worst, max_abs(m.F[i].transpose() * m.gram - m.gram * m.E[i] * m.K(i, -1)));
    worst = std::max(worst, max_abs(Ki.transpose() * m.gram - m.gram * Ki));
  }
  return worst;
}

void validate_module(const ModuleRep& m) {
  const double g = grading_residual(m);
  if (g >= 1e-9)
    throw std::runtime_error("module rejected: weight grading residual " + std::to_string(g));
  const double rel = relation_residual(m);
  if (rel >= 1e-8)
    throw std::runtime_error("module rejected: relation residual " + std::to_string(rel));
  if (m.gram.size()) {
    const double gi = gram_invariance_residual(m);
    if (gi >= 1e-8)
      throw std::runtime_error("module rejected: gram invariance residual " +
                               std::to_string(gi));
  }
}

namespace {

ModuleRep seed_fundamental(const RootSystem& rs, int i, double q) {
  ModuleRep m;
  m.rs = rs;
  m.q = q;
  auto W = [&](std::vector<int> c) { return Weight(std::move(c)); };
  switch (rs.type) {
    case CartanType::A1: {
      m.dim = 2;
      m.basis_weights = {W({1}), W({-1})};
      Mat E = Mat::Zero(2, 2), F = Mat::Zero(2, 2);
      E(0, 1) = 1;
      F(1, 0) = 1;
      m.E = {E};
      m.F = {F};
      break;
    }
    case CartanType::A2: {
      m.dim = 3;
      Mat Ea = Mat::Zero(3, 3), Eb = Mat::Zero(3, 3);
      Mat Fa = Mat::Zero(3, 3), Fb = Mat::Zero(3, 3);
      Ea(0, 1) = 1;
      Fa(1, 0) = 1;
      Eb(1, 2) = 1;
      Fb(2, 1) = 1;
      if (i == 0) {
        m.basis_weights = {W({1, 0}), W({-1, 1}), W({0, -1})};
        m.E = {Ea, Eb};
        m.F = {Fa, Fb};
      } else {
        m.basis_weights = {W({0, 1}), W({1, -1}), W({-1, 0})};
        m.E = {Eb, Ea};
        m.F = {Fb, Fa};
      }
      break;
    }
    case CartanType::B2: {
      if (i == 1) {
        // spin-type fundamental, dim 4: single chain F2, F1, F2
        m.dim = 4;
        m.basis_weights = {W({0, 1}), W({1, -1}), W({-1, 1}), W({0, -1})};
        Mat E1 = Mat::Zero(4, 4), E2 = Mat::Zero(4, 4);
        Mat F1 = Mat::Zero(4, 4), F2 = Mat::Zero(4, 4);
        F2(1, 0) = 1;
        F1(2, 1) = 1;
        F2(3, 2) = 1;
        E2(0, 1) = 1;
        E1(1, 2) = 1;
        E2(2, 3) = 1;
        m.E = {E1, E2};
        m.F = {F1, F2};
      } else {
        // vector fundamental, dim 5; middle alpha_2-string is a spin-1
        // string of the q_2 = q subalgebra.
        m.dim = 5;
        m.basis_weights = {W({1, 0}), W({-1, 2}), W({0, 0}), W({1, -2}), W({-1, 0})};
        Mat E1 = Mat::Zero(5, 5), E2 = Mat::Zero(5, 5);
        Mat F1 = Mat::Zero(5, 5), F2 = Mat::Zero(5, 5);
        const double two = quantum_integer(2, std::pow(q, rs.symmetrizers[1]));
        F1(1, 0) = 1;
        F1(4, 3) = 1;
        E1(0, 1) = 1;
        E1(3, 4) = 1;
        F2(2, 1) = 1;
        F2(3, 2) = two;
        E2(1, 2) = two;
        E2(2, 3) = 1;
        m.E = {E1, E2};
        m.F = {F1, F2};
      }
      break;
    }
  }
  return m;
}

}  // namespace

ModuleRep build_fundamental(const RootSystem& rs, int i, double q) {
  if (i < 0 || i >= rs.rank)
    throw std::invalid_argument("fundamental weight index out of range");
  if (q <= 0) throw std::invalid_argument("deformation parameter must be positive");
  ModuleRep m = seed_fundamental(rs, i, q);
  std::vector<int> fw(rs.rank, 0);
  fw[i] = 1;
  if (m.dim != weyl_dim(rs, Weight(fw)))
    throw std::runtime_error("fundamental seed dimension mismatch");
  m.gram = solve_invariant_gram(rs, q, m.basis_weights, m.E, m.F);
  m.summands = {{Weight(fw), 0, m.dim}};
  validate_module(m);
  return m;
}

ModuleRep tensor_module(const ModuleRep& a, const ModuleRep& b) {
  if (a.rs.type != b.rs.type || a.q != b.q)
    throw std::invalid_argument("tensor factors must share the root system and q");
  ModuleRep t;
  t.rs = a.rs;
  t.q = a.q;
  t.dim = a.dim * b.dim;
  t.basis_weights.reserve(t.dim);
  for (int x = 0; x < a.dim; ++x)
    for (int y = 0; y < b.dim; ++y)
      t.basis_weights.push_back(a.basis_weights[x] + b.basis_weights[y]);
  const Mat Ia = Mat::Identity(a.dim, a.dim);
  const Mat Ib = Mat::Identity(b.dim, b.dim);
  for (int i = 0; i < t.rs.rank; ++i) {
    t.E.push_back(kron(a.E[i], Ib) + kron(a.K(i), b.E[i]));
    t.F.push_back(kron(a.F[i], b.K(i, -1)) + kron(Ia, b.F[i]));
  }
  if (a.gram.size() && b.gram.size()) t.gram = kron(a.gram, b.gram);
  return t;
}

TensorSpace::TensorSpace(std::vector<ModuleRep> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("TensorSpace needs factors");
  combined_ = factors_[0];
  for (size_t k = 1; k < factors_.size(); ++k)
    combined_ = tensor_module(combined_, factors_[k]);
}

ModuleRep TensorSpace::group(int a, int b) const {
  if (a < 0 || b >= num_factors() || a > b)
    throw std::invalid_argument("group range out of bounds");
  ModuleRep m = factors_[a];
  for (int k = a + 1; k <= b; ++k) m = tensor_module(m, factors_[k]);
  return m;
}

TensorSpace tensor_power(const ModuleRep& v, int n) {
  if (n < 1) throw std::invalid_argument("tensor power needs n >= 1");
  return TensorSpace(std::vector<ModuleRep>(n, v));
}

ModuleRep build_simple(const RootSystem& rs, const Weight& lambda, double q) {
  if (lambda.rank() != rs.rank)
    throw std::invalid_argument("weight rank does not match root system rank");
  if (!lambda.dominant())
    throw std::invalid_argument("build_simple requires a dominant weight");
  if (q <= 0) throw std::invalid_argument("deformation parameter must be positive");

  const long target_dim = weyl_dim(rs, lambda);
  ModuleRep m;
  if (target_dim == 1) {
    m.rs = rs;
    m.q = q;
    m.dim = 1;
    m.basis_weights = {Weight(std::vector<int>(rs.rank, 0))};
    m.E.assign(rs.rank, Mat::Zero(1, 1));
    m.F.assign(rs.rank, Mat::Zero(1, 1));
    m.gram = Mat::Identity(1, 1);
    m.summands = {{lambda, 0, 1}};
    return m;
  }

  // Ambient space: (x)_i V_{omega_i}^{(x) lambda_i}; start vector is the
  // tensor product of the highest weight vectors (index 0).
  ModuleRep big;
  bool first = true;
  for (int i = 0; i < rs.rank; ++i) {
    for (int c = 0; c < lambda.coords[i]; ++c) {
      ModuleRep f = build_fundamental(rs, i, q);
      big = first ? f : tensor_module(big, f);
      first = false;
    }
  }

  // Cyclic closure under the F_i with modified Gram-Schmidt
  // (re-orthogonalized), drop tolerance 1e-9 relative.
  std::vector<Vec> basis;
  std::vector<Weight> bweights;
  Vec start = Vec::Zero(big.dim);
  start(0) = 1.0;
  basis.push_back(start);
  bweights.push_back(big.basis_weights[0]);
  for (size_t k = 0; k < basis.size(); ++k) {
    for (int i = 0; i < rs.rank; ++i) {
      Vec v = big.F[i] * basis[k];
      const double n0 = v.norm();
      if (n0 < 1e-12) continue;
      for (int pass = 0; pass < 2; ++pass)
        for (const Vec& u : basis) v -= u.dot(v) * u;
      if (v.norm() > 1e-9 * n0) {
        basis.push_back(v / v.norm());
        bweights.push_back(bweights[k] - rs.alpha(i));
      }
    }
  }

  if (static_cast<long>(basis.size()) != target_dim) {
    std::ostringstream os;
    os << "build_simple: closure dimension " << basis.size() << " for "
       << to_string(lambda) << " does not match the Weyl dimension "
       << target_dim << " (numerical degeneracy or a bad q)";
    throw std::runtime_error(os.str());
  }

  Mat B(big.dim, basis.size());
  for (size_t j = 0; j < basis.size(); ++j) B.col(j) = basis[j];
  m.rs = rs;
  m.q = q;
  m.dim = static_cast<int>(basis.size());
  m.basis_weights = bweights;
  for (int i = 0; i < rs.rank; ++i) {
    m.E.push_back(B.transpose() * big.E[i] * B);
    m.F.push_back(B.transpose() * big.F[i] * B);
  }
  m.gram = solve_invariant_gram(rs, q, m.basis_weights, m.E, m.F);
  m.summands = {{lambda, 0, m.dim}};
  validate_module(m);
  return m;
}

ModuleRep direct_sum(const std::vector<ModuleRep>& mods) {
  if (mods.empty()) throw std::invalid_argument("direct_sum needs summands");
  ModuleRep out;
  out.rs = mods[0].rs;
  out.q = mods[0].q;
  out.dim = 0;
  for (const auto& m : mods) {
    if (m.rs.type != out.rs.type || m.q != out.q)
      throw std::invalid_argument("direct_sum summands must share the root system and q");
    out.dim += m.dim;
  }
  out.E.assign(out.rs.rank, Mat::Zero(out.dim, out.dim));
  out.F.assign(out.rs.rank, Mat::Zero(out.dim, out.dim));
  out.gram = Mat::Zero(out.dim, out.dim);
  int off = 0;
  for (const auto& m : mods) {
    for (int i = 0; i < out.rs.rank; ++i) {
      out.E[i].block(off, off, m.dim, m.dim) = m.E[i];
      out.F[i].block(off, off, m.dim, m.dim) = m.F[i];
    }
    out.gram.block(off, off, m.dim, m.dim) = m.gram;
    out.basis_weights.insert(out.basis_weights.end(), m.basis_weights.begin(),
                             m.basis_weights.end());
    for (const Summand& s : m.summands)
      out.summands.push_back({s.lambda, s.offset + off, s.dim});
    off += m.dim;
  }
  return out;
}

GramForm gram_form(const ModuleRep& m) {
  if (!m.gram.size())
    throw std::invalid_argument("module carries no invariant form");
  return GramForm(m.gram);
}

ModuleRep submodule(const ModuleRep& big, const Mat& basis) {
  ModuleRep out;
  out.rs = big.rs;
  out.q = big.q;
  std::vector<Vec> cols;
  for (const auto& [wt, idxs] : big.weight_blocks()) {
    Mat c = Mat::Zero(big.dim, basis.cols());
    for (int j = 0; j < basis.cols(); ++j)
      for (int idx : idxs) c(idx, j) = basis(idx, j);
    const Mat w = orthonormal_colspace(c);
    for (int j = 0; j < w.cols(); ++j) {
      cols.push_back(w.col(j));
      out.basis_weights.push_back(wt);
    }
  }
  if (static_cast<long>(cols.size()) != basis.cols())
    throw std::invalid_argument(
        "submodule: span is not weight-graded or the basis is degenerate");
  Mat b(big.dim, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) b.col(j) = cols[j];
  out.dim = static_cast<int>(cols.size());
  for (int i = 0; i < out.rs.rank; ++i) {
    out.E.push_back(b.transpose() * big.E[i] * b);
    out.F.push_back(b.transpose() * big.F[i] * b);
  }
  if (big.gram.size()) out.gram = b.transpose() * big.gram * b;
  return out;
}

Mat solve_invariant_gram(const RootSystem& rs, double q,
                         const std::vector<Weight>& weights,
                         const std::vector<Mat>& E, const std::vector<Mat>& F) {
  const int dim = static_cast<int>(weights.size());
  // Unknowns: entries of a symmetric matrix supported on weight-diagonal
  // blocks (K_i^* = K_i forces distinct weight spaces orthogonal).
  std::vector<std::pair<int, int>> params;
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b)
      if (weights[a] == weights[b]) params.emplace_back(a, b);

  ModuleRep probe;
  probe.rs = rs;
  probe.q = q;
  probe.dim = dim;
  probe.basis_weights = weights;

  const int p = static_cast<int>(params.size());
  Mat sys(rs.rank * dim * dim, p);
  for (int c = 0; c < p; ++c) {
    Mat S = Mat::Zero(dim, dim);
    S(params[c].first, params[c].second) = 1.0;
    S(params[c].second, params[c].first) = 1.0;
    for (int i = 0; i < rs.rank; ++i) {
      const Mat r = E[i].transpose() * S - S * probe.K(i) * F[i];
      sys.block(i * dim * dim, c, dim * dim, 1) =
          Eigen::Map<const Vec>(r.data(), dim * dim);
    }
  }

  Eigen::JacobiSVD<Mat> svd(sys, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double smin = s(s.size() - 1);
  if (smax > 0 && smin > 1e-9 * smax)
    throw std::runtime_error("no invariant form found within tolerance");
  if (s.size() >= 2 && s(s.size() - 2) <= 1e-6 * smax)
    throw std::runtime_error("invariant form is not unique; module is not simple");

  const Vec sol = svd.matrixV().col(p - 1);
  Mat G = Mat::Zero(dim, dim);
  for (int c = 0; c < p; ++c) {
    G(params[c].first, params[c].second) = sol(c);
    G(params[c].second, params[c].first) = sol(c);
  }
  if (G(0, 0) == 0.0)
    throw std::runtime_error("invariant form degenerate on the highest weight vector");
  G /= G(0, 0);  // (v_lambda, v_lambda) = 1
  Eigen::SelfAdjointEigenSolver<Mat> es(G, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0)
    throw std::runtime_error("invariant form is not positive definite");
  return G;
}

LinOperator braid_operator(const ModuleRep& m, int i) {
  const double qi = m.qi(i);
  Mat B(m.dim, m.dim), TB(m.dim, m.dim);
  int col = 0;
  for (const auto& [wt, idxs] : m.weight_blocks()) {
    // i-string highest vectors at this weight: kernel of E_i on the block.
    Mat block(m.dim, idxs.size());
    for (size_t c = 0; c < idxs.size(); ++c) block.col(c) = m.E[i].col(idxs[c]);
    const Mat null = kernel_basis(block, 1e-10);
    if (!null.cols()) continue;
    const int n = wt.coords[i];
    if (n < 0)
      throw std::runtime_error("braid_operator: negative string length; module not integrable");
    for (int v = 0; v < null.cols(); ++v) {
      Vec top = Vec::Zero(m.dim);
      for (size_t c = 0; c < idxs.size(); ++c) top(idxs[c]) = null(c, v);
      std::vector<Vec> chain{top};  // chain[r] = F_i^{(r)} top
      for (int r = 1; r <= n; ++r)
        chain.push_back(m.F[i] * chain.back() / quantum_integer(r, qi));
      for (int r = 0; r <= n; ++r) {
        if (col >= m.dim)
          throw std::runtime_error("braid_operator: string basis exceeds dimension");
        B.col(col) = chain[r];
        const double sign = ((n - r) % 2) ? -1.0 : 1.0;
        TB.col(col) = sign * std::pow(qi, double((n - r)) * (r + 1)) * chain[n - r];
        ++col;
      }
    }
  }
  if (col != m.dim)
    throw std::runtime_error("braid_operator: i-strings do not exhaust the module");
  Mat t = B.transpose().partialPivLu().solve(TB.transpose()).transpose();
  return LinOperator(std::move(t), {m.dim});
}

RootVectorOps root_vector_operators(const ModuleRep& m) {
  const auto& word = m.rs.w0_word;
  std::vector<Mat> T(m.rs.rank), Tinv(m.rs.rank);
  std::vector<bool> have(m.rs.rank, false);
  auto ensure = [&](int i) {
    if (!have[i]) {
      T[i] = braid_operator(m, i).matrix;
      Tinv[i] = T[i].partialPivLu().inverse();
      have[i] = true;
    }
  };
  RootVectorOps ops;
  for (size_t k = 0; k < word.size(); ++k) {
    const int ik = word[k] - 1;
    Mat e = m.E[ik], f = m.F[ik];
    for (int j = static_cast<int>(k) - 1; j >= 0; --j) {
      const int ij = word[j] - 1;
      ensure(ij);
      e = T[ij] * e * Tinv[ij];
      f = T[ij] * f * Tinv[ij];
    }
    ops.E.push_back(std::move(e));
    ops.F.push_back(std::move(f));
  }
  return ops;
}

}  // namespace qsymx
