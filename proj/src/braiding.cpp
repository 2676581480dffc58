#include "qsymx/braiding.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsymx {

namespace {

thread_local bool g_last_r_reversed = false;

void require_two_factors(const TensorSpace& t, const char* who) {
  if (t.num_factors() != 2)
    throw std::invalid_argument(std::string(who) + " needs exactly two tensor factors");
}

}  // namespace

bool r_matrix_used_reversed_order() { return g_last_r_reversed; }

LinOperator d_operator(const TensorSpace& t) {
  require_two_factors(t, "d_operator");
  const ModuleRep& a = t.factors()[0];
  const ModuleRep& b = t.factors()[1];
  Vec diag(a.dim * b.dim);
  for (int x = 0; x < a.dim; ++x)
    for (int y = 0; y < b.dim; ++y)
      diag(x * b.dim + y) =
          std::pow(a.q, weight_inner_d(a.rs, a.basis_weights[x], b.basis_weights[y]));
  return LinOperator(Mat(diag.asDiagonal()), {a.dim, b.dim});
}

double intertwiner_residual(const TensorSpace& t, const Mat& r) {
  require_two_factors(t, "intertwiner_residual");
  const ModuleRep& a = t.factors()[0];
  const ModuleRep& b = t.factors()[1];
  const ModuleRep& c = t.combined();
  const Mat Ia = Mat::Identity(a.dim, a.dim);
  const Mat Ib = Mat::Identity(b.dim, b.dim);
  double worst = 0;
  for (int i = 0; i < c.rs.rank; ++i) {
    // Delta^op(a) has the legs of Delta(a) exchanged.
    const Mat e_op = kron(Ia, b.E[i]) + kron(a.E[i], b.K(i));
    const Mat f_op = kron(a.F[i], Ib) + kron(a.K(i, -1), b.F[i]);
    const Mat k_op = kron(a.K(i), b.K(i));
    worst = std::max(worst, max_abs(r * c.E[i] - e_op * r));
    worst = std::max(worst, max_abs(r * c.F[i] - f_op * r));
    worst = std::max(worst, max_abs(r * k_op - k_op * r));
  }
  return worst;
}

namespace {

Mat r_matrix_with_order(const TensorSpace& t, bool reversed) {
  const ModuleRep& a = t.factors()[0];
  const ModuleRep& b = t.factors()[1];
  const RootSystem& rs = a.rs;
  const double q = a.q;
  const RootVectorOps ra = root_vector_operators(a);
  const RootVectorOps rb = root_vector_operators(b);
  const int n = static_cast<int>(rs.w0_word.size());
  const int dim = a.dim * b.dim;

  std::vector<Mat> factors;
  factors.reserve(n);
  for (int k = 0; k < n; ++k) {
    const Weight& beta = rs.positive_roots[k];
    const Rat bb = weight_inner(rs, beta, beta);
    const double qb = std::pow(
        q, 0.5 * static_cast<double>(bb.numerator()) / static_cast<double>(bb.denominator()));
    Mat x = Mat::Identity(dim, dim);
    Mat fp = Mat::Identity(a.dim, a.dim);
    Mat ep = Mat::Identity(b.dim, b.dim);
    const double base = 1.0 - 1.0 / (qb * qb);
    for (int tt = 1; tt <= std::max(a.dim, b.dim); ++tt) {
      if (base == 0.0) break;  // q = 1: factor is exactly the identity
      fp = fp * ra.F[k];
      ep = ep * rb.E[k];
      if (max_abs(fp) < 1e-13 || max_abs(ep) < 1e-13) break;  // nilpotent cutoff
      const double c = std::pow(base, tt) / quantum_factorial(tt, qb) *
                       std::pow(qb, 0.5 * tt * (tt + 1));
      x += c * kron(fp, ep);
    }
    factors.push_back(std::move(x));
  }

  Mat r = Mat::Identity(dim, dim);
  if (!reversed) {
    for (int k = 0; k < n; ++k) r = r * factors[k];
  } else {
    for (int k = n - 1; k >= 0; --k) r = r * factors[k];
  }
  return d_operator(t).matrix * r;
}

}  // namespace

LinOperator r_matrix(const TensorSpace& t) {
  require_two_factors(t, "r_matrix");
  Mat r = r_matrix_with_order(t, false);
  double res = intertwiner_residual(t, r);
  bool reversed = false;
  if (res > 1e-6) {
    Mat r2 = r_matrix_with_order(t, true);
    const double res2 = intertwiner_residual(t, r2);
    if (res2 <= 1e-6) {
      r = std::move(r2);
      res = res2;
      reversed = true;
    } else {
      std::ostringstream os;
      os << "r_matrix rejected: intertwiner residual " << res << " (product order "
         << "as listed) and " << res2 << " (reversed); convention mismatch";
      throw std::runtime_error(os.str());
    }
  }
  g_last_r_reversed = reversed;
  const ModuleRep& a = t.factors()[0];
  const ModuleRep& b = t.factors()[1];
  return LinOperator(std::move(r), {a.dim, b.dim});
}

IsotypicDecomposition isotypic(const ModuleRep& m) {
  if (!m.gram.size())
    throw std::invalid_argument("isotypic requires a module with an invariant form");
  IsotypicDecomposition out;
  long dim_sum = 0;
  for (const auto& [wt, idxs] : m.weight_blocks()) {
    if (!wt.dominant()) continue;
    Mat stack(m.rs.rank * m.dim, idxs.size());
    for (int i = 0; i < m.rs.rank; ++i)
      for (size_t c = 0; c < idxs.size(); ++c)
        stack.block(i * m.dim, c, m.dim, 1) = m.E[i].col(idxs[c]);
    const Mat null = kernel_basis(stack);
    if (!null.cols()) continue;

    // Highest weight vectors, embedded; close up under the F_i.
    std::vector<Vec> basis;
    auto add = [&](Vec v) {
      const double n0 = v.norm();
      if (n0 < 1e-12) return;
      for (int pass = 0; pass < 2; ++pass)
        for (const Vec& u : basis) v -= u.dot(v) * u;
      if (v.norm() > 1e-9 * n0) basis.push_back(v / v.norm());
    };
    for (int j = 0; j < null.cols(); ++j) {
      Vec v = Vec::Zero(m.dim);
      for (size_t c = 0; c < idxs.size(); ++c) v(idxs[c]) = null(c, j);
      add(v);
    }
    for (size_t k = 0; k < basis.size(); ++k)
      for (int i = 0; i < m.rs.rank; ++i) add(m.F[i] * basis[k]);

    Mat span(m.dim, basis.size());
    for (size_t j = 0; j < basis.size(); ++j) span.col(j) = basis[j];
    const Mat sgs = span.transpose() * m.gram * span;
    Mat proj = span * sgs.llt().solve(span.transpose() * m.gram);
    const int mult = static_cast<int>(null.cols());
    dim_sum += static_cast<long>(mult) * weyl_dim(m.rs, wt);
    if (static_cast<long>(basis.size()) != static_cast<long>(mult) * weyl_dim(m.rs, wt))
      throw std::runtime_error("isotypic: generated span size does not match " +
                               std::to_string(mult) + " copies of V_" + to_string(wt));
    out.components.push_back({wt, LinOperator(std::move(proj), {m.dim}), mult});
  }
  if (dim_sum != m.dim)
    throw std::runtime_error("isotypic rejected: multiplicities sum to " +
                             std::to_string(dim_sum) + " but dim is " +
                             std::to_string(m.dim));
  return out;
}

IsotypicDecomposition isotypic(const TensorSpace& t) { return isotypic(t.combined()); }

namespace {

double ribbon_scalar(const RootSystem& rs, double q, const Weight& lambda, double s) {
  const Weight arg = lambda + rs.rho * 2;
  return std::pow(q, s * weight_inner_d(rs, lambda, arg));
}

}  // namespace

Mat ribbon_power(const ModuleRep& m, double s) {
  if (!m.summands.empty()) {
    bool uniform = true;
    const double first = ribbon_scalar(m.rs, m.q, m.summands[0].lambda, s);
    for (const Summand& sm : m.summands)
      uniform &= (ribbon_scalar(m.rs, m.q, sm.lambda, s) == first);
    if (uniform) return first * Mat::Identity(m.dim, m.dim);
    Mat out = Mat::Zero(m.dim, m.dim);
    for (const Summand& sm : m.summands) {
      const double c = ribbon_scalar(m.rs, m.q, sm.lambda, s);
      for (int k = 0; k < sm.dim; ++k) out(sm.offset + k, sm.offset + k) = c;
    }
    return out;
  }
  const IsotypicDecomposition dec = isotypic(m);
  bool uniform = true;
  const double first = ribbon_scalar(m.rs, m.q, dec.components[0].lambda, s);
  for (const auto& c : dec.components)
    uniform &= (ribbon_scalar(m.rs, m.q, c.lambda, s) == first);
  if (uniform) return first * Mat::Identity(m.dim, m.dim);
  Mat out = Mat::Zero(m.dim, m.dim);
  for (const auto& c : dec.components)
    out += ribbon_scalar(m.rs, m.q, c.lambda, s) * c.projector.matrix;
  return out;
}

LinOperator r21r(const TensorSpace& t) {
  require_two_factors(t, "r21r");
  const ModuleRep& a = t.factors()[0];
  const ModuleRep& b = t.factors()[1];
  const Mat r_vw = r_matrix(t).matrix;
  const Mat r_wv = r_matrix(TensorSpace({b, a})).matrix;
  const Mat t12 = flip_permutation(a.dim, b.dim);  // V(x)W -> W(x)V
  const Mat t21 = flip_permutation(b.dim, a.dim);
  Mat out = t21 * r_wv * t12 * r_vw;
  return LinOperator(std::move(out), {a.dim, b.dim});
}

LinOperator r21r_inv_sqrt(const TensorSpace& t, SqrtPath path) {
  require_two_factors(t, "r21r_inv_sqrt");
  const ModuleRep& a = t.factors()[0];
  const ModuleRep& b = t.factors()[1];
  if (path == SqrtPath::scalar) {
    const Mat tha = ribbon_power(a, 0.5);
    const Mat thb = ribbon_power(b, 0.5);
    const Mat thab = ribbon_power(t.combined(), -0.5);
    return LinOperator(kron(tha, thb) * thab, {a.dim, b.dim});
  }
  return inv_sqrt_psd(r21r(t), gram_form(t.combined()));
}

LinOperator coboundary(const TensorSpace& t, SqrtPath path) {
  require_two_factors(t, "coboundary");
  const ModuleRep& a = t.factors()[0];
  const ModuleRep& b = t.factors()[1];
  const Mat scalar = r21r_inv_sqrt(t, SqrtPath::scalar).matrix;
  const Mat spectral = r21r_inv_sqrt(t, SqrtPath::spectral).matrix;
  const double disagreement = max_abs(scalar - spectral);
  if (disagreement > 1e-7) {
    std::ostringstream os;
    os << "coboundary rejected: scalar and spectral square roots disagree by "
       << disagreement;
    throw std::runtime_error(os.str());
  }
  const Mat& root = (path == SqrtPath::scalar) ? scalar : spectral;
  const Mat r = r_matrix(t).matrix;
  Mat sigma = flip_permutation(a.dim, b.dim) * r * root;
  return LinOperator(std::move(sigma), {a.dim, b.dim});
}

}  // namespace qsymx
