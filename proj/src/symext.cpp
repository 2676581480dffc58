#include "qsymx/symext.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace qsymx {

namespace {

Mat stacked_constraint(const Mat& sigma, int d, int n, double shift) {
  Mat stack((n - 1) * int(std::pow(double(d), n) + 0.5), int(std::pow(double(d), n) + 0.5));
  const int dn = static_cast<int>(stack.cols());
  for (int i = 1; i < n; ++i) {
    Mat op = adjacent_sigma(sigma, d, n, i);
    op.diagonal().array() += shift;
    stack.block((i - 1) * dn, 0, dn, dn) = op;
  }
  return stack;
}

Mat tensor_gram(const ModuleRep& v, int n) {
  Mat g = v.gram;
  for (int k = 1; k < n; ++k) g = kron(g, v.gram);
  return g;
}

Mat form_orthonormalize(const Mat& basis, const Mat& g) {
  if (!basis.cols()) return basis;
  const Mat c = basis.transpose() * g * basis;
  const Eigen::LLT<Mat> llt(c);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("subspace gram is not positive definite");
  const Mat lt = llt.matrixL().transpose();
  return lt.triangularView<Eigen::Upper>().solve(basis.transpose()).transpose();
}

}  // namespace

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Mat adjacent_sigma(const Mat& sigma, int d, int n, int i) {
  if (i < 1 || i >= n) throw std::invalid_argument("adjacent_sigma slot out of range");
  int pre = 1, post = 1;
  for (int k = 0; k < i - 1; ++k) pre *= d;
  for (int k = i + 1; k < n; ++k) post *= d;
  return kron(Mat::Identity(pre, pre), kron(sigma, Mat::Identity(post, post)));
}

Mat power_subspace(const ModuleRep& v, int n, PowerKind kind) {
  if (n < 2) throw std::invalid_argument("power_subspace needs degree n >= 2");
  const Mat sigma = coboundary(TensorSpace({v, v})).matrix;
  const double shift = (kind == PowerKind::sym) ? -1.0 : 1.0;
  const Mat stack = stacked_constraint(sigma, v.dim, n, shift);
  const Mat basis = kernel_basis_guarded(stack);
  return form_orthonormalize(basis, tensor_gram(v, n));
}

QuotientComponent quotient_component(const ModuleRep& v, int n, PowerKind kind) {
  if (n < 2) throw std::invalid_argument("quotient_component needs degree n >= 2");
  QuotientComponent out;
  out.degree = n;
  out.kind = kind;
  const Mat sigma = coboundary(TensorSpace({v, v})).matrix;
  const double shift = (kind == PowerKind::sym) ? -1.0 : 1.0;
  const long dn = static_cast<long>(std::pow(double(v.dim), n) + 0.5);

  const Mat sub = kernel_basis_guarded(stacked_constraint(sigma, v.dim, n, shift));
  out.subspace_dim = sub.cols();

  // Degree-n component of the defining ideal: J^n = sum_i ker(sigma_i +/- id).
  std::vector<Mat> pieces;
  long total_cols = 0;
  for (int i = 1; i < n; ++i) {
    Mat op = adjacent_sigma(sigma, v.dim, n, i);
    op.diagonal().array() -= shift;
    pieces.push_back(kernel_basis_guarded(op));
    total_cols += pieces.back().cols();
  }
  Mat j(dn, total_cols);
  long off = 0;
  for (const Mat& p : pieces) {
    j.middleCols(off, p.cols()) = p;
    off += p.cols();
  }
  out.ideal_dim = numerical_rank_guarded(j);
  out.quotient_dim = dn - out.ideal_dim;

  Mat joint(dn, j.cols() + sub.cols());
  joint << j, sub;
  const long joint_rank = numerical_rank_guarded(joint);
  out.intersection_dim = out.ideal_dim + out.subspace_dim - joint_rank;
  out.embedding_ok =
      (out.intersection_dim == 0) && (out.ideal_dim + out.subspace_dim == dn);
  return out;
}

std::vector<FlatnessRow> flatness(const ModuleRep& v, int n_max) {
  std::vector<FlatnessRow> rows;
  for (int n = 2; n <= n_max; ++n) {
    FlatnessRow r;
    r.degree = n;
    r.sym_dim = power_subspace(v, n, PowerKind::sym).cols();
    r.ext_dim = power_subspace(v, n, PowerKind::ext).cols();
    r.sym_classical = binomial(v.dim + n - 1, n);
    r.ext_classical = binomial(v.dim, n);
    r.sym_flat = (r.sym_dim == r.sym_classical);
    r.ext_flat = (r.ext_dim == r.ext_classical);
    rows.push_back(r);
  }
  return rows;
}

CommutativityResult commutativity_check(const ModuleRep& v, int n, bool super) {
  const TensorSpace power = tensor_power(v, n);
  const Mat basis = power_subspace(v, n, super ? PowerKind::ext : PowerKind::sym);
  const Mat g = tensor_gram(v, n);
  const Mat proj = basis * basis.transpose() * g;  // basis is form-orthonormal
  CommutativityResult out;
  for (int p = 1; p <= n; ++p) {
    for (int t = p + 1; t <= n; ++t) {
      const Mat rho = cactus_generator(power, p, t, super).matrix;
      const double res = max_abs(proj * rho - proj);
      if (res > out.residual) {
        out.residual = res;
        out.worst_p = p;
        out.worst_t = t;
      }
    }
  }
  return out;
}

HilbertKoszul hilbert_and_koszul(const ModuleRep& v) {
  HilbertKoszul out;
  out.sym.dims = {1, v.dim};
  out.ext.dims = {1, v.dim};
  for (int n = 2; n <= 3; ++n) {
    out.sym.dims.push_back(power_subspace(v, n, PowerKind::sym).cols());
    out.ext.dims.push_back(power_subspace(v, n, PowerKind::ext).cols());
  }
  out.expected = static_cast<long>(v.dim) * v.dim;
  out.difference = out.sym.dims[3] - out.ext.dims[3];
  out.koszul_ok = (out.difference == out.expected);
  return out;
}

}  // namespace qsymx
