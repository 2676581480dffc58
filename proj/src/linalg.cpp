#include "qsymx/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsymx {

namespace {
std::atomic<double> g_default_tol{kDefaultTol};
double resolve(double tol) { return tol > 0 ? tol : g_default_tol.load(); }
}  // namespace

double default_tolerance() { return g_default_tol.load(); }

void set_default_tolerance(double tol) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  g_default_tol.store(tol);
}

LinOperator::LinOperator(Mat m) : matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("LinOperator requires a square matrix");
  space_dims = {static_cast<int>(matrix.rows())};
}

LinOperator::LinOperator(Mat m, std::vector<int> dims)
    : matrix(std::move(m)), space_dims(std::move(dims)) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("LinOperator requires a square matrix");
  long prod = 1;
  for (int d : space_dims) prod *= d;
  if (prod != matrix.rows())
    throw std::invalid_argument("space_dims product does not match matrix side");
}

GramForm::GramForm(Mat g) : matrix(std::move(g)) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("GramForm requires a square matrix");
  const double scale = max_abs(matrix);
  if (max_abs(matrix - matrix.transpose()) > 1e-12 * std::max(scale, 1e-300))
    throw std::invalid_argument("GramForm matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(matrix, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("GramForm matrix is not positive definite");
}

double max_abs(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat flip_permutation(int d1, int d2) {
  Mat p = Mat::Zero(d1 * d2, d1 * d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) p(j * d1 + i, i * d2 + j) = 1.0;
  return p;
}

namespace {

void fix_column_signs(Mat& m) {
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > 1e-12) {
        if (m(i, j) < 0) m.col(j) = -m.col(j);
        break;
      }
    }
  }
}

int rank_from_spectrum(const Vec& s, double tol) {
  const double smax = s.size() ? s(0) : 0.0;
  if (smax <= tol) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) >= tol * smax) ++r;
  return r;
}

void guard_ambiguity(const Vec& s, double tol) {
  if (!s.size()) return;
  const double smax = s(0);
  if (smax <= tol) return;
  for (int i = 0; i < s.size(); ++i) {
    const double rel = s(i) / smax;
    if (rel > tol * 1e-3 && rel < tol * 1e3)
      throw std::runtime_error(
          "rank decision is ambiguous near the tolerance cutoff; raise "
          "precision or change q");
  }
}

Mat kernel_from_svd(const Eigen::BDCSVD<Mat>& svd, int n, double tol) {
  const int rank = rank_from_spectrum(svd.singularValues(), tol);
  const int k = n - rank;
  Mat out(n, k);
  // Columns ordered by increasing singular value (implicit zeros first).
  for (int j = 0; j < k; ++j) out.col(j) = svd.matrixV().col(n - 1 - j);
  fix_column_signs(out);
  return out;
}

}  // namespace

int numerical_rank(const Mat& m, double tol) {
  tol = resolve(tol);
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  return rank_from_spectrum(svd.singularValues(), tol);
}

int numerical_rank_guarded(const Mat& m, double tol) {
  tol = resolve(tol);
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  guard_ambiguity(svd.singularValues(), tol);
  return rank_from_spectrum(svd.singularValues(), tol);
}

Mat kernel_basis(const Mat& m, double tol) {
  tol = resolve(tol);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  return kernel_from_svd(svd, static_cast<int>(m.cols()), tol);
}

Mat kernel_basis_guarded(const Mat& m, double tol) {
  tol = resolve(tol);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  guard_ambiguity(svd.singularValues(), tol);
  return kernel_from_svd(svd, static_cast<int>(m.cols()), tol);
}

std::vector<Vec> kernel(const LinOperator& op, double tol) {
  if (tol == 0) throw std::invalid_argument("kernel tolerance must be positive");
  tol = resolve(tol);
  const Mat b = kernel_basis(op.matrix, tol);
  std::vector<Vec> out;
  out.reserve(b.cols());
  for (int j = 0; j < b.cols(); ++j) out.push_back(b.col(j));
  return out;
}

Mat orthonormal_colspace(const Mat& m, double tol) {
  tol = resolve(tol);
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  const int rank = rank_from_spectrum(svd.singularValues(), tol);
  Mat out = svd.matrixU().leftCols(rank);
  fix_column_signs(out);
  return out;
}

LinOperator adjoint(const LinOperator& op, const GramForm& form) {
  if (op.dim() != form.dim())
    throw std::invalid_argument("adjoint: operator and form dimensions differ");
  const Mat at_g = op.matrix.transpose() * form.matrix;
  Mat res = form.matrix.llt().solve(at_g);
  return LinOperator(std::move(res), op.space_dims);
}

LinOperator inv_sqrt_psd(const LinOperator& op, const GramForm& form) {
  if (op.dim() != form.dim())
    throw std::invalid_argument("inv_sqrt_psd: operator and form dimensions differ");
  const Mat& a = op.matrix;
  const Mat& g = form.matrix;
  const Mat ga = g * a;
  const double sa_res = (ga - a.transpose() * g).norm();
  if (sa_res >= 1e-8 * std::max(ga.norm(), 1e-300))
    throw std::invalid_argument(
        "inv_sqrt_psd: operator is not self-adjoint with respect to the form "
        "(residual " + std::to_string(sa_res) + ")");

  // Diagonalize in the form-orthonormal frame: B = L^T A L^{-T} is symmetric.
  const Eigen::LLT<Mat> llt(g);
  const Mat lt = llt.matrixL().transpose();
  Mat b = lt * a;
  b = lt.triangularView<Eigen::Upper>().solve(b.transpose()).transpose();
  b = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(b);
  const Vec ev = es.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 1e-12 * emax) {
      std::ostringstream os;
      os << "inv_sqrt_psd: spectrum not positive, eigenvalue " << ev(i);
      throw std::invalid_argument(os.str());
    }
  }
  const Mat mid = es.eigenvectors() *
                  ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                  es.eigenvectors().transpose();
  Mat t = lt.triangularView<Eigen::Upper>().solve(mid) * lt;
  return LinOperator(std::move(t), op.space_dims);
}

std::vector<double> principal_angles(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("principal_angles: subspace dimensions differ");
  Eigen::JacobiSVD<Mat> svd(a.transpose() * b);
  std::vector<double> angles;
  const auto& s = svd.singularValues();
  for (int i = s.size() - 1; i >= 0; --i)
    angles.push_back(std::acos(std::clamp(s(i), -1.0, 1.0)));
  return angles;
}

}  // namespace qsymx
