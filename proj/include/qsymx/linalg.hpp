#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qsymx {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Initial relative cutoff for ranks and kernels.
inline constexpr double kDefaultTol = 1e-9;

/// Process-wide rank/kernel cutoff used when a tolerance argument is omitted
/// (negative). Set once at startup (the CLI maps --tol / QSYMX_TOL here).
double default_tolerance();
void set_default_tolerance(double tol);

/// Real operator on a (possibly tensor-product) space. space_dims records
/// the tensor-factor dimensions; their product must equal the matrix side.
struct LinOperator {
  Mat matrix;
  std::vector<int> space_dims;

  LinOperator() = default;
  explicit LinOperator(Mat m);
  LinOperator(Mat m, std::vector<int> dims);

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Symmetric positive-definite Gram matrix. Validated at construction.
struct GramForm {
  Mat matrix;

  GramForm() = default;
  explicit GramForm(Mat g);

  int dim() const { return static_cast<int>(matrix.rows()); }
};

double max_abs(const Mat& m);

Mat kron(const Mat& a, const Mat& b);

/// Permutation matrix of the tensor flip tau : V (x) W -> W (x) V,
/// tau(v_i (x) w_j) = w_j (x) v_i, for dim V = d1, dim W = d2.
Mat flip_permutation(int d1, int d2);

/// Rank with the relative cutoff tol. An operator whose largest singular
/// value is <= tol counts as zero (rank 0).
int numerical_rank(const Mat& m, double tol = -1.0);

/// Orthonormal basis of the numerical kernel, as matrix columns ordered by
/// increasing singular value, sign-fixed so the first nonzero coordinate of
/// each column is positive. Works for rectangular m (kernel as a map).
Mat kernel_basis(const Mat& m, double tol = -1.0);

/// Spec surface of kernel_basis on LinOperator.
std::vector<Vec> kernel(const LinOperator& op, double tol = -1.0);

/// Orthonormal basis of the column space of m (rank via tol).
Mat orthonormal_colspace(const Mat& m, double tol = -1.0);

/// kernel_basis / numerical_rank variants for integer-dimension decisions:
/// they throw when a singular value falls within three decades of the
/// relative cutoff, instead of guessing the rank.
Mat kernel_basis_guarded(const Mat& m, double tol = -1.0);
int numerical_rank_guarded(const Mat& m, double tol = -1.0);

/// Form adjoint A* = G^{-1} A^T G, so (Av,w)_G = (v,A*w)_G.
LinOperator adjoint(const LinOperator& op, const GramForm& form);

/// Inverse square root of an operator that is self-adjoint w.r.t. the form
/// and has positive spectrum: returns T with T T = op^{-1}, T form-self-adjoint.
/// Throws if op fails the self-adjointness residual or has an eigenvalue
/// below tolerance.
LinOperator inv_sqrt_psd(const LinOperator& op, const GramForm& form);

/// Principal angles (radians, ascending) between the column spans of two
/// orthonormal bases of equal dimension.
std::vector<double> principal_angles(const Mat& a, const Mat& b);

}  // namespace qsymx
