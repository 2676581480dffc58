#pragma once

#include "qsymx/uqg.hpp"

namespace qsymx {

/// One isotypic component of a module: lambda, the form-orthogonal projector
/// onto the full component, and the multiplicity.
struct IsotypicComponent {
  Weight lambda;
  LinOperator projector;
  int multiplicity = 0;
};

struct IsotypicDecomposition {
  std::vector<IsotypicComponent> components;
};

/// Diagonal operator D(v (x) w) = q^{(wt v | wt w)} v (x) w on a two-factor
/// tensor space.
LinOperator d_operator(const TensorSpace& t);

/// R-matrix on a two-factor tensor space: R = D . X_1 X_2 ... X_m with one
/// factor per positive root (w0_word order, leftmost applied last),
///   X_k = sum_t (1 - q_b^{-2})^t / [t]_{q_b}! q_b^{t(t+1)/2}
///           F_{beta_k}^t (x) E_{beta_k}^t,   q_b = q^{(beta|beta)/2},
/// truncated where the root vectors act nilpotently. The intertwiner
/// identity R Delta(a) = Delta^op(a) R is verified at construction; if it
/// fails the reversed product order is tried once, and construction is
/// rejected when neither order passes.
LinOperator r_matrix(const TensorSpace& t);

/// Max residual of R Delta(a) - Delta^op(a) R over a in {E_i, F_i, K_i}.
double intertwiner_residual(const TensorSpace& t, const Mat& r);

/// True when the last r_matrix call in this thread used the reversed
/// product order (recorded for reports).
bool r_matrix_used_reversed_order();

/// Isotypic decomposition of any module carrying an invariant form:
/// highest weight vectors per dominant weight (joint kernel of the E_i),
/// closed up to full simple submodules, with form-orthogonal projectors.
IsotypicDecomposition isotypic(const ModuleRep& m);
IsotypicDecomposition isotypic(const TensorSpace& t);

/// Ribbon operator power theta_M^s = sum_lambda q^{s (lambda|lambda+2 rho)}
/// P_lambda. Uses the stored summand structure when present, otherwise the
/// isotypic decomposition. Collapses to an exact scalar multiple of the
/// identity when all scalars coincide (in particular at q = 1).
Mat ribbon_power(const ModuleRep& m, double s);

/// The positive operator R_21 R on a two-factor tensor space.
LinOperator r21r(const TensorSpace& t);

enum class SqrtPath { scalar, spectral };

/// (R_21 R)^{-1/2}. The scalar path evaluates the ribbon factorization
/// (theta_V^{1/2} (x) theta_W^{1/2}) theta_{V(x)W}^{-1/2}, which applies
/// q^{-e_lambda/2} on each isotypic component blockwise over pairs of
/// simple summands; the spectral path uses linalg::inv_sqrt_psd.
LinOperator r21r_inv_sqrt(const TensorSpace& t, SqrtPath path);

/// Coboundary operator sigma = tau . R . (R_21 R)^{-1/2} : V (x) W -> W (x) V.
/// Both square-root paths are evaluated and must agree to 1e-7; the
/// requested path's result is returned.
LinOperator coboundary(const TensorSpace& t, SqrtPath path = SqrtPath::scalar);

}  // namespace qsymx
