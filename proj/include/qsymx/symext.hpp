#pragma once

#include "qsymx/cactus.hpp"

namespace qsymx {

enum class PowerKind { sym, ext };

/// Graded dimension table, dims[n] for degrees 0..N.
struct GradedDims {
  std::vector<long> dims;
};

/// sigma acting in tensor slots i, i+1 of V^{(x)n} (1-based i), identity
/// elsewhere; sigma is the coboundary operator on V (x) V.
Mat adjacent_sigma(const Mat& sigma, int d, int n, int i);

/// Form-orthonormal basis of S^n_q V = cap_i ker(sigma_i - id), or of
/// Lambda^n_q V = cap_i ker(sigma_i + id) for kind = ext.
Mat power_subspace(const ModuleRep& v, int n, PowerKind kind);

inline Mat sym_subspace(const ModuleRep& v, int n) {
  return power_subspace(v, n, PowerKind::sym);
}
inline Mat ext_subspace(const ModuleRep& v, int n) {
  return power_subspace(v, n, PowerKind::ext);
}

/// Degree-n data of the quotient algebra component: the ideal degree
/// J^n = sum_i ker(sigma_i -/+ id) (opposite sign to the subspace), the
/// quotient dimension d^n - dim J^n, and the direct-sum/embedding checks
/// dim(J^n cap S^n_q V) = 0, dim J^n + dim S^n_q V = d^n.
struct QuotientComponent {
  int degree = 0;
  PowerKind kind = PowerKind::sym;
  long subspace_dim = 0;
  long ideal_dim = 0;
  long quotient_dim = 0;
  long intersection_dim = 0;
  bool embedding_ok = false;
};

QuotientComponent quotient_component(const ModuleRep& v, int n, PowerKind kind);

struct FlatnessRow {
  int degree = 0;
  long sym_dim = 0;
  long sym_classical = 0;
  long ext_dim = 0;
  long ext_classical = 0;
  bool sym_flat = false;
  bool ext_flat = false;
};

/// Per-degree flatness verdicts for 2 <= n <= n_max against the classical
/// counts C(d+n-1, n) and C(d, n).
std::vector<FlatnessRow> flatness(const ModuleRep& v, int n_max);

struct CommutativityResult {
  double residual = 0;  // max over J_n generators of |pi rho_q(s_pt) - pi|
  int worst_p = 0;
  int worst_t = 0;
};

/// Checks that every cactus generator fixes S^n_q V pointwise, via
/// |pi . rho_q(s_{p,t}) - pi| with pi the form-orthogonal projection onto
/// S^n_q V. With super = true, uses the sign-twisted action and Lambda^n_q V.
CommutativityResult commutativity_check(const ModuleRep& v, int n, bool super);

struct HilbertKoszul {
  GradedDims sym;  // degrees 0..3
  GradedDims ext;
  long expected = 0;  // (dim V)^2
  long difference = 0;
  bool koszul_ok = false;
};

/// Dimensions of S^n_q V and Lambda^n_q V for n <= 3 and the verdict of
/// dim S^3_q - dim Lambda^3_q = (dim V)^2.
HilbertKoszul hilbert_and_koszul(const ModuleRep& v);

/// Classical binomial helper used by flatness.
long binomial(long n, long k);

}  // namespace qsymx
