#pragma once

#include <map>
#include <vector>

#include "qsymx/cartan.hpp"
#include "qsymx/linalg.hpp"

namespace qsymx {

/// [N]_q = (q^N - q^{-N}) / (q - q^{-1}), continuously extended to q = 1.
/// Defined for all integers N ([-N] = -[N]).
double quantum_integer(long n, double qi);

/// [N]_q! = [1][2]...[N].
double quantum_factorial(long n, double qi);

/// Location of one simple summand inside a direct-sum module.
struct Summand {
  Weight lambda;
  int offset = 0;
  int dim = 0;
};

/// A concrete U_q(g)-module on a weight basis: matrices for the E_i and F_i
/// generators at a fixed q > 0. K_i is derived (diagonal q_i^{mu_i} on the
/// mu weight space). `gram` holds the invariant inner product of the compact
/// real form. `summands` lists the simple constituents when the module was
/// built as a simple or a direct sum; it is empty for grouped tensor-product
/// modules, whose decomposition is computed on demand.
struct ModuleRep {
  RootSystem rs;
  double q = 1.0;
  int dim = 0;
  std::vector<Weight> basis_weights;
  std::vector<Mat> E, F;
  Mat gram;
  std::vector<Summand> summands;

  double qi(int i) const;
  /// Diagonal matrix of K_i^power.
  Mat K(int i, int power = 1) const;
  /// Basis indices grouped by weight.
  std::map<Weight, std::vector<int>> weight_blocks() const;
};

/// Largest residual over the defining relations (K E K^{-1}, K F K^{-1},
/// [E_i,F_j], quantum Serre) and the weight-grading of E/F.
double relation_residual(const ModuleRep& m);

/// Residual of the gram invariance equations for E_i* = K_i F_i etc.
double gram_invariance_residual(const ModuleRep& m);

/// Throws std::runtime_error when a relation or grading residual exceeds the
/// module tolerances (1e-9 for Eqs. 2.1-2.3 and grading, 1e-8 for Serre).
void validate_module(const ModuleRep& m);

ModuleRep build_fundamental(const RootSystem& rs, int i, double q);
ModuleRep build_simple(const RootSystem& rs, const Weight& lambda, double q);
ModuleRep direct_sum(const std::vector<ModuleRep>& mods);

/// Tensor product module with the comultiplication action
///   E_i -> E_i (x) 1 + K_i (x) E_i,  F_i -> F_i (x) K_i^{-1} + 1 (x) F_i,
/// gram = kron of factor grams. Summand structure is left empty.
ModuleRep tensor_module(const ModuleRep& a, const ModuleRep& b);

/// An ordered list of tensor factors plus the combined module they span.
class TensorSpace {
 public:
  explicit TensorSpace(std::vector<ModuleRep> factors);

  const std::vector<ModuleRep>& factors() const { return factors_; }
  const ModuleRep& combined() const { return combined_; }
  int num_factors() const { return static_cast<int>(factors_.size()); }

  /// Combined module of factors [a..b], 0-based inclusive.
  ModuleRep group(int a, int b) const;

 private:
  std::vector<ModuleRep> factors_;
  ModuleRep combined_;
};

/// Tensor power V^{(x)n}.
TensorSpace tensor_power(const ModuleRep& v, int n);

GramForm gram_form(const ModuleRep& m);

/// Restriction of a module to an invariant subspace spanned by the columns
/// of `basis` (any well-conditioned spanning set; the subspace must be a
/// weight-graded submodule). Basis vectors are re-expressed weight block by
/// weight block; the restricted gram is the restriction of the ambient form.
ModuleRep submodule(const ModuleRep& big, const Mat& basis);

/// Invariant gram matrix of a simple module by solving the invariance
/// equations; normalized so the leading (highest weight) basis vector has
/// norm one. Throws if no positive-definite solution exists or the solution
/// space is not one-dimensional.
Mat solve_invariant_gram(const RootSystem& rs, double q,
                         const std::vector<Weight>& weights,
                         const std::vector<Mat>& E, const std::vector<Mat>& F);

/// Lusztig symmetry T''_{i,1} on an integrable module: on each i-string of
/// highest weight n, with divided-power basis v_r = F_i^{(r)} v_0,
///   T(v_r) = (-1)^{n-r} q_i^{(n-r)(r+1)} v_{n-r}.
/// Maps the mu weight space onto the s_i(mu) weight space and satisfies the
/// braid relations.
LinOperator braid_operator(const ModuleRep& m, int i);

struct RootVectorOps {
  std::vector<Mat> E;  // E_{beta_k}, shifts weights by +beta_k
  std::vector<Mat> F;  // F_{beta_k}, shifts weights by -beta_k
};

/// Quantum root vector operators E_{beta_k} = T_{i_1}...T_{i_{k-1}} E_{i_k}
/// T_{i_{k-1}}^{-1}...T_{i_1}^{-1} (and likewise for F), following w0_word.
RootVectorOps root_vector_operators(const ModuleRep& m);

}  // namespace qsymx
