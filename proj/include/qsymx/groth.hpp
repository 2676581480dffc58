#pragma once

#include "qsymx/symext.hpp"

namespace qsymx {

/// Element of the Grothendieck ring K: a finitely supported integer map on
/// dominant weights (negative multiplicities allowed).
struct GrothElement {
  std::map<Weight, long> terms;

  void add(const Weight& lambda, long mult);
  long mult(const Weight& lambda) const;
  bool nonnegative() const;
  long total_dim(const RootSystem& rs) const;

  GrothElement operator+(const GrothElement& o) const;
  GrothElement operator-(const GrothElement& o) const;
  bool operator==(const GrothElement& o) const = default;
};

GrothElement termwise_min(const GrothElement& a, const GrothElement& b);
std::string to_string(const GrothElement& g);

/// Multiplicities by highest-weight-vector count: for each dominant weight,
/// the dimension of the joint kernel of all E_i on that weight space.
/// Rejects the result if the multiplicities do not sum to the dimension.
GrothElement decompose(const ModuleRep& m);
GrothElement decompose(const TensorSpace& t);

/// decompose() restricted to the submodule spanned by the columns of basis.
GrothElement decompose_subspace(const ModuleRep& big, const Mat& basis);

/// Classical weight multiset of V_lambda by Freudenthal's recursion, exact;
/// validated against the Weyl dimension.
std::map<Weight, long> classical_weights(const RootSystem& rs, const Weight& lambda);

/// Decomposition of a genuine character multiset into dominant characters by
/// repeated subtraction of the largest dominant weight's full multiset.
/// Throws when an intermediate multiplicity goes negative.
GrothElement peel_character(const RootSystem& rs, std::map<Weight, long> multiset);

/// Classical S^3 / Lambda^3 from the weight multiset of V: the multiset of
/// triple sums over i <= j <= k (sym) or i < j < k (ext), peeled.
GrothElement classical_cube(const RootSystem& rs, const std::vector<Weight>& weights,
                            PowerKind kind);

struct QuantumCube {
  GrothElement decomposition;
  long dim = 0;
  bool lemma_fixed_space_ok = false;  // subspace == {a v = +/-v, psi v = v}
};

/// Decomposition of S^3_q V (or Lambda^3_q V) inside V^{(x)3}, with the
/// cross-check that the subspace equals the joint fixed space of a_q (up to
/// sign) and psi_q.
QuantumCube quantum_cube(const ModuleRep& v, PowerKind kind);

struct CubeIdentityReport {
  GrothElement quantum_sym, quantum_ext, classical_sym, classical_ext;
  long sym_dim = 0, ext_dim = 0;
  bool identity_holds = false;  // S^3_q V - L^3_q V == S^3 V - L^3 V termwise
  bool lifted_holds = false;    // S^3_q V + L^3 V == S^3 V + L^3_q V in K^+
  long koszul_expected = 0;     // (dim V)^2
  long koszul_difference = 0;
  bool koszul_ok = false;
  bool lemma_fixed_space_ok = false;
  std::vector<Weight> mismatches;
};

CubeIdentityReport verify_cube_identity(const ModuleRep& v);

struct PsiSpectrumReport {
  std::vector<std::pair<Weight, double>> min_singular;  // of psi^lambda + id
  double overall_min = 0;
  bool q_is_one = false;
  bool psi_cubed_exact = false;  // only meaningful at q = 1
  bool pass = false;
};

/// Certifies ker(psi_q^lambda + 1) trivial on every highest-weight space of
/// V^{(x)3} (smallest singular value of psi^lambda + id above 0.05), or
/// psi^3 = id exactly at q = 1.
PsiSpectrumReport psi_spectrum_check(const ModuleRep& v);

struct ZwicknaglReport {
  GrothElement s3_lower, l3_lower;   // S^3_l V, Lambda^3_l V
  bool identity_ok = false;          // S^3_l - L^3_l == S^3 - L^3
};

/// Zwicknagl's lower cubes: remove from S^2_q V (x) V and Lambda^2_q V (x) V
/// their greatest common part (termwise minimum in K).
ZwicknaglReport zwicknagl_cubes(const ModuleRep& v);

}  // namespace qsymx
