#pragma once

#include "qsymx/braiding.hpp"

namespace qsymx {

/// Generator s_{p,t} of the n-fruit cactus group, 1 <= p < t <= n.
struct CactusGenerator {
  int p = 0;
  int t = 0;
};

struct CactusWord {
  int n = 0;
  std::vector<CactusGenerator> letters;

  CactusWord(int n_, std::vector<CactusGenerator> ls);
};

/// Parity of a module viewed inside the super category.
enum class Parity { even, odd };

/// sigma_{p,r,t} = id (x) gamma_{(A_p..A_r),(A_{r+1}..A_t)} (x) id for
/// 1 <= p <= r < t <= n, built from the coboundary operator of the grouped
/// factors. With super = true the coboundary is sign-twisted as if every
/// factor were odd.
LinOperator sigma_prt(const TensorSpace& t, int p, int r, int tt, bool super = false);

/// rho_q(s_{p,t}) via the recursion s_{p,p+1} = sigma_{p,p,p+1},
/// s_{p,t} = sigma_{p,p,t} . s_{p+1,t}. Requires equal tensor factors.
LinOperator cactus_generator(const TensorSpace& t, int p, int tt, bool super = false);

/// rho_q(w) for a word in the s_{p,t}; letters compose right-to-left
/// (letters[0] is applied last).
LinOperator cactus_action(const TensorSpace& t, const CactusWord& w);

/// Coboundary operator twisted by (-1)^{ij} for parities i, j.
LinOperator super_coboundary(const ModuleRep& v, Parity pv, const ModuleRep& w, Parity pw);

struct J3Elements {
  LinOperator a;    // rho_q(s_12)
  LinOperator b;    // rho_q(s_23)
  LinOperator psi;  // rho_q(s_13) rho_q(s_12)
};

/// The J_3 generators a, b and psi on V^{(x)3}; the relations a^2 = b^2 = id,
/// psi a = b psi, a psi a = psi^{-1} are verified to 1e-8 at construction.
J3Elements j3_special_elements(const TensorSpace& t);

}  // namespace qsymx
