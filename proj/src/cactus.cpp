#include "qsymx/cactus.hpp"

#include <sstream>
#include <stdexcept>

namespace qsymx {

CactusWord::CactusWord(int n_, std::vector<CactusGenerator> ls)
    : n(n_), letters(std::move(ls)) {
  if (n < 2) throw std::invalid_argument("cactus words need n >= 2");
  for (const auto& g : letters)
    if (g.p < 1 || g.p >= g.t || g.t > n)
      throw std::invalid_argument("cactus generator indices out of range: s_{" +
                                  std::to_string(g.p) + "," + std::to_string(g.t) + "}");
}

namespace {

void require_equal_factors(const TensorSpace& t, const char* who) {
  const auto& f = t.factors();
  for (size_t k = 1; k < f.size(); ++k)
    if (f[k].dim != f[0].dim || !(f[k].basis_weights == f[0].basis_weights))
      throw std::invalid_argument(std::string(who) + " needs equal tensor factors");
}

}  // namespace

LinOperator sigma_prt(const TensorSpace& t, int p, int r, int tt, bool super) {
  const int n = t.num_factors();
  if (!(1 <= p && p <= r && r < tt && tt <= n)) {
    std::ostringstream os;
    os << "sigma_prt indices violate 1 <= p <= r < t <= n: p=" << p << " r=" << r
       << " t=" << tt << " n=" << n;
    throw std::invalid_argument(os.str());
  }
  const ModuleRep left = t.group(p - 1, r - 1);
  const ModuleRep right = t.group(r, tt - 1);
  Mat sigma = coboundary(TensorSpace({left, right})).matrix;
  if (super) {
    const int i = (r - p + 1) % 2;
    const int j = (tt - r) % 2;
    if (i * j) sigma = -sigma;
  }
  int pre = 1, post = 1;
  for (int k = 0; k < p - 1; ++k) pre *= t.factors()[k].dim;
  for (int k = tt; k < n; ++k) post *= t.factors()[k].dim;
  Mat out = kron(Mat::Identity(pre, pre), kron(sigma, Mat::Identity(post, post)));
  return LinOperator(std::move(out), {t.combined().dim});
}

LinOperator cactus_generator(const TensorSpace& t, int p, int tt, bool super) {
  require_equal_factors(t, "cactus_generator");
  if (!(1 <= p && p < tt && tt <= t.num_factors()))
    throw std::invalid_argument("cactus generator indices out of range");
  Mat out = sigma_prt(t, p, p, tt, super).matrix;
  for (int pp = p + 1; pp < tt; ++pp)
    out = out * sigma_prt(t, pp, pp, tt, super).matrix;
  return LinOperator(std::move(out), {t.combined().dim});
}

LinOperator cactus_action(const TensorSpace& t, const CactusWord& w) {
  require_equal_factors(t, "cactus_action");
  if (w.n != t.num_factors())
    throw std::invalid_argument("cactus word arity does not match the tensor power");
  const int dim = t.combined().dim;
  Mat out = Mat::Identity(dim, dim);
  for (const auto& g : w.letters) out = out * cactus_generator(t, g.p, g.t).matrix;
  return LinOperator(std::move(out), {dim});
}

LinOperator super_coboundary(const ModuleRep& v, Parity pv, const ModuleRep& w, Parity pw) {
  LinOperator sigma = coboundary(TensorSpace({v, w}));
  if (pv == Parity::odd && pw == Parity::odd) sigma.matrix = -sigma.matrix;
  return sigma;
}

J3Elements j3_special_elements(const TensorSpace& t) {
  require_equal_factors(t, "j3_special_elements");
  if (t.num_factors() != 3)
    throw std::invalid_argument("j3_special_elements needs three equal factors");
  const int dim = t.combined().dim;
  const Mat a = cactus_generator(t, 1, 2).matrix;
  const Mat b = cactus_generator(t, 2, 3).matrix;
  const Mat s13 = cactus_generator(t, 1, 3).matrix;
  const Mat psi = s13 * a;
  const Mat id = Mat::Identity(dim, dim);
  const double r1 = std::max(max_abs(a * a - id), max_abs(b * b - id));
  const double r2 = max_abs(psi * a - b * psi);
  const double r3 = max_abs(a * psi * a - psi.partialPivLu().inverse());
  const double worst = std::max({r1, r2, r3});
  if (worst >= 1e-8)
    throw std::runtime_error("j3_special_elements rejected: relation residual " +
                             std::to_string(worst));
  return {LinOperator(a, {dim}), LinOperator(b, {dim}), LinOperator(psi, {dim})};
}

}  // namespace qsymx
