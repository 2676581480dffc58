#include "qsymx/cartan.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qsymx {

std::string to_string(CartanType t) {
  switch (t) {
    case CartanType::A1: return "A1";
    case CartanType::A2: return "A2";
    case CartanType::B2: return "B2";
  }
  return "?";
}

CartanType parse_cartan_type(const std::string& name) {
  if (name == "A1") return CartanType::A1;
  if (name == "A2") return CartanType::A2;
  if (name == "B2") return CartanType::B2;
  throw std::invalid_argument("unsupported Cartan type '" + name +
                              "'; supported types are A1, A2, B2");
}

bool Weight::dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
}

Weight Weight::operator+(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

Weight Weight::operator*(int k) const {
  Weight r = *this;
  for (auto& c : r.coords) c *= k;
  return r;
}

std::string to_string(const Weight& w) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < w.rank(); ++i) os << (i ? "," : "") << w.coords[i];
  os << ")";
  return os.str();
}

Weight RootSystem::alpha(int j) const {
  std::vector<int> c(rank);
  for (int i = 0; i < rank; ++i) c[i] = cartan_matrix[i][j];
  return Weight(c);
}

Weight RootSystem::reflect(const Weight& mu, int i) const {
  // <alpha_i^vee, mu> is the i-th fundamental-weight coordinate.
  return mu - alpha(i) * mu.coords[i];
}

namespace {

// Exact inverse of a small rational matrix by Gauss-Jordan elimination.
std::vector<std::vector<Rat>> rat_inverse(std::vector<std::vector<Rat>> m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw std::runtime_error("singular matrix in Cartan data");
    std::swap(m[c], m[p]);
    std::swap(inv[c], inv[p]);
    const Rat pivot = m[c][c];
    for (int j = 0; j < n; ++j) {
      m[c][j] /= pivot;
      inv[c][j] /= pivot;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rat f = m[r][c];
      for (int j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

RootSystem build_root_system(CartanType type) {
  RootSystem rs;
  rs.type = type;
  switch (type) {
    case CartanType::A1:
      rs.rank = 1;
      rs.cartan_matrix = {{2}};
      rs.symmetrizers = {1};
      rs.w0_word = {1};
      break;
    case CartanType::A2:
      rs.rank = 2;
      rs.cartan_matrix = {{2, -1}, {-1, 2}};
      rs.symmetrizers = {1, 1};
      rs.w0_word = {1, 2, 1};
      break;
    case CartanType::B2:
      // alpha_1 long, alpha_2 short; (alpha|alpha) = 2 for short roots.
      rs.rank = 2;
      rs.cartan_matrix = {{2, -1}, {-2, 2}};
      rs.symmetrizers = {2, 1};
      rs.w0_word = {1, 2, 1, 2};
      break;
  }
  const int r = rs.rank;

  // fw_gram solves (omega_i | alpha_j) = delta_ij d_j, i.e. G = D S^{-1} D
  // with S the symmetrized Cartan matrix d_i a_ij.
  std::vector<std::vector<Rat>> S(r, std::vector<Rat>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      S[i][j] = Rat(rs.symmetrizers[i] * rs.cartan_matrix[i][j]);
  auto Sinv = rat_inverse(S);
  rs.fw_gram.assign(r, std::vector<Rat>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      rs.fw_gram[i][j] = Rat(rs.symmetrizers[i]) * Sinv[i][j] * Rat(rs.symmetrizers[j]);

  // beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})
  for (size_t k = 0; k < rs.w0_word.size(); ++k) {
    Weight beta = rs.alpha(rs.w0_word[k] - 1);
    for (int j = static_cast<int>(k) - 1; j >= 0; --j)
      beta = rs.reflect(beta, rs.w0_word[j] - 1);
    rs.positive_roots.push_back(beta);
  }

  rs.rho = Weight(std::vector<int>(r, 1));
  return rs;
}

Rat weight_inner(const RootSystem& rs, const Weight& mu, const Weight& nu) {
  if (mu.rank() != rs.rank || nu.rank() != rs.rank)
    throw std::invalid_argument("weight rank does not match root system rank");
  Rat total = 0;
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j)
      total += Rat(mu.coords[i]) * rs.fw_gram[i][j] * Rat(nu.coords[j]);
  return total;
}

double weight_inner_d(const RootSystem& rs, const Weight& mu, const Weight& nu) {
  const Rat v = weight_inner(rs, mu, nu);
  return static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
}

std::vector<Rat> root_coordinates(const RootSystem& rs, const Weight& mu) {
  if (mu.rank() != rs.rank)
    throw std::invalid_argument("weight rank does not match root system rank");
  std::vector<std::vector<Rat>> a(rs.rank, std::vector<Rat>(rs.rank));
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) a[i][j] = Rat(rs.cartan_matrix[i][j]);
  const auto ainv = rat_inverse(a);
  std::vector<Rat> c(rs.rank, 0);
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) c[i] += ainv[i][j] * Rat(mu.coords[j]);
  return c;
}

long weyl_dim(const RootSystem& rs, const Weight& lambda) {
  if (lambda.rank() != rs.rank)
    throw std::invalid_argument("weight rank does not match root system rank");
  if (!lambda.dominant())
    throw std::invalid_argument("weyl_dim requires a dominant weight, got " +
                                to_string(lambda));
  const Weight lr = lambda + rs.rho;
  Rat num = 1, den = 1;
  for (const Weight& beta : rs.positive_roots) {
    num *= weight_inner(rs, lr, beta);
    den *= weight_inner(rs, rs.rho, beta);
  }
  const Rat d = num / den;
  if (d.denominator() != 1)
    throw std::runtime_error("Weyl dimension did not come out integral");
  return static_cast<long>(d.numerator());
}

}  // namespace qsymx
