#pragma once

#include <boost/rational.hpp>
#include <compare>
#include <string>
#include <vector>

namespace qsymx {

using Rat = boost::rational<long long>;

enum class CartanType { A1, A2, B2 };

std::string to_string(CartanType t);

/// Parses "A1", "A2", "B2"; throws std::invalid_argument naming the
/// supported types otherwise.
CartanType parse_cartan_type(const std::string& name);

/// Integral weight in fundamental-weight coordinates.
struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}

  int rank() const { return static_cast<int>(coords.size()); }
  bool dominant() const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator*(int k) const;
  bool operator==(const Weight& o) const = default;
  auto operator<=>(const Weight& o) const = default;
};

std::string to_string(const Weight& w);

/// Static Cartan data for one of the supported types. Immutable after
/// construction; all entries exact.
struct RootSystem {
  CartanType type;
  int rank = 0;
  std::vector<std::vector<int>> cartan_matrix;  // a_ij
  std::vector<int> symmetrizers;                // d_i, (alpha_i|alpha_i) = 2 d_i
  std::vector<std::vector<Rat>> fw_gram;        // (omega_i|omega_j)
  std::vector<Weight> positive_roots;           // beta_1..beta_n, fw coordinates
  std::vector<int> w0_word;                     // reduced word for w0, 1-based letters
  Weight rho;                                   // half-sum of positive roots

  /// Simple root alpha_j (0-based j) in fundamental-weight coordinates,
  /// i.e. column j of the Cartan matrix.
  Weight alpha(int j) const;

  /// Simple reflection s_i applied to a weight.
  Weight reflect(const Weight& mu, int i) const;

  std::string name() const { return to_string(type); }
};

RootSystem build_root_system(CartanType type);

/// Bilinear form (mu|nu) from fw_gram, exact.
Rat weight_inner(const RootSystem& rs, const Weight& mu, const Weight& nu);

/// Same as weight_inner but as a double, for numeric layers.
double weight_inner_d(const RootSystem& rs, const Weight& mu, const Weight& nu);

/// Classical Weyl dimension of V_lambda; lambda must be dominant.
long weyl_dim(const RootSystem& rs, const Weight& lambda);

/// Coordinates of mu in the simple-root basis: c with mu = sum_i c_i alpha_i,
/// exact rationals.
std::vector<Rat> root_coordinates(const RootSystem& rs, const Weight& mu);

}  // namespace qsymx
