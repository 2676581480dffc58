#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsymx/cartan.hpp"

using namespace qsymx;

TEST_CASE("A1 data") {
  const RootSystem rs = build_root_system(CartanType::A1);
  CHECK(rs.rank == 1);
  CHECK(rs.cartan_matrix[0][0] == 2);
  CHECK(rs.symmetrizers[0] == 1);
  CHECK(rs.fw_gram[0][0] == Rat(1, 2));
  CHECK(rs.positive_roots.size() == 1);
  CHECK(rs.w0_word == std::vector<int>{1});
}

TEST_CASE("A2 data") {
  const RootSystem rs = build_root_system(CartanType::A2);
  CHECK(rs.cartan_matrix == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});
  CHECK(rs.positive_roots.size() == 3);
  CHECK(weight_inner(rs, Weight({1, 0}), Weight({1, 0})) == Rat(2, 3));
}

TEST_CASE("B2 data") {
  const RootSystem rs = build_root_system(CartanType::B2);
  CHECK(rs.positive_roots.size() == 4);
  CHECK(rs.w0_word.size() == 4);
  // (alpha|alpha) = 2 for the short root, 4 for the long one; d = (2,1).
  CHECK(weight_inner(rs, rs.alpha(1), rs.alpha(1)) == Rat(2));
  CHECK(weight_inner(rs, rs.alpha(0), rs.alpha(0)) == Rat(4));
  CHECK(rs.symmetrizers == std::vector<int>{2, 1});
}

TEST_CASE("root system invariants") {
  for (CartanType t : {CartanType::A1, CartanType::A2, CartanType::B2}) {
    const RootSystem rs = build_root_system(t);
    for (int i = 0; i < rs.rank; ++i) {
      CHECK(rs.cartan_matrix[i][i] == 2);
      for (int j = 0; j < rs.rank; ++j) {
        if (i != j) CHECK(rs.cartan_matrix[i][j] <= 0);
        // symmetrizability d_i a_ij = d_j a_ji
        CHECK(rs.symmetrizers[i] * rs.cartan_matrix[i][j] ==
              rs.symmetrizers[j] * rs.cartan_matrix[j][i]);
        // (omega_i | alpha_j) = delta_ij d_j
        std::vector<int> fw(rs.rank, 0);
        fw[i] = 1;
        CHECK(weight_inner(rs, Weight(fw), rs.alpha(j)) ==
              (i == j ? Rat(rs.symmetrizers[j]) : Rat(0)));
        // ((alpha_i|alpha_j)) = d_i a_ij
        CHECK(weight_inner(rs, rs.alpha(i), rs.alpha(j)) ==
              Rat(rs.symmetrizers[i] * rs.cartan_matrix[i][j]));
      }
    }
    CHECK(rs.positive_roots.size() == rs.w0_word.size());
    // beta_k reconstruction reproduces the stored list and exhausts it.
    for (size_t k = 0; k < rs.w0_word.size(); ++k) {
      Weight beta = rs.alpha(rs.w0_word[k] - 1);
      for (int j = static_cast<int>(k) - 1; j >= 0; --j)
        beta = rs.reflect(beta, rs.w0_word[j] - 1);
      CHECK(beta == rs.positive_roots[k]);
      for (size_t l = 0; l < k; ++l) CHECK(!(rs.positive_roots[l] == beta));
    }
    // rho is the half-sum of the positive roots.
    Weight sum(std::vector<int>(rs.rank, 0));
    for (const Weight& b : rs.positive_roots) sum = sum + b;
    CHECK(sum == rs.rho * 2);
  }
}

TEST_CASE("weight_inner is symmetric") {
  const RootSystem rs = build_root_system(CartanType::B2);
  const Weight a({3, -1}), b({-2, 5});
  CHECK(weight_inner(rs, a, b) == weight_inner(rs, b, a));
}

TEST_CASE("weyl_dim") {
  const RootSystem a1 = build_root_system(CartanType::A1);
  CHECK(weyl_dim(a1, Weight({3})) == 4);
  CHECK(weyl_dim(a1, Weight({0})) == 1);
  const RootSystem a2 = build_root_system(CartanType::A2);
  CHECK(weyl_dim(a2, Weight({1, 1})) == 8);
  CHECK(weyl_dim(a2, Weight({1, 0})) == 3);
  const RootSystem b2 = build_root_system(CartanType::B2);
  CHECK(weyl_dim(b2, Weight({1, 0})) == 5);
  CHECK(weyl_dim(b2, Weight({0, 1})) == 4);
  CHECK(weyl_dim(b2, Weight({1, 1})) == 16);
}

TEST_CASE("root_coordinates") {
  const RootSystem a2 = build_root_system(CartanType::A2);
  const auto c = root_coordinates(a2, a2.alpha(0));
  CHECK(c[0] == Rat(1));
  CHECK(c[1] == Rat(0));
  const auto r = root_coordinates(a2, Weight({1, 1}));  // rho = alpha_1 + alpha_2
  CHECK(r[0] == Rat(1));
  CHECK(r[1] == Rat(1));
}

TEST_CASE("error paths") {
  CHECK_THROWS_WITH_AS(parse_cartan_type("G2"),
                       doctest::Contains("supported types are A1, A2, B2"),
                       std::invalid_argument);
  const RootSystem a1 = build_root_system(CartanType::A1);
  CHECK_THROWS_AS(weyl_dim(a1, Weight({-1})), std::invalid_argument);
  CHECK_THROWS_AS(weight_inner(a1, Weight({1, 0}), Weight({1})),
                  std::invalid_argument);
}
