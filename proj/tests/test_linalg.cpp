#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qsymx/linalg.hpp"

using namespace qsymx;

namespace {

Mat random_matrix(int n, unsigned seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

// Random invertible matrix with singular values pushed away from zero.
Mat well_conditioned(int n, unsigned seed) {
  Mat m = random_matrix(n, seed);
  return m + 3.0 * n * Mat::Identity(n, n) * (m.norm() / n);
}

}  // namespace

TEST_CASE("kernel basics") {
  CHECK(kernel(LinOperator(Mat::Identity(3, 3)), 1e-9).empty());
  CHECK(kernel(LinOperator(Mat::Zero(2, 2)), 1e-9).size() == 2);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-15;
  const auto k = kernel(LinOperator(d), 1e-9);
  REQUIRE(k.size() == 1);
  // deterministic sign fix: first nonzero coordinate positive
  CHECK(k[0](1) > 0.9);
}

TEST_CASE("kernel dimension invariant under well-conditioned factors") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    Mat m = random_matrix(8, seed);
    // force rank 5
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vec s = svd.singularValues();
    s(5) = s(6) = s(7) = 0.0;
    m = svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
    const int k0 = static_cast<int>(kernel(LinOperator(m), 1e-9).size());
    CHECK(k0 == 3);
    const Mat g = well_conditioned(8, seed + 100);
    CHECK(kernel(LinOperator(Mat(g * m)), 1e-9).size() == k0);
  }
}

TEST_CASE("numerical rank with zero floor") {
  CHECK(numerical_rank(Mat::Zero(4, 4)) == 0);
  CHECK(numerical_rank(1e-14 * Mat::Identity(4, 4)) == 0);
  CHECK(numerical_rank(Mat::Identity(4, 4)) == 4);
}

TEST_CASE("adjoint") {
  const GramForm euclid(Mat::Identity(3, 3));
  const Mat a = random_matrix(3, 7);
  CHECK(max_abs(adjoint(LinOperator(a), euclid).matrix - a.transpose()) < 1e-14);

  Mat g = random_matrix(4, 11);
  g = g * g.transpose() + 4.0 * Mat::Identity(4, 4);
  const GramForm form(g);
  const LinOperator op(random_matrix(4, 12));
  const LinOperator once = adjoint(op, form);
  const LinOperator twice = adjoint(once, form);
  CHECK(max_abs(twice.matrix - op.matrix) < 1e-12);

  // anti-homomorphism (AB)* = B* A*
  const LinOperator b(random_matrix(4, 13));
  const Mat ab_star = adjoint(LinOperator(Mat(op.matrix * b.matrix)), form).matrix;
  const Mat bstar_astar = adjoint(b, form).matrix * once.matrix;
  CHECK(max_abs(ab_star - bstar_astar) < 1e-10);
}

TEST_CASE("inv_sqrt_psd") {
  const GramForm euclid(Mat::Identity(2, 2));
  CHECK(max_abs(inv_sqrt_psd(LinOperator(Mat::Identity(2, 2)), euclid).matrix -
                Mat::Identity(2, 2)) < 1e-14);
  Mat four = 4.0 * Mat::Identity(1, 1);
  CHECK(inv_sqrt_psd(LinOperator(four), GramForm(Mat::Identity(1, 1))).matrix(0, 0) ==
        doctest::Approx(0.5));

  // T A T = id for a form-self-adjoint positive operator
  Mat g = random_matrix(5, 21);
  g = g * g.transpose() + 5.0 * Mat::Identity(5, 5);
  const GramForm form(g);
  Mat s = random_matrix(5, 22);
  s = s * s.transpose() + 5.0 * Mat::Identity(5, 5);
  const Mat a = g.llt().solve(s);  // G^{-1} S is G-self-adjoint, positive
  const LinOperator t = inv_sqrt_psd(LinOperator(a), form);
  CHECK(max_abs(t.matrix * a * t.matrix - Mat::Identity(5, 5)) < 1e-9);
  CHECK(max_abs(g * t.matrix - t.matrix.transpose() * g) < 1e-9);

  Mat neg = -Mat::Identity(2, 2);
  CHECK_THROWS_WITH_AS(inv_sqrt_psd(LinOperator(neg), euclid),
                       doctest::Contains("eigenvalue"), std::invalid_argument);
  CHECK_THROWS_AS(inv_sqrt_psd(LinOperator(random_matrix(3, 30)),
                               GramForm(Mat::Identity(3, 3))),
                  std::invalid_argument);
}

TEST_CASE("GramForm validation") {
  Mat bad = Mat::Identity(2, 2);
  bad(0, 1) = 0.5;  // asymmetric
  CHECK_THROWS_AS(GramForm(bad), std::invalid_argument);
  CHECK_THROWS_AS(GramForm(Mat(-Mat::Identity(2, 2))), std::invalid_argument);
}

TEST_CASE("flip permutation") {
  const Mat t = flip_permutation(2, 3);
  Vec v(6), w(6);
  for (int i = 0; i < 6; ++i) v(i) = i;
  w = t * v;
  // (i,j) -> (j,i): entry of v (x) w at (i*3+j) lands at (j*2+i)
  CHECK(w(0 * 2 + 0) == v(0 * 3 + 0));
  CHECK(w(2 * 2 + 1) == v(1 * 3 + 2));
  CHECK(max_abs(flip_permutation(3, 2) * t - Mat::Identity(6, 6)) == 0.0);
}

TEST_CASE("LinOperator and tolerance plumbing") {
  CHECK_THROWS_AS(LinOperator(Mat::Zero(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(LinOperator(Mat::Zero(4, 4), {2, 3}), std::invalid_argument);
  CHECK(default_tolerance() == kDefaultTol);
  CHECK_THROWS_AS(set_default_tolerance(0.0), std::invalid_argument);
}

TEST_CASE("principal angles") {
  Mat a = Mat::Zero(3, 1), b = Mat::Zero(3, 1);
  a(0, 0) = 1;
  b(1, 0) = 1;
  CHECK(principal_angles(a, a)[0] == doctest::Approx(0.0));
  CHECK(principal_angles(a, b)[0] == doctest::Approx(1.5707963268));
}
