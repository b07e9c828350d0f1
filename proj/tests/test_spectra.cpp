#include <doctest.h>

#include <cmath>
#include <random>

#include "latmat/error.hpp"
#include "latmat/spectra.hpp"
#include "oracles.hpp"

using namespace latmat;

TEST_CASE("2x2 spectrum matches the closed form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng), b = u(rng), d = u(rng);
    const auto s = eigen_symmetric(DenseMatrix{{a, b}, {b, d}});
    const auto [lo, hi] = oracle::eig2(a, b, d);
    CHECK(s.eigenvalues[0] == doctest::Approx(lo).epsilon(1e-12).scale(10));
    CHECK(s.eigenvalues[1] == doctest::Approx(hi).epsilon(1e-12).scale(10));
  }
}

TEST_CASE("golden ratio matrix") {
  const DenseMatrix m{{1, 1}, {1, 2}};
  CHECK(kappa(m) == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(spectral_radius(m) == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(7.0)));
  CHECK(spectral_norm(m) == doctest::Approx((3 + std::sqrt(5.0)) / 2));
  CHECK(determinant(m) == doctest::Approx(1.0));
  CHECK(is_positive_definite(m));
}

TEST_CASE("path graph Laplacian-like tridiagonal matrix") {
  // 2 on the diagonal, -1 off it: eigenvalues 2 - 2 cos(k pi / (n + 1)).
  const std::size_t n = 9;
  DenseMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = 2;
    if (i + 1 < n) t(i, i + 1) = t(i + 1, i) = -1;
  }
  const auto s = eigen_symmetric(t);
  const double pi = std::acos(-1.0);
  for (std::size_t k = 1; k <= n; ++k)
    CHECK(s.eigenvalues[k - 1] == doctest::Approx(2 - 2 * std::cos(k * pi / (n + 1))).epsilon(1e-12));
  CHECK(s.sweeps <= kMaxJacobiSweeps);
  CHECK(s.offdiag_residual <= 1e-12 * frobenius_norm(t));
}

TEST_CASE("indefinite and singular matrices") {
  const DenseMatrix m{{0, 1}, {1, 0}};
  CHECK(kappa(m) == doctest::Approx(1.0));
  CHECK_FALSE(is_positive_definite(m));
  CHECK(determinant(m) == doctest::Approx(-1.0));
  const DenseMatrix z{{1, 1}, {1, 1}};
  CHECK(kappa(z) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(determinant(z) == 0.0);
}

TEST_CASE("spectral norm of a rectangular matrix") {
  const DenseMatrix m{{3, 0, 0}, {0, 0, -4}};
  CHECK(spectral_norm(m) == doctest::Approx(4.0));
}

TEST_CASE("eigen_symmetric rejects bad input") {
  CHECK_THROWS_AS(eigen_symmetric(DenseMatrix(2, 3)), ValidationError);
  CHECK_THROWS_AS(eigen_symmetric(DenseMatrix{{1, 2}, {0, 1}}), ValidationError);
  CHECK_THROWS_AS(eigen_symmetric(DenseMatrix{{NAN, 0}, {0, 1}}), ValidationError);
  CHECK_THROWS_AS(eigen_symmetric(DenseMatrix(0, 0)), ValidationError);
}

TEST_CASE("trace and determinant are preserved") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::size_t n = 8;
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  const auto s = eigen_symmetric(a);
  double trace = 0, sum = 0, product = 1;
  for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
  for (double v : s.eigenvalues) {
    sum += v;
    product *= v;
  }
  CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
  CHECK(product == doctest::Approx(determinant(a)).epsilon(1e-10));
}
