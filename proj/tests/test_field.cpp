#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "smcf/errors.hpp"
#include "smcf/field.hpp"

using namespace smcf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid coordinates and periodic wrap") {
  const GridSpec g(16);
  CHECK(g.h() == 1.0 / 16);
  CHECK(g.size() == 256);
  CHECK(g.wrap(-1) == 15);
  CHECK(g.wrap(16) == 0);
  CHECK(g.wrap(-17) == 15);
  CHECK_THROWS(GridSpec(0));
}

TEST_CASE("from_function samples row-major at (i h, j h)") {
  const GridSpec g(8);
  const auto u = ScalarField::from_function(g, [](double x, double y) { return 10 * x + y; });
  CHECK(u(3, 5) == doctest::Approx(10 * 3.0 / 8 + 5.0 / 8));
  CHECK(u[3 * 8 + 5] == u(3, 5));
  CHECK(u(-1, 0) == u(7, 0));
}

TEST_CASE("trapezoid quadrature is exact for resolved trigonometric polynomials") {
  const GridSpec g(16);
  const auto c = ScalarField::from_function(g, [](double x, double) { return std::cos(2 * kPi * x); });
  const auto s = ScalarField::from_function(g, [](double, double y) { return std::sin(6 * kPi * y); });
  CHECK(integrate(ScalarField(g, 3.0)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(std::abs(integrate(c)) < 1e-15);
  CHECK(inner(c, c) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(inner(c, s)) < 1e-15);
  CHECK(l2_norm_sq(s) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("pairwise summation tracks a compensated oracle") {
  std::vector<double> xs(1'000'003);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.1 + 1e-9 * static_cast<double>(i % 7);
  // Neumaier summation as the reference.
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  const double ref = sum + comp;
  CHECK(std::abs(pairwise_sum(xs) - ref) <= 1e-12 * ref);
  CHECK(pairwise_sum({}) == 0.0);
}

TEST_CASE("field arithmetic and norms") {
  const GridSpec g(8);
  ScalarField a(g, 2.0), b(g, 0.5);
  CHECK((a + b)[0] == 2.5);
  CHECK((a - b)[7] == 1.5);
  CHECK((3.0 * b)[9] == 1.5);
  CHECK(hadamard(a, b)[4] == 1.0);
  b(2, 3) = -4.0;
  CHECK(linf_norm(b) == 4.0);
  CHECK_THROWS_AS(a += ScalarField(GridSpec(16)), std::invalid_argument);
}

TEST_CASE("restriction picks coincident samples bit for bit") {
  const auto f = [](double x, double y) { return std::exp(std::sin(2 * kPi * x)) * std::cos(2 * kPi * y); };
  const auto fine = ScalarField::from_function(GridSpec(32), f);
  const auto coarse = ScalarField::from_function(GridSpec(8), f);
  CHECK(restrict_to(fine, GridSpec(8)) == coarse);
  CHECK_THROWS(restrict_to(fine, GridSpec(12)));
}

TEST_CASE("non-finite samples are located and rejected") {
  ScalarField u(GridSpec(8), 1.0);
  CHECK_FALSE(first_non_finite(u).has_value());
  CHECK_NOTHROW(require_finite(u, "u"));
  u(1, 2) = std::numeric_limits<double>::quiet_NaN();
  REQUIRE(first_non_finite(u).has_value());
  CHECK(*first_non_finite(u) == 10);
  CHECK_THROWS_AS(require_finite(u, "u"), NonFiniteError);
}
