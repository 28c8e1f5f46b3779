#include <cmath>
#include <memory>

#include "centrobody/sections.hpp"
#include "centrobody/special.hpp"
#include "doctest.h"

using namespace centrobody;
using special::kPi;

TEST_CASE("section functions of balls and the f_N body") {
  const StarBody B = StarBody::ball(3, 1.0);
  for (double z : {0.0, 0.3, 0.9}) CHECK(section_function(B, unit_vector(3, 0), z) == doctest::Approx(kPi * (1 - z * z)).epsilon(1e-12));
  CHECK(section_function(B, unit_vector(3, 0), 1.2) == 0.0);
  const StarBody F = StarBody::fn_body(10.0);
  for (double z : {0.0, 0.2, 0.45})
    CHECK(section_function(F, unit_vector(4, 3), z) == doctest::Approx(4 * kPi / 3 * (1 - z * z - 10 * std::pow(z, 4))).epsilon(1e-12));
}

TEST_CASE("support function of the ellipsoid") {
  const StarBody E = StarBody::ellipsoid(3, {1, 2, 3});
  const Vec xi = normalized(Vec{1, 1, 1});
  CHECK(support(E, xi).h == doctest::Approx(std::sqrt((1.0 + 4.0 + 9.0) / 3.0)).epsilon(1e-10));
}

TEST_CASE("fractional derivative of the ball section at a negative order") {
  // q = -3/2: (1/(2 Gamma(3/2))) 2 int_0^1 z^{1/2} pi (1 - z^2) dz
  const auto B = std::make_shared<const StarBody>(StarBody::ball(3, 1.0));
  const SectionProfile A(B, unit_vector(3, 2));
  const double exact = 1.0 / (2.0 * special::gamma(1.5)) * 2.0 * kPi * (2.0 / 3.0 - 2.0 / 7.0);
  CHECK(frac_derivative_at_zero(A, -1.5) == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("section route for the transform of the ball norm") {
  // (|x|^p)^ = 2^{n+p} pi^{n/2} Gamma((n+p)/2) / Gamma(-p/2) on the unit sphere
  for (int n : {3, 4})
    for (double p : {-0.5, 0.5}) {
      const auto B = std::make_shared<const StarBody>(StarBody::ball(n, 1.0));
      const SectionProfile A(B, unit_vector(n, 0));
      const double exact = std::pow(2.0, n + p) * std::pow(kPi, 0.5 * n) * special::gamma(0.5 * (n + p)) / special::gamma(-0.5 * p);
      CHECK(ft_power_from_sections(A, p) == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("two routes for the transform agree") {
  const StarBody E = StarBody::ellipsoid(3, {1, 1, 2});
  for (double p : {-0.5, 0.5}) CHECK(ft_norm_power(E, normalized(Vec{1, 0, 1}), p, sphere_rule(3, 40)).discrepancy <= 1e-6);
}

TEST_CASE("f_N regularized integral matches the corrected closed form") {
  for (double N : {1.0, 10.0})
    for (double p : {-0.9, -0.5}) {
      const CounterexampleIntegral c = counterexample_integral(N, p);
      CHECK(c.numeric == doctest::Approx(c.closed_form).epsilon(1e-9));
      CHECK(c.a_N == doctest::Approx(fn_root(N)));
    }
  CHECK(counterexample_integral(10.0, -0.5).numeric == doctest::Approx(-7.44663).epsilon(1e-5));
  CHECK(fn_integral_closed_form(0.1, -0.5) > 0.0);
}

TEST_CASE("log coefficient and the log closed form") {
  CHECK(log_coefficient_even(4) == -12.0);
  CHECK(log_coefficient_even(2) == 2.0);
  const double a = fn_root(50.0);
  CHECK(fn_log_integral_closed_form(50.0) == doctest::Approx(4 * kPi / 3 * (-50 * a + 1 / a - 1 / (3 * a * a * a))));
}

TEST_CASE("sign threshold bisection") {
  const double r = sign_threshold([](double x) { return x * x - 2.0; }, 0.0, 3.0, 1e-10);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK_THROWS_AS(sign_threshold([](double x) { return x * x + 1.0; }, 0.0, 3.0), std::invalid_argument);
}
