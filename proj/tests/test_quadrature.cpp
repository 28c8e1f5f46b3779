#include <cmath>

#include "centrobody/bodies.hpp"
#include "centrobody/quadrature.hpp"
#include "centrobody/special.hpp"
#include "doctest.h"

using namespace centrobody;
using special::kPi;

TEST_CASE("special functions against known values") {
  CHECK(special::gamma(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(special::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(special::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
  CHECK(special::digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-14));
  CHECK(special::digamma(0.5) == doctest::Approx(-0.57721566490153286 - 2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(special::sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(special::sphere_area(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  CHECK(special::beta(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Legendre is exact for polynomials up to degree 2n-1") {
  const Rule1D r = gauss_legendre(10);
  for (int k = 0; k <= 19; ++k) {
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(r.apply([&](double x) { return std::pow(x, k); }) == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("Gauss-Jacobi weights integrate the weight function") {
  for (double a : {-0.5, 0.0, 0.5, 1.7})
    for (double b : {-0.9, 0.0, 2.0}) {
      const Rule1D r = gauss_jacobi(30, a, b);
      const double mass = std::pow(2.0, a + b + 1) * special::beta(a + 1, b + 1);
      CHECK(r.apply([](double) { return 1.0; }) == doctest::Approx(mass).epsilon(1e-12));
      // int (1-x)^a (1+x)^b x dx = mass (b - a) / (a + b + 2)
      CHECK(r.apply([](double x) { return x; }) == doctest::Approx(mass * (b - a) / (a + b + 2)).epsilon(1e-11));
    }
}

TEST_CASE("large Gauss-Jacobi rules keep their mass") {
  const Rule1D r = gauss_jacobi(2000, 0.5, 0.5);
  CHECK(r.apply([](double) { return 1.0; }) == doctest::Approx(kPi / 2.0).epsilon(1e-11));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  const Rule1D r = tanh_sinh(0.0, 1.0);
  CHECK(r.apply([](double x) { return std::log(x); }) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.apply([](double x) { return 1.0 / std::sqrt(x); }) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("sphere rules integrate constants and low moments") {
  for (int n = 2; n <= 5; ++n) {
    const SphereRule r = sphere_rule(n, 12);
    const double area = special::sphere_area(n);
    CHECK(integrate_sphere(r, [](const Vec&) { return 1.0; }) == doctest::Approx(area).epsilon(1e-13));
    CHECK(integrate_sphere(r, [](const Vec& x) { return x[0] * x[0]; }) == doctest::Approx(area / n).epsilon(1e-13));
    // int x1^4 = 3 area / (n (n + 2))
    CHECK(integrate_sphere(r, [](const Vec& x) { return std::pow(x[0], 4); }) ==
          doctest::Approx(3.0 * area / (n * (n + 2))).epsilon(1e-12));
    CHECK(integrate_sphere(r, [](const Vec& x) { return x[0] * x[1]; }) == doctest::Approx(0.0));
  }
}

TEST_CASE("sphere rules reject invalid requests") {
  CHECK_THROWS_AS(sphere_rule(1, 10), std::invalid_argument);
  CHECK_THROWS_AS(sphere_rule(3, -1), std::invalid_argument);
}

TEST_CASE("singular moments match the Beta-function closed form") {
  // int_{-1}^1 |t|^p (1-t^2)^{(n-3)/2} dt = B((p+1)/2, (n-1)/2)
  for (int n = 2; n <= 5; ++n)
    for (double p : {-0.9, -0.5, 0.5}) {
      const double exact = special::beta(0.5 * (p + 1), 0.5 * (n - 1));
      CHECK(singular_moment(p, n, [](double) { return 1.0; }) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("counter-based RNG is deterministic and uniform") {
  const CounterRng a(42), b(42), c(43);
  CHECK(a.bits(7) == b.bits(7));
  CHECK(a.bits(7) != c.bits(7));
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) mean += a.uniform(i);
  mean /= 100000;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  const Vec d = random_direction(a, 4, 3);
  CHECK(norm(d) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Monte Carlo body integral agrees with the closed-form volume") {
  const StarBody B = StarBody::ball(3, 1.0);
  const McEstimate m = mc_body_integral(B, [](const Vec&) { return 1.0; }, 20000, 5);
  CHECK(std::fabs(m.estimate - 4.0 * kPi / 3.0) <= 4.0 * m.std_error + 1e-11);
  const McEstimate m2 = mc_body_integral(B, [](const Vec& x) { return x[0] * x[0]; }, 200000, 9);
  CHECK(std::fabs(m2.estimate - 4.0 * kPi / 15.0) <= 4.0 * m2.std_error);
  const McEstimate again = mc_body_integral(B, [](const Vec& x) { return x[0] * x[0]; }, 200000, 9);
  CHECK(again.estimate == m2.estimate);
}
