#include <cmath>

#include "centrobody/counterexample.hpp"
#include "doctest.h"

using namespace centrobody;

TEST_CASE("bump profiles") {
  BumpSpec power;
  power.profile = "power";
  power.power = 3;
  power.amplitude = 2.0;
  CHECK(bump_value(power, 0.5) == doctest::Approx(-2.0 * std::pow(0.25, 3)));
  CHECK(bump_value(power, -1.0) == doctest::Approx(-2.0));
  BumpSpec plateau;
  plateau.profile = "plateau";
  plateau.center = 1.0;
  plateau.width = 0.3;
  CHECK(bump_value(plateau, 1.0) == doctest::Approx(-1.0));
  CHECK(bump_value(plateau, std::cos(0.31)) == 0.0);
  CHECK(bump_value(plateau, std::cos(0.1)) < 0.0);
}

TEST_CASE("convexity probe") {
  CHECK(convexity_probe(StarBody::ball(3, 1.0), 512).passed);
  CHECK(convexity_probe(StarBody::ellipsoid(3, {1, 2, 0.5}), 512).passed);
  CHECK(convexity_probe(StarBody::fn_body(10.0), 1024).passed);
  CHECK(convexity_probe(StarBody::lq_ball(3, 4.0, 1.0), 512).passed);
  CHECK_FALSE(convexity_probe(StarBody::lq_ball(3, 0.5, 1.0), 512).passed);
  // P(z) = 1 + 2 z^2 - 4 z^4: the meridian P^{1/3} bulges, so the body has a dent at the equator
  CHECK_FALSE(convexity_probe(StarBody::revolution(3, {1.0, 2.0, -4.0}), 1024).passed);
}

TEST_CASE("builders refuse bodies that embed") {
  CHECK_THROWS_AS(build_counterexample_p(StarBody::fn_body(0.1), -0.5, BumpSpec{}, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(build_counterexample_p(StarBody::ball(4, 1.0), 0.5, BumpSpec{}, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(build_counterexample_p(StarBody::fn_body(10.0), 0.0, BumpSpec{}, std::nullopt), std::invalid_argument);
}

TEST_CASE("p counterexample for p > 0 in R^3") {
  const StarBody L = StarBody::revolution(3, {1.0, -1.0, -10.0});
  const CounterexampleResult R = build_counterexample_p(L, 0.9, BumpSpec{}, std::nullopt);
  const auto& c = R.cert;
  CHECK(c.convexity.passed);
  CHECK(c.min_rho > 0.0);
  CHECK(c.pairing > 0.0);
  CHECK(c.bump.power > 0);
  CHECK(c.vol_K < c.vol_L);
  // v has an exact finite spectrum: degree 2 power
  CHECK(c.v.max_degree == 2 * c.bump.power);
  for (double t : {0.0, 0.5, 0.99}) CHECK(c.v(t) == doctest::Approx(bump_value(c.bump, t)).epsilon(1e-9).scale(1.0));
  const InclusionResult inc = check_inclusion_zonal(R.K, L, 0.9, sphere_rule(3, 40), 4 * c.bump.power + 40);
  CHECK(inc.holds);
  CHECK(inc.margin > 3.0 * inc.error_estimate);
}
