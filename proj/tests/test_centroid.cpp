#include <cmath>

#include "centrobody/centroid.hpp"
#include "centrobody/special.hpp"
#include "doctest.h"

using namespace centrobody;

TEST_CASE("polar centroid gauges of the 3-ball have closed forms") {
  const StarBody B = StarBody::ball(3, 1.0);
  const SphereRule r = sphere_rule(3, 40);
  // (1/vol) int_B |x_3|^{1/2} = 4/7, so the gauge is (4/7)^2 and the radius 49/16
  CHECK(normalized_moment(B, unit_vector(3, 2), 0.5, r) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(1.0 / gauge_polar_centroid(B, unit_vector(3, 0), 0.5, r) == doctest::Approx(3.0625).epsilon(1e-12));
  // mean of ln|x_3| over the ball is -4/3
  CHECK(mean_log(B, unit_vector(3, 1), r) == doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
  CHECK(1.0 / gauge_polar_centroid(B, unit_vector(3, 2), 0.0, r) == doctest::Approx(std::exp(4.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("negative-order moments of the ball") {
  // n = 3, p = -1/2: (3/2) int_0^1 x^{-1/2}(1 - x^2) dx = (3/2)(2 - 2/5) = 12/5
  const StarBody B = StarBody::ball(3, 1.0);
  CHECK(normalized_moment(B, normalized(Vec{1, 1, 1}), -0.5, sphere_rule(3, 40)) == doctest::Approx(2.4).epsilon(1e-10));
}

TEST_CASE("gauges are 1-homogeneous in the body") {
  const StarBody E = StarBody::ellipsoid(3, {1, 2, 1.5});
  const SphereRule r = sphere_rule(3, 24);
  const Vec xi = normalized(Vec{0.2, 0.5, -0.4});
  for (double p : {-0.5, 0.0, 0.5})
    CHECK(gauge_polar_centroid(E.dilate(2.0), xi, p, r) == doctest::Approx(2.0 * gauge_polar_centroid(E, xi, p, r)).epsilon(1e-12));
}

TEST_CASE("ellipsoid polar centroid bodies are linear images") {
  // Gamma*_p(AB) has gauge |A xi| times the ball gauge
  const StarBody B = StarBody::ball(3, 1.0), E = StarBody::ellipsoid(3, {1, 2, 3});
  const SphereRule r = sphere_rule(3, 60);
  const Vec xi = normalized(Vec{1, 1, 1});
  const double ax = std::sqrt((1.0 + 4.0 + 9.0) / 3.0);
  for (double p : {-0.5, 0.5}) CHECK(gauge_polar_centroid(E, xi, p, r) == doctest::Approx(ax * gauge_polar_centroid(B, xi, p, r)).epsilon(1e-8));
}

TEST_CASE("moment identity holds for the ball and the f_N body") {
  for (int n = 2; n <= 4; ++n)
    for (double p : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
      CHECK(moment_identity_residual(StarBody::ball(n, 1.0), p, sphere_rule(n, 40)) <= 1e-12);
      CHECK(moment_identity_residual(StarBody::fn_body(10.0, n), p, sphere_rule(n, 40)) <= 1e-8);
    }
}

TEST_CASE("inclusion of nested balls") {
  const StarBody K = StarBody::ball(2, 1.1), L = StarBody::ball(2, 1.0);
  const InclusionResult r = check_inclusion(K, L, 0.5, sphere_rule(2, 20));
  CHECK(r.holds);
  CHECK(r.margin > 0.0);
  CHECK(r.margin > 3.0 * r.error_estimate);
  CHECK_FALSE(check_inclusion(L, K, 0.5, sphere_rule(2, 20)).holds);
}

TEST_CASE("Milman-Pajor bounds: equality for K = L, inequality otherwise") {
  const StarBody K = StarBody::ellipsoid(3, {1, 1.4, 0.8}), L = StarBody::lq_ball(3, 3.0, 1.0);
  const SphereRule r = sphere_rule(3, 30);
  for (double p : {-0.5, 0.0, 0.5}) {
    const MpBound e = mp_bound_check(K, K, p, r);
    CHECK(e.lhs == doctest::Approx(e.rhs).epsilon(1e-9));
    CHECK(mp_bound_check(K, L, p, r).satisfied);
    CHECK(mp_bound_check(L, K, p, r).satisfied);
  }
}

TEST_CASE("invalid p is rejected") {
  const StarBody B = StarBody::ball(3, 1.0);
  CHECK_THROWS_AS(normalized_moment(B, unit_vector(3, 0), -1.0, sphere_rule(3, 8)), std::invalid_argument);
  CHECK_THROWS_AS(normalized_moment(B, unit_vector(3, 0), 1.0, sphere_rule(3, 8)), std::invalid_argument);
}
