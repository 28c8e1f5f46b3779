#include <cmath>

#include "centrobody/bodies.hpp"
#include "centrobody/body_io.hpp"
#include "centrobody/gegenbauer.hpp"
#include "centrobody/sections.hpp"
#include "centrobody/special.hpp"
#include "doctest.h"

using namespace centrobody;
using special::kPi;

TEST_CASE("ball and ellipsoid radial functions and gauges") {
  const StarBody B = StarBody::ball(3, 2.0);
  CHECK(B.radial(normalized(Vec{1, 2, 3})) == doctest::Approx(2.0));
  CHECK(B.gauge(Vec{0, 0, 4}) == doctest::Approx(2.0));
  const StarBody E = StarBody::ellipsoid(3, {1, 2, 3});
  CHECK(E.radial(unit_vector(3, 1)) == doctest::Approx(2.0));
  CHECK(E.gauge(Vec{0.5, 1.0, 1.5}) == doctest::Approx(std::sqrt(0.75)));
  CHECK(*E.closed_form_volume() == doctest::Approx(4.0 * kPi / 3.0 * 6.0));
}

TEST_CASE("lq ball gauge") {
  const StarBody Q = StarBody::lq_ball(3, 4.0, 1.0);
  const Vec x{0.5, -0.5, 0.25};
  CHECK(Q.gauge(x) == doctest::Approx(std::pow(2 * std::pow(0.5, 4) + std::pow(0.25, 4), 0.25)).epsilon(1e-13));
}

TEST_CASE("f_N body boundary and volume") {
  const double N = 10.0;
  const StarBody F = StarBody::fn_body(N);
  const double a = fn_root(N);
  CHECK(1 - a * a - N * std::pow(a, 4) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(F.radial(unit_vector(4, 3)) == doctest::Approx(a).epsilon(1e-13));
  CHECK(F.radial(unit_vector(4, 0)) == doctest::Approx(1.0).epsilon(1e-13));
  // vol = int A(z) dz = (4 pi / 3)(2a - 2a^3/3 - 2 N a^5 / 5)
  const double vol = 4 * kPi / 3 * (2 * a - 2 * a * a * a / 3 - 2 * N * std::pow(a, 5) / 5);
  CHECK(volume(F) == doctest::Approx(vol).epsilon(1e-12));
  CHECK(volume(F, sphere_rule(4, 40)) == doctest::Approx(vol).epsilon(1e-10));
  CHECK(F.is_zonal());
}

TEST_CASE("dilation scales volume and keeps the shape") {
  const StarBody E = StarBody::ellipsoid(3, {1, 1.5, 0.7});
  const StarBody D = E.dilate(1.3);
  CHECK(volume(D) == doctest::Approx(std::pow(1.3, 3) * volume(E)).epsilon(1e-13));
  CHECK(D.radial(normalized(Vec{1, 1, 1})) == doctest::Approx(1.3 * E.radial(normalized(Vec{1, 1, 1}))));
}

TEST_CASE("quadrature volumes converge to closed forms") {
  CHECK(volume(StarBody::ball(5, 1.0), sphere_rule(5, 10)) == doctest::Approx(special::ball_volume(5)).epsilon(1e-13));
  CHECK(volume(StarBody::ellipsoid(3, {1, 2, 3}), sphere_rule(3, 80)) == doctest::Approx(8 * kPi).epsilon(1e-9));
}

TEST_CASE("invalid bodies are rejected") {
  CHECK_THROWS_AS(StarBody::ball(3, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(StarBody::ball(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StarBody::ellipsoid(3, {1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(StarBody::revolution(3, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(body_from_json_text("{\"dim\": 3}"), std::invalid_argument);
  CHECK_THROWS_AS(body_from_json_text("{\"dim\": 3, \"shape\": {\"type\": \"cube\"}}"), std::invalid_argument);
}

TEST_CASE("JSON round trip preserves bodies") {
  const StarBody bodies[] = {StarBody::ball(2, 1.5), StarBody::ellipsoid(4, {1, 2, 3, 4}), StarBody::lq_ball(3, 3.0, 1.2),
                             StarBody::fn_body(50.0).dilate(0.9)};
  for (const auto& K : bodies) {
    const StarBody R = body_from_json_text(body_to_json_text(K));
    const Vec th = normalized(Vec{0.3, -0.2, 0.7, 0.1, 0.0});
    Vec t{};
    for (int i = 0; i < K.dim(); ++i) t[i] = th[i];
    t = normalized(t);
    CHECK(R.dim() == K.dim());
    CHECK(R.radial(t) == doctest::Approx(K.radial(t)).epsilon(1e-15));
    CHECK(R.id() == K.id());
  }
}

TEST_CASE("perturbed bodies follow rho^e = c_base rho_base^e + c_g g") {
  const auto base = std::make_shared<const StarBody>(StarBody::ball(3, 1.0));
  const ZonalSeries g(3, {0.0, 0.0, 0.2});
  const StarBody P = StarBody::perturbed(base, 2.5, 1.0, 0.1, g);
  for (double t : {0.0, 0.3, 1.0})
    CHECK(std::pow(P.radial_zonal(t), 2.5) == doctest::Approx(1.0 + 0.1 * g(t)).epsilon(1e-13));
  const StarBody R = body_from_json_text(body_to_json_text(P));
  CHECK(R.radial_zonal(0.4) == doctest::Approx(P.radial_zonal(0.4)).epsilon(1e-15));
}

TEST_CASE("high-degree zonal series tables reproduce the recurrence") {
  std::vector<double> c(301, 0.0);
  for (int m = 0; m <= 300; m += 2) c[m] = 1.0 / (1.0 + m);
  const ZonalSeries s(4, c);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = -1.0 + i / 1000.0;
    worst = std::max(worst, std::fabs(s(t) - s.exact(t)));
    scale = std::max(scale, std::fabs(s.exact(t)));
  }
  CHECK(worst <= 1e-12 * scale);
}

TEST_CASE("orthonormal Gegenbauer basis is orthonormal on the sphere") {
  for (int n : {3, 4}) {
    const ZonalBasis basis(n, 8);
    for (int j : {0, 2, 4})
      for (int k : {0, 2, 4, 6}) {
        const ZonalSeries a(n, [&] { std::vector<double> v(j + 1, 0.0); v[j] = 1.0; return v; }());
        const ZonalSeries b(n, [&] { std::vector<double> v(k + 1, 0.0); v[k] = 1.0; return v; }());
        const double ip = integrate_zonal(n, 40, [&](double t) { return a(t) * b(t); });
        CHECK(ip == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-12));
      }
  }
}
