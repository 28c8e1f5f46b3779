#include <cmath>

#include "centrobody/spectral.hpp"
#include "centrobody/special.hpp"
#include "doctest.h"

using namespace centrobody;
using special::kPi;

TEST_CASE("Fourier multiplier passes its validation") {
  const MultiplierValidation& v = validate_multiplier();
  CHECK(v.passed);
  CHECK(v.max_rel_error <= 1e-10);
  CHECK(v.max_inversion_error <= 1e-10);
  // lambda_m(q) lambda_m(n - q) = (2 pi)^n
  CHECK(ft_multiplier(4, 3.5, 4) * ft_multiplier(4, 0.5, 4) == doctest::Approx(std::pow(2 * kPi, 4)).epsilon(1e-12));
}

TEST_CASE("Funk-Hecke multipliers of |t|^p and ln|t| at degree 0") {
  for (int n = 2; n <= 5; ++n) {
    for (double p : {-0.9, -0.5, 0.5}) {
      // int_S |<theta, xi>|^p = 2 pi^{(n-1)/2} Gamma((p+1)/2) / Gamma((n+p)/2)
      const double exact = 2.0 * std::pow(kPi, 0.5 * (n - 1)) * special::gamma(0.5 * (p + 1)) / special::gamma(0.5 * (n + p));
      CHECK(funk_hecke_multipliers(n, p, 4)[0] == doctest::Approx(exact).epsilon(1e-12));
    }
    const double log_exact = special::sphere_area(n) * 0.5 * (special::digamma(0.5) - special::digamma(0.5 * n));
    CHECK(funk_hecke_multipliers(n, 0.0, 4)[0] == doctest::Approx(log_exact).epsilon(1e-11));
  }
}

TEST_CASE("Funk-Hecke multipliers against direct integration at degree 2") {
  // zonal Phat_2 about e_n, evaluated at xi = e_n: mu_2 Phat_2(1) = int k(t) Phat_2(t)
  const int n = 3;
  const ZonalSeries P2(n, {0.0, 0.0, 1.0});
  for (double p : {-0.5, 0.5}) {
    const double direct = special::sphere_area(n - 1) * singular_moment(p, n, [&](double t) { return P2(t); }, 64);
    CHECK(funk_hecke_multipliers(n, p, 4)[2] * P2(1.0) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("Gegenbauer expansion of a polynomial terminates") {
  const HarmonicSpectrum s = gegenbauer_expand([](double t) { return std::pow(t, 8); }, 4, unit_vector(4, 3), 20);
  for (int m = 10; m <= 20; ++m) CHECK(std::fabs(s.coeffs[m]) <= 1e-13);
  CHECK(s(0.7) == doctest::Approx(std::pow(0.7, 8)).epsilon(1e-12));
  CHECK_THROWS_AS(gegenbauer_expand([](double t) { return t; }, 4, unit_vector(4, 3), 10), std::invalid_argument);
}

TEST_CASE("embedding certificates") {
  const SphereRule r4 = sphere_rule(4, 20);
  SUBCASE("balls embed for every p") {
    for (double p : {-0.9, -0.5, 0.0, 0.5}) {
      const EmbeddingCertificate c = embed_certificate(StarBody::ball(4, 1.0), p, 20, r4);
      CHECK(c.verdict == Verdict::Embeds);
      CHECK(c.route == "analytic");
      CHECK(c.cross_check <= 1e-10);
    }
  }
  SUBCASE("the f_N body at N = 10 does not embed in L_{-1/2}") {
    // the negative region is |t| > 0.985, beyond the last degree-20 node
    const EmbeddingCertificate c = embed_certificate(StarBody::fn_body(10.0), -0.5, 60, sphere_rule(4, 40));
    CHECK(c.verdict == Verdict::Fails);
    CHECK(c.route == "gegenbauer");
    CHECK(std::fabs(c.witness[3]) > 0.9);
    CHECK(c.cross_check <= 1e-4);
  }
  SUBCASE("the f_N body at N = 0.1 embeds in L_{-1/2}") {
    CHECK(embed_certificate(StarBody::fn_body(0.1), -0.5, 60, r4).verdict == Verdict::Embeds);
  }
}

TEST_CASE("L_0 constant and normalization") {
  CHECK(l0_constant(StarBody::ball(2, 1.0), sphere_rule(2, 40)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(logft_normalization_residual(StarBody::ball(3, 1.0), sphere_rule(3, 40)) <= 1e-10);
  CHECK(logft_normalization_residual(StarBody::ellipsoid(3, {1, 1, 2}), sphere_rule(3, 40)) <= 1e-6);
}

TEST_CASE("transform of the norm to the power -n by two routes") {
  const FtNormMinusN f = ft_norm_minus_n(StarBody::ellipsoid(3, {1, 2, 3}), normalized(Vec{1, 1, 1}), sphere_rule(3, 40));
  CHECK(f.discrepancy <= 1e-8);
}

TEST_CASE("spherical Parseval identity") {
  const StarBody K = StarBody::fn_body(10.0), L = StarBody::ball(4, 1.0);
  for (double p : {-0.5, 0.5}) CHECK(parseval_check(K, L, p, sphere_rule(4, 40), 60).residual <= 1e-4);
}

TEST_CASE("zonal gauge route agrees with the sphere-rule engine") {
  const StarBody F = StarBody::fn_body(10.0);
  const SphereRule r = sphere_rule(4, 16);
  for (double p : {-0.5, 0.0, 0.5}) {
    const GaugeSamples a = gauge_samples(F, p, r), b = gauge_samples_zonal(F, p, r, 240);
    for (std::size_t i = 0; i < r.size(); i += 7) CHECK(b.values[i] == doctest::Approx(a.values[i]).epsilon(1e-7));
  }
}
