#include <cmath>
#include <string>

#include "centrobody/lab.hpp"
#include "centrobody/report.hpp"
#include "centrobody/sections.hpp"
#include "doctest.h"

using namespace centrobody;
using nlohmann::json;

TEST_CASE("configuration parsing") {
  const LabConfig d = config_from_json(json::object());
  CHECK(d.rule_degree == 40);
  CHECK(d.tol_rel == 1e-6);
  CHECK(d.max_harmonic_degree == 60);
  const LabConfig c = config_from_json(json::parse(
      R"({"p": -0.5, "dim": 4, "seed": 7, "bodies": [{"dim": 4, "shape": {"type": "ball", "radius": 2.0}}]})"));
  CHECK(c.p == -0.5);
  CHECK(c.seed == 7);
  REQUIRE(c.bodies.size() == 1);
  CHECK(c.bodies[0].radial(unit_vector(4, 0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"rule_degre": 3})")), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"p": 1.5})")), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"dim": "three"})")), std::invalid_argument);
  const LabConfig r = config_from_json(config_to_json(c));
  CHECK(r.p == c.p);
  CHECK(r.bodies.size() == 1);
}

TEST_CASE("report serialization is fixed-format and key-sorted") {
  const json j = {{"zeta", 1.0}, {"alpha", 0.1}, {"count", 3}, {"flag", true}, {"nan", std::nan("")}};
  const std::string s = report::dump(j);
  CHECK(s.find("\"alpha\": 1.000000000000e-01") < s.find("\"count\": 3"));
  CHECK(s.find("\"count\": 3") < s.find("\"zeta\": 1.000000000000e+00"));
  CHECK(s.find("\"nan\": null") != std::string::npos);
  CHECK(report::csv({"a", "b"}, {{1.0, -2.5}}) == "a,b\n1.000000000000e+00,-2.500000000000e+00\n");
}

TEST_CASE("volume estimates carry error bars") {
  const VolumeEstimate b = volume_estimate(StarBody::ball(3, 1.0), 40);
  CHECK(b.method == "closed-form");
  CHECK(b.value == doctest::Approx(4.0 * special::kPi / 3.0).epsilon(1e-14));
  const VolumeEstimate e = volume_estimate(StarBody::ellipsoid(3, {1, 2, 1.5}).dilate(1.2), 40);
  CHECK(e.method == "closed-form");
  CHECK(e.value == doctest::Approx(4.0 * special::kPi * std::pow(1.2, 3)).epsilon(1e-14));
  // a radial grid has no closed form and no axis
  const SphereRule r = sphere_rule(3, 20);
  std::vector<double> samples;
  for (const Vec& th : r.nodes) samples.push_back(StarBody::ellipsoid(3, {1, 1.2, 0.9}).radial(th));
  const VolumeEstimate g = volume_estimate(StarBody::radial_grid_nodes(3, r.nodes, samples, 20), 40);
  CHECK(g.method == "sphere-rule");
  CHECK(g.error >= 1e-14 * g.value);
  // perturbed body with the zero series: zonal route, same volume as the base
  const auto base = std::make_shared<const StarBody>(StarBody::revolution(3, {1.0, -0.5, -1.0}));
  const StarBody pert = StarBody::perturbed(base, 3.0, 1.0, 0.0, ZonalSeries(3, {0.0}));
  const VolumeEstimate z = volume_estimate(pert, 40);
  CHECK(z.method == "zonal");
  CHECK(z.error < 1e-10 * z.value);
  CHECK(z.value == doctest::Approx(*base->closed_form_volume()).epsilon(1e-10));
}

TEST_CASE("comparison of nested balls is consistent") {
  LabConfig cfg;
  const ComparisonReport r = run_comparison(StarBody::ball(2, 1.1), StarBody::ball(2, 1.0), 0.5, cfg);
  CHECK(r.inclusion_holds);
  CHECK(r.inclusion_route == "zonal");
  CHECK(r.vol_L.value <= r.vol_K.value);
  CHECK(r.verdict == "consistent");
  CHECK_FALSE(r.counterexample);
  const ComparisonReport swapped = run_comparison(StarBody::ball(2, 1.0), StarBody::ball(2, 1.1), 0.5, cfg);
  CHECK_FALSE(swapped.inclusion_holds);
  CHECK(swapped.verdict == "not-applicable");
  CHECK_THROWS_AS(run_comparison(StarBody::ball(2, 1.0), StarBody::ball(3, 1.0), 0.5, cfg), std::invalid_argument);
}

TEST_CASE("ellipsoid against a tightly scaled revolution body") {
  LabConfig cfg;
  const StarBody K = StarBody::ellipsoid(3, {1.0, 1.3, 0.8});
  const StarBody L0 = StarBody::revolution(3, {1.0, -0.5, -1.0});
  const SphereRule rule = sphere_rule(3, cfg.rule_degree);
  const GaugeSamples gK = gauge_samples(K, -0.5, rule), gL = gauge_samples(L0, -0.5, rule);
  double lam = HUGE_VAL;
  for (std::size_t i = 0; i < rule.size(); ++i) lam = std::min(lam, gK.values[i] / gL.values[i]);
  const ComparisonReport r = run_comparison(K, L0.dilate(lam * 0.9999), -0.5, cfg);
  CHECK(r.inclusion_holds);
  CHECK(r.embed_K.verdict == "embeds");
  CHECK(r.verdict == "consistent");
  CHECK(r.vol_L.value <= r.vol_K.value * (1 + 1e-6));
}

TEST_CASE("reports are byte-stable") {
  LabConfig cfg;
  const StarBody K = StarBody::ellipsoid(2, {1.0, 1.5}), L = StarBody::ball(2, 0.9);
  const std::string a = report::dump(to_json(run_comparison(K, L, -0.5, cfg)));
  const std::string b = report::dump(to_json(run_comparison(K, L, -0.5, cfg)));
  CHECK(a == b);
  CHECK(a.find("\"provenance\"") != std::string::npos);
}

TEST_CASE("normalized sections probe") {
  const SphereRule r = sphere_rule(3, 12);
  const StarBody E = StarBody::ellipsoid(3, {1.0, 1.2, 0.9});
  const BpReport same = bp_normalized_sections(E, E, r);
  CHECK(same.hypothesis_holds);
  CHECK(same.min_gap == doctest::Approx(0.0).scale(1.0));
  CHECK(same.volume_ordered);
  const BpReport nested = bp_normalized_sections(StarBody::ball(3, 1.2), StarBody::ball(3, 1.0), r);
  CHECK(nested.hypothesis_holds);
  CHECK(nested.volume_ordered);
}

TEST_CASE("normalized sections: hypothesis-satisfying ellipsoid pairs are volume-ordered") {
  const CounterRng rng(11);
  const SphereRule r = sphere_rule(3, 16);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const StarBody K = random_bodies::ellipsoid(3, rng, 2 * s);
    StarBody L = random_bodies::ellipsoid(3, rng, 2 * s + 1);
    double ratio = HUGE_VAL;
    const double vk = volume(K), vl = volume(L);
    for (const auto& th : r.nodes)
      ratio = std::min(ratio, (section_function(L, th, 0.0) / vl) / (section_function(K, th, 0.0) / vk));
    L = L.dilate(ratio * (1 - 1e-6));
    const BpReport b = bp_normalized_sections(K, L, r);
    REQUIRE(b.hypothesis_holds);
    CHECK(b.volume_ordered);
  }
}

TEST_CASE("random body generators are deterministic and valid") {
  const CounterRng rng(3);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const StarBody a = random_bodies::any(3, rng, s), b = random_bodies::any(3, rng, s);
    const Vec th = normalized(Vec{0.3, 0.4, 0.5});
    CHECK(a.radial(th) == b.radial(th));
    CHECK(a.radial(th) > 0.0);
  }
  for (std::uint64_t s = 0; s < 10; ++s) CHECK(convexity_probe(random_bodies::revolution(3, rng, s), 512).passed);
  const StarBody e = random_bodies::ellipsoid(4, rng, 5);
  for (int i = 0; i < 4; ++i) {
    CHECK(e.radial(unit_vector(4, i)) >= 0.5);
    CHECK(e.radial(unit_vector(4, i)) <= 2.0);
  }
}

TEST_CASE("counterexample reproduction refuses embedding bodies") {
  LabConfig cfg;
  CHECK_THROWS_AS(reproduce_p_counterexample(-0.5, 0.1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(reproduce_p_counterexample(0.1, 10.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(reproduce_log_counterexample(4, 0.5, cfg), std::invalid_argument);
}
