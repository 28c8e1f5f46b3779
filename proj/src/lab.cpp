#include "centrobody/lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "centrobody/body_io.hpp"
#include "centrobody/parallel.hpp"
#include "centrobody/sections.hpp"
#include "centrobody/special.hpp"

namespace centrobody {

using nlohmann::json;

#ifndef CENTROBODY_VERSION
#define CENTROBODY_VERSION "0.0.0"
#endif

std::string build_id() { return std::string("centrobody ") + CENTROBODY_VERSION + " (g++ " + __VERSION__ + ")"; }

// ---------------------------------------------------------------------------
// Configuration

LabConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  static const char* known[] = {"p", "dim", "rule_degree", "max_harmonic_degree", "mc_samples", "seed", "tol_rel", "bodies"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }) == std::end(known))
      throw std::invalid_argument("config: unknown key '" + it.key() + "'");
  LabConfig c;
  try {
    c.p = j.value("p", c.p);
    c.dim = j.value("dim", c.dim);
    c.rule_degree = j.value("rule_degree", c.rule_degree);
    c.max_harmonic_degree = j.value("max_harmonic_degree", c.max_harmonic_degree);
    c.mc_samples = j.value("mc_samples", c.mc_samples);
    c.seed = j.value("seed", c.seed);
    c.tol_rel = j.value("tol_rel", c.tol_rel);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!(c.p > -1.0 && c.p < 1.0)) throw std::invalid_argument("config: p must lie in (-1, 1)");
  if (c.dim < 2 || c.dim > kMaxDim) throw std::invalid_argument("config: dim must be in [2, 5]");
  if (c.rule_degree < 4 || c.rule_degree > 400) throw std::invalid_argument("config: rule_degree must be in [4, 400]");
  if (c.max_harmonic_degree < 2 || c.max_harmonic_degree > 2000)
    throw std::invalid_argument("config: max_harmonic_degree must be in [2, 2000]");
  if (c.mc_samples < 1) throw std::invalid_argument("config: mc_samples must be positive");
  if (!(c.tol_rel > 0.0)) throw std::invalid_argument("config: tol_rel must be positive");
  if (j.contains("bodies")) {
    if (!j["bodies"].is_array()) throw std::invalid_argument("config: bodies must be an array");
    for (const auto& b : j["bodies"]) c.bodies.push_back(body_from_json_text(b.dump()));
  }
  c.build_id = build_id();
  return c;
}

LabConfig config_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: " + std::string(e.what()));
  }
  return config_from_json(j);
}

json config_to_json(const LabConfig& c) {
  json j;
  j["p"] = c.p;
  j["dim"] = c.dim;
  j["rule_degree"] = c.rule_degree;
  j["max_harmonic_degree"] = c.max_harmonic_degree;
  j["mc_samples"] = c.mc_samples;
  j["seed"] = c.seed;
  j["tol_rel"] = c.tol_rel;
  j["bodies"] = json::array();
  for (const auto& b : c.bodies) j["bodies"].push_back(json::parse(body_to_json_text(b)));
  return j;
}

// ---------------------------------------------------------------------------
// Volumes

namespace {

int series_degree(const StarBody& K) {
  if (const auto* pb = std::get_if<shape::Perturbed>(&K.shape()))
    return std::max(static_cast<int>(pb->g.coeffs().size()) - 1, series_degree(*pb->base));
  return 0;
}

bool common_axis(const StarBody& K, const StarBody& L) {
  const auto a = K.zonal_axis(), b = L.zonal_axis();
  return a && b && std::fabs(std::fabs(dot(*a, *b)) - 1.0) < 1e-12;
}

}  // namespace

int zonal_gauge_degree(const StarBody& K, int harmonic_degree) {
  int M = std::max(2 * harmonic_degree, 2 * series_degree(K) + 40);
  return M + (M % 2);
}

VolumeEstimate volume_estimate(const StarBody& K, int rule_degree, int harmonic_degree) {
  VolumeEstimate v;
  const int n = K.dim();
  if (auto cf = K.closed_form_volume()) {
    v.value = *cf;
    v.error = 1e-14 * *cf;
    v.method = "closed-form";
    return v;
  }
  auto rho_n = [&](double t) { return std::pow(K.radial_zonal(t), n); };
  if (K.is_zonal()) {
    const int c = std::max({zonal_node_count(rule_degree), 2 * harmonic_degree + 64, 2 * series_degree(K) + 64, 800});
    const double coarse = integrate_zonal(n, c, rho_n) / n;
    v.value = integrate_zonal(n, c + c / 2, rho_n) / n;
    v.error = std::max(std::fabs(v.value - coarse), 1e-14 * v.value);
    v.method = "zonal";
    return v;
  }
  const double coarse = volume(K, sphere_rule(n, rule_degree));
  v.value = volume(K, sphere_rule(n, rule_degree + rule_degree / 2));
  v.error = std::max(std::fabs(v.value - coarse), 1e-14 * v.value);
  v.method = "sphere-rule";
  return v;
}

EmbedSummary summarize(const EmbeddingCertificate& c) {
  EmbedSummary s;
  s.verdict = to_string(c.verdict);
  s.route = c.route;
  s.min_value = c.min_value;
  s.scale = c.scale;
  s.witness = c.witness;
  s.max_degree = c.max_degree;
  return s;
}

// ---------------------------------------------------------------------------
// Comparison pipeline

ComparisonReport run_comparison(const StarBody& K, const StarBody& L, double p, const LabConfig& cfg, bool certify_L) {
  if (K.dim() != L.dim()) throw std::invalid_argument("compare: K and L have different dimensions");
  if (!(p > -1.0 && p < 1.0)) throw std::invalid_argument("compare: p must lie in (-1, 1)");
  const int n = K.dim();
  ComparisonReport r;
  r.p = p;
  r.dim = n;
  r.id_K = K.id();
  r.id_L = L.id();
  r.rule_degree = cfg.rule_degree;
  r.seed = cfg.seed;
  r.tol_rel = cfg.tol_rel;
  r.build = cfg.build_id.empty() ? build_id() : cfg.build_id;
  const SphereRule rule = sphere_rule(n, cfg.rule_degree);
  r.rule_nodes = rule.size();

  InclusionResult inc;
  if (common_axis(K, L)) {
    r.inclusion_route = "zonal";
    const int M = std::max(zonal_gauge_degree(K, cfg.max_harmonic_degree), zonal_gauge_degree(L, cfg.max_harmonic_degree));
    inc = check_inclusion_zonal(K, L, p, rule, M);
  } else {
    r.inclusion_route = "sphere-rule";
    inc = check_inclusion(K, L, p, rule, true);
  }
  r.inclusion_holds = inc.holds;
  r.inclusion_margin = inc.margin;
  r.inclusion_error = inc.error_estimate;
  r.worst_direction = inc.worst_direction;

  r.vol_K = volume_estimate(K, cfg.rule_degree, cfg.max_harmonic_degree);
  r.vol_L = volume_estimate(L, cfg.rule_degree, cfg.max_harmonic_degree);
  r.embed_K = summarize(embed_certificate(K, p, cfg.max_harmonic_degree, rule));
  if (certify_L) r.embed_L = summarize(embed_certificate(L, p, cfg.max_harmonic_degree, rule));

  const double gap = r.vol_L.value - r.vol_K.value;
  const double gap_err = r.vol_K.error + r.vol_L.error;
  const bool strict_inclusion = inc.holds && inc.margin > 3.0 * inc.error_estimate;
  const bool clear_non_inclusion = inc.margin < -3.0 * inc.error_estimate;
  const bool strict_gap = gap > 3.0 * gap_err;
  const bool ordered = r.vol_L.value <= r.vol_K.value * (1.0 + cfg.tol_rel) + 3.0 * gap_err;
  r.counterexample = strict_inclusion && strict_gap;

  if (r.embed_K.verdict == to_string(Verdict::Fails)) {
    r.verdict = "not-applicable";
    r.notes.push_back("K does not embed");
  } else if (r.embed_K.verdict == to_string(Verdict::Inconclusive)) {
    r.verdict = "inconclusive";
    r.notes.push_back("embedding certificate of K is inside the tolerance band");
  } else if (clear_non_inclusion) {
    r.verdict = "not-applicable";
    r.notes.push_back("inclusion fails beyond its error estimate");
  } else if (ordered) {
    r.verdict = "consistent";
    if (!strict_inclusion) r.notes.push_back("inclusion margin within 3 error estimates");
  } else if (strict_inclusion && strict_gap) {
    r.verdict = "violated";
  } else {
    r.verdict = "inconclusive";
    r.notes.push_back("volume order or inclusion not resolved beyond 3 error estimates");
  }
  if (r.counterexample) r.notes.push_back("counterexample: inclusion holds and vol(L) > vol(K) beyond error bars");
  return r;
}

// ---------------------------------------------------------------------------
// Counterexample bundles

namespace {

BuildOptions build_options(const LabConfig& cfg) {
  BuildOptions o;
  o.rule_degree = cfg.rule_degree;
  o.density_degree = cfg.max_harmonic_degree;
  return o;
}

void audit(CounterexampleBundle& b) {
  const auto& c = b.certificate;
  const auto& r = b.report;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) b.failures.push_back(what);
  };
  need(c.min_rho > 0.0, "positivity: min radial value of K is not positive");
  need(c.convexity.passed, "convexity probe failed");
  need(b.L_certificate.verdict == to_string(Verdict::Fails), "L is not certified as non-embedding");
  need(r.inclusion_holds, "inclusion fails at some node");
  need(r.inclusion_margin > 3.0 * r.inclusion_error, "inclusion margin does not exceed 3 error estimates");
  need(r.vol_L.value - r.vol_K.value > 3.0 * (r.vol_K.error + r.vol_L.error),
       "vol(L) - vol(K) does not exceed 3 combined volume errors");
  b.success = b.failures.empty();
}

CounterexampleBundle bundle_for(const StarBody& L, double p, const LabConfig& cfg, CounterexampleResult R) {
  CounterexampleBundle b{L, R.K, R.cert, {}, {}, false, {}};
  b.report = run_comparison(R.K, L, p, cfg, true);
  b.L_certificate = *b.report.embed_L;
  audit(b);
  return b;
}

void require_non_embedding(const StarBody& L, double p, const LabConfig& cfg) {
  const EmbeddingCertificate c = embed_certificate(L, p, cfg.max_harmonic_degree, sphere_rule(L.dim(), cfg.rule_degree));
  if (c.verdict != Verdict::Fails) {
    std::ostringstream os;
    os << "L (" << L.id() << ") is not certified as non-embedding at p = " << p << ": verdict " << to_string(c.verdict)
       << ", min density " << c.min_value;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

CounterexampleBundle reproduce_p_counterexample(double p, double N, const LabConfig& cfg,
                                                std::optional<StarBody> candidate) {
  if (!(p > -1.0 && p < 1.0) || p == 0.0) throw std::invalid_argument("counterexample: p must lie in (-1, 0) or (0, 1)");
  if (!(N > 0.0)) throw std::invalid_argument("counterexample: N must be positive");
  StarBody L = candidate ? *candidate
                         : (p < 0.0 ? StarBody::fn_body(N, 4) : StarBody::revolution(3, {1.0, -1.0, -N}).with_id("fN_3d"));
  if (!L.is_zonal()) throw std::invalid_argument("counterexample: L must be a revolution body");
  require_non_embedding(L, p, cfg);
  return bundle_for(L, p, cfg, build_counterexample_p(L, p, BumpSpec{}, std::nullopt, build_options(cfg)));
}

CounterexampleBundle reproduce_log_counterexample(int n, double N, const LabConfig& cfg) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("counterexample: dimension must be in [2, 5]");
  if (!(N > 0.0)) throw std::invalid_argument("counterexample: N must be positive");
  const StarBody L = StarBody::fn_body(N, n);
  require_non_embedding(L, 0.0, cfg);
  return bundle_for(L, 0.0, cfg, build_counterexample_log(L, BumpSpec{}, std::nullopt, build_options(cfg)));
}

// ---------------------------------------------------------------------------
// Normalized central sections

BpReport bp_normalized_sections(const StarBody& K, const StarBody& L, const SphereRule& rule, double tol) {
  if (K.dim() != L.dim() || rule.dim != K.dim()) throw std::invalid_argument("bp-sections: dimension mismatch");
  BpReport r;
  r.id_K = K.id();
  r.id_L = L.id();
  r.dim = K.dim();
  r.vol_K = volume_estimate(K, rule.degree);
  r.vol_L = volume_estimate(L, rule.degree);
  std::vector<double> gap(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    gap[i] = section_function(L, rule.nodes[i], 0.0) / r.vol_L.value - section_function(K, rule.nodes[i], 0.0) / r.vol_K.value;
  });
  r.directions = rule.size();
  const auto it = std::min_element(gap.begin(), gap.end());
  r.min_gap = *it;
  r.worst_direction = rule.nodes[static_cast<std::size_t>(it - gap.begin())];
  double scale = 0.0;
  for (const auto& th : rule.nodes) scale = std::max(scale, section_function(K, th, 0.0) / r.vol_K.value);
  r.hypothesis_holds = r.min_gap >= -tol * scale;
  r.volume_ordered = r.vol_L.value <= r.vol_K.value * (1.0 + tol) + 3.0 * (r.vol_K.error + r.vol_L.error);
  return r;
}

// ---------------------------------------------------------------------------
// Random bodies

namespace random_bodies {
namespace {

double draw(const CounterRng& rng, std::uint64_t stream, std::uint64_t k, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform(stream * 1024 + k);
}

}  // namespace

StarBody ellipsoid(int n, const CounterRng& rng, std::uint64_t stream) {
  Vec a{};
  for (int i = 0; i < n; ++i) a[i] = std::exp(draw(rng, stream, i, std::log(0.5), std::log(2.0)));
  return StarBody::ellipsoid(n, a).with_id("random_ellipsoid");
}

StarBody lq_ball(int n, const CounterRng& rng, std::uint64_t stream) {
  const double q = draw(rng, stream, 0, 1.0, 4.0);
  const double s = std::exp(draw(rng, stream, 1, std::log(0.7), std::log(1.4)));
  return StarBody::lq_ball(n, q, s).with_id("random_lq");
}

StarBody revolution(int n, const CounterRng& rng, std::uint64_t stream) {
  for (std::uint64_t attempt = 0; attempt < 200; ++attempt) {
    const double c1 = draw(rng, stream, 2 * attempt + 10, -2.0, 0.5);
    const double c2 = draw(rng, stream, 2 * attempt + 11, -3.0, -0.1);
    const std::vector<double> P{1.0, c1, c2};
    const double a = revolution_root(P);
    // the meridian z -> P(z)^{1/3} must be concave: P P'' <= (2/3) P'^2
    bool concave = true;
    for (int i = 0; i <= 200 && concave; ++i) {
      const double z = a * i / 200.0;
      const double v = eval_even_poly(P, z), d1 = 2 * c1 * z + 4 * c2 * z * z * z, d2 = 2 * c1 + 12 * c2 * z * z;
      concave = v * d2 <= 2.0 / 3.0 * d1 * d1 + 1e-14;
    }
    if (concave && a >= 0.4) return StarBody::revolution(n, P).with_id("random_revolution");
  }
  return StarBody::revolution(n, {1.0, -1.0, -1.0}).with_id("random_revolution");
}

StarBody any(int n, const CounterRng& rng, std::uint64_t stream) {
  switch (rng.bits(stream * 1024 + 1000) % 3) {
    case 0:
      return ellipsoid(n, rng, stream);
    case 1:
      return lq_ball(n, rng, stream);
    default:
      return revolution(n, rng, stream);
  }
}

}  // namespace random_bodies

// ---------------------------------------------------------------------------
// Acceptance suite

namespace {

struct Criterion {
  CriterionResult r;
  void check(const std::string& name, double value, double bound, bool passed) {
    r.checks.push_back({name, value, bound, passed});
  }
  void at_most(const std::string& name, double value, double bound) { check(name, value, bound, value <= bound); }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

StarBody test_ellipsoid(int n) {
  Vec a{};
  const double axes[5][5] = {{}, {}, {1, 2}, {1, 2, 3}, {1, 1, 2, 3}};
  for (int i = 0; i < n; ++i) a[i] = axes[n][i];
  return StarBody::ellipsoid(n, a);
}

void criterion_moment_identity(const LabConfig& cfg, Criterion& c) {
  for (int n = 2; n <= 4; ++n) {
    const SphereRule rule = sphere_rule(n, cfg.rule_degree);
    const StarBody bodies[] = {StarBody::ball(n, 1.0), test_ellipsoid(n), StarBody::lq_ball(n, 4.0, 1.0),
                               StarBody::fn_body(10.0, n)};
    for (const auto& K : bodies) {
      double worst = 0.0;
      for (double p : {-0.9, -0.5, 0.0, 0.5, 0.9}) worst = std::max(worst, moment_identity_residual(K, p, rule));
      c.at_most(K.id() + " n=" + std::to_string(n) + " max residual over p", worst, 1e-6);
    }
  }
}

void criterion_ball_closed_forms(const LabConfig& cfg, Criterion& c) {
  const StarBody B = StarBody::ball(3, 1.0);
  const SphereRule rule = sphere_rule(3, cfg.rule_degree);
  const Vec xi = unit_vector(3, 2);
  const double r_half = 1.0 / gauge_polar_centroid(B, xi, 0.5, rule);
  const double r_log = 1.0 / gauge_polar_centroid(B, xi, 0.0, rule);
  c.at_most("p=1/2 radius |r - 49/16|", std::fabs(r_half - 3.0625), 1e-8);
  c.at_most("p=0 radius |r - e^(4/3)|", std::fabs(r_log - std::exp(4.0 / 3.0)), 1e-8);
  const double vol = *B.closed_form_volume();
  const McEstimate m = mc_body_integral(B, [](const Vec& x) { return std::sqrt(std::fabs(x[2])); }, cfg.mc_samples, cfg.seed);
  const McEstimate l = mc_body_integral(
      B, [](const Vec& x) { return std::log(std::max(std::fabs(x[2]), 1e-300)); }, cfg.mc_samples, cfg.seed + 1);
  c.check("Monte Carlo moment p=1/2, |mc - 4/7| / stderr", std::fabs(m.estimate / vol - 4.0 / 7.0) / (m.std_error / vol), 3.0,
          std::fabs(m.estimate / vol - 4.0 / 7.0) <= 3.0 * m.std_error / vol);
  c.check("Monte Carlo mean log, |mc + 4/3| / stderr", std::fabs(l.estimate / vol + 4.0 / 3.0) / (l.std_error / vol), 3.0,
          std::fabs(l.estimate / vol + 4.0 / 3.0) <= 3.0 * l.std_error / vol);
}

void criterion_two_routes(const LabConfig& cfg, Criterion& c) {
  struct Case {
    StarBody K;
    Vec xi;
  };
  const std::vector<Case> cases = {
      {StarBody::ball(3, 1.0), unit_vector(3, 2)},
      {StarBody::ball(4, 1.0), normalized(Vec{1, 2, 0, 1})},
      {StarBody::ellipsoid(3, {1, 1, 2}), normalized(Vec{1, 0, 1})},
      {StarBody::ellipsoid(4, {1, 2, 1.5, 1.2}), normalized(Vec{1, 1, 1, 1})},
      {StarBody::fn_body(10.0), unit_vector(4, 3)},
      {StarBody::revolution(3, {1.0, -0.5, -1.0}), normalized(Vec{0.3, 0, 1})},
  };
  for (const auto& k : cases) {
    const SphereRule rule = sphere_rule(k.K.dim(), cfg.rule_degree);
    double worst = 0.0;
    for (double p : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}) worst = std::max(worst, ft_norm_power(k.K, k.xi, p, rule).discrepancy);
    c.at_most(k.K.id() + " n=" + std::to_string(k.K.dim()) + " max discrepancy over p", worst, 1e-4);
  }
}

void criterion_counterexample_integral(const LabConfig&, Criterion& c) {
  double worst_printed = 0.0, worst_corrected = 0.0;
  for (double N : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0})
    for (double p : {-0.9, -0.5, -0.1}) {
      const CounterexampleIntegral v = counterexample_integral(N, p);
      worst_printed = std::max(worst_printed, rel(v.numeric, v.printed_closed_form));
      worst_corrected = std::max(worst_corrected, rel(v.numeric, v.closed_form));
    }
  c.at_most("numeric vs printed closed form, max relative gap", worst_printed, 1e-6);
  c.at_most("numeric vs corrected closed form, max relative gap", worst_corrected, 1e-6);
  const CounterexampleIntegral v = counterexample_integral(10.0, -0.5);
  c.at_most("value at N=10, p=-0.5: |numeric + 57.4|", std::fabs(v.numeric + 57.4), 0.05);
  c.check("value at N=10, p=-0.5 is negative", v.numeric, 0.0, v.numeric < 0.0);
  const double width = 5e-4;
  const double Nstar = sign_threshold([](double N) { return counterexample_integral(N, -0.5).numeric; }, 0.05, 10.0, width);
  c.check("sign threshold N* at p=-0.5 (bracket " + fmt("%.1e", width) + ")", Nstar, 1e-3,
          width < 1e-3 && counterexample_integral(Nstar - width, -0.5).numeric * counterexample_integral(Nstar + width, -0.5).numeric < 0.0);
  double prev = 0.0, last = 0.0;
  bool monotone = true;
  for (int k = 1; k <= 6; ++k) {
    const double N = std::pow(10.0, k);
    last = std::pow(N, 0.25) * fn_root(N);
    monotone = monotone && last > prev;
    prev = last;
  }
  c.check("N^(1/4) a_N increasing over N = 10..10^6", monotone ? 1.0 : 0.0, 1.0, monotone);
  c.at_most("|N^(1/4) a_N - 1| at N = 10^6", std::fabs(last - 1.0), 1e-3);
}

void bundle_checks(const CounterexampleBundle& b, Criterion& c) {
  const auto& r = b.report;
  c.check("positivity: min radial value of K", b.certificate.min_rho, 0.0, b.certificate.min_rho > 0.0);
  c.check("convexity probe min turn", b.certificate.convexity.min_turn, 0.0, b.certificate.convexity.passed);
  c.check("L certified non-embedding (min density)", b.L_certificate.min_value, 0.0,
          b.L_certificate.verdict == to_string(Verdict::Fails));
  c.check("inclusion holds on all nodes, margin", r.inclusion_margin, 3.0 * r.inclusion_error,
          r.inclusion_holds && r.inclusion_margin > 3.0 * r.inclusion_error);
  const double gap = r.vol_L.value - r.vol_K.value, err = r.vol_K.error + r.vol_L.error;
  c.check("vol(L) - vol(K) beyond 3 combined errors", gap, 3.0 * err, gap > 3.0 * err);
}

void criterion_p_counterexample(const LabConfig& cfg, Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const CounterexampleBundle b = reproduce_p_counterexample(-0.5, 10.0, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bundle_checks(b, c);
  c.at_most("runtime in seconds", secs, 300.0);
}

void criterion_property_suite(const LabConfig& cfg, Criterion& c) {
  const CounterRng rng(cfg.seed);
  for (int n : {2, 3})
    for (double p : {-0.5, 0.5}) {
      const SphereRule rule = sphere_rule(n, cfg.rule_degree);
      int eligible = 0, ordered = 0, violated = 0;
      for (std::uint64_t s = 0; s < 100; ++s) {
        const std::uint64_t stream = 100000 * n + (p > 0 ? 50000 : 0) + s;
        const StarBody K = random_bodies::ellipsoid(n, rng, 2 * stream);
        const StarBody L0 = random_bodies::any(n, rng, 2 * stream + 1);
        const GaugeSamples gK = gauge_samples(K, p, rule), gL = gauge_samples(L0, p, rule);
        double lam = HUGE_VAL;
        for (std::size_t i = 0; i < rule.size(); ++i) lam = std::min(lam, gK.values[i] / gL.values[i]);
        lam *= 1.0 - 1e-4 * (1.0 + rng.uniform(2 * stream + 7777));
        const ComparisonReport r = run_comparison(K, L0.dilate(lam), p, cfg);
        if (r.verdict == "violated") ++violated;
        if (!(r.inclusion_holds && r.inclusion_margin > 0.0)) continue;
        ++eligible;
        if (r.vol_L.value <= r.vol_K.value * (1.0 + 1e-6)) ++ordered;
      }
      const std::string tag = "n=" + std::to_string(n) + " p=" + fmt("%g", p);
      c.check(tag + ": pairs with inclusion", eligible, 1.0, eligible > 0);
      c.check(tag + ": volume-ordered fraction", eligible ? double(ordered) / eligible : 0.0, 1.0, ordered == eligible);
      c.check(tag + ": violated verdicts", violated, 0.0, violated == 0);
    }
}

void criterion_milman_pajor(const LabConfig& cfg, Criterion& c) {
  const CounterRng rng(cfg.seed + 17);
  for (double p : {0.5, -0.5, 0.0}) {
    int satisfied = 0;
    double worst_equal = 0.0;
    const int pairs = p == 0.0 ? 100 : 50;
    for (int s = 0; s < pairs; ++s) {
      const int n = 2 + s % 2;
      const SphereRule rule = sphere_rule(n, cfg.rule_degree);
      const std::uint64_t stream = 300000 + static_cast<std::uint64_t>(1000 * (p + 1.0)) * 1000 + s;
      const StarBody K = random_bodies::any(n, rng, 2 * stream), L = random_bodies::any(n, rng, 2 * stream + 1);
      if (mp_bound_check(K, L, p, rule).satisfied) ++satisfied;
      if (s < 10) {
        const MpBound e = mp_bound_check(K, K, p, rule);
        worst_equal = std::max(worst_equal, std::fabs(e.lhs - e.rhs) / std::max(std::fabs(e.rhs), 1e-300));
      }
    }
    const std::string tag = p == 0.0 ? "log version" : "p=" + fmt("%g", p);
    c.check(tag + ": satisfied pairs", satisfied, pairs, satisfied == pairs);
    c.at_most(tag + ": K = L relative gap", worst_equal, 1e-8);
  }
}

void criterion_l0(const LabConfig& cfg, Criterion& c) {
  c.at_most("|C(ball, n=2) - ln 2|", std::fabs(l0_constant(StarBody::ball(2, 1.0), sphere_rule(2, cfg.rule_degree)) - std::log(2.0)),
            1e-8);
  for (const StarBody& K : {StarBody::ball(3, 1.0), StarBody::ball(4, 1.0), StarBody::fn_body(10.0)})
    c.at_most("probability normalization residual " + K.id() + " n=" + std::to_string(K.dim()),
              logft_normalization_residual(K, sphere_rule(K.dim(), cfg.rule_degree)), 1e-6);
  for (const StarBody& K : {StarBody::ball(3, 1.0), StarBody::ellipsoid(3, {1, 1, 2})})
    c.at_most("reconstruction sup residual " + K.id(), log_reconstruction_residual(K, sphere_rule(3, cfg.rule_degree)), 1e-4);
  for (const StarBody& K : {StarBody::ball(3, 1.0), StarBody::ellipsoid(3, {1, 2, 3})})
    c.at_most("transform of ||x||^-n two-route gap " + K.id(),
              ft_norm_minus_n(K, normalized(Vec{1, 1, 1}), sphere_rule(3, cfg.rule_degree)).discrepancy, 1e-8);
}

void criterion_parseval(const LabConfig& cfg, Criterion& c) {
  const std::vector<std::pair<StarBody, StarBody>> pairs = {
      {StarBody::fn_body(10.0), StarBody::ball(4, 1.0)},
      {StarBody::revolution(3, {1.0, -0.5, -1.0}), StarBody::revolution(3, {1.0, -1.0, -10.0})},
  };
  for (const auto& [K, L] : pairs)
    for (double p : {-0.5, 0.5, 1.0})
      c.at_most(K.id() + "/" + L.id() + " p=" + fmt("%g", p),
                parseval_check(K, L, p, sphere_rule(K.dim(), cfg.rule_degree), cfg.max_harmonic_degree).residual, 1e-4);
}

void criterion_log_counterexample(const LabConfig& cfg, Criterion& c) {
  const CounterexampleBundle b = reproduce_log_counterexample(4, 50.0, cfg);
  bundle_checks(b, c);
  const auto L = std::make_shared<const StarBody>(StarBody::fn_body(50.0));
  const double ft = ft_log_from_sections(SectionProfile(L, unit_vector(4, 3)));
  const double closed = log_coefficient_even(4) * fn_log_integral_closed_form(50.0);
  c.at_most("log transform at e4 vs -12 (4pi/3)(-Na + 1/a - 1/(3a^3))", rel(ft, closed), 1e-6);
}

void criterion_sections(const LabConfig&, Criterion& c) {
  for (double N : {10.0, 50.0}) {
    const StarBody L = StarBody::fn_body(N);
    const double a = fn_root(N);
    double worst = 0.0;
    for (int i = -200; i <= 200; ++i) {
      const double z = a * i / 201.0;
      const double exact = 4.0 * special::kPi / 3.0 * (1.0 - z * z - N * z * z * z * z);
      worst = std::max(worst, std::fabs(section_function(L, unit_vector(4, 3), z) - exact));
    }
    c.at_most("f_N sup |A(z) - (4pi/3)(1 - z^2 - N z^4)|, N=" + fmt("%g", N), worst, 1e-10);
  }
}

}  // namespace

std::vector<CriterionResult> verify_suite(const LabConfig& cfg, const std::vector<int>& only) {
  using Fn = void (*)(const LabConfig&, Criterion&);
  const std::vector<std::pair<std::string, Fn>> table = {
      {"moment identity", criterion_moment_identity},
      {"ball polar centroid closed forms", criterion_ball_closed_forms},
      {"two-route transform agreement", criterion_two_routes},
      {"f_N regularized integral", criterion_counterexample_integral},
      {"p counterexample reproduction (p=-0.5, n=4, N=10)", criterion_p_counterexample},
      {"volume comparison property suite", criterion_property_suite},
      {"Milman-Pajor bounds", criterion_milman_pajor},
      {"L_0 machinery", criterion_l0},
      {"spherical Parseval identity", criterion_parseval},
      {"log counterexample reproduction (n=4, N=50)", criterion_log_counterexample},
      {"section function exactness", criterion_sections},
  };
  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const int index = static_cast<int>(k) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), index) == only.end()) continue;
    Criterion c;
    c.r.index = index;
    c.r.title = table[k].first;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      table[k].second(cfg, c);
    } catch (const std::exception& e) {
      c.check(std::string("exception: ") + e.what(), 0.0, 0.0, false);
    }
    c.r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.r.passed = !c.r.checks.empty() &&
                 std::all_of(c.r.checks.begin(), c.r.checks.end(), [](const CheckLine& l) { return l.passed; });
    out.push_back(std::move(c.r));
  }
  return out;
}

}  // namespace centrobody
