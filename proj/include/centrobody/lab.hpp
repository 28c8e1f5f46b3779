#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "centrobody/bodies.hpp"
#include "centrobody/centroid.hpp"
#include "centrobody/counterexample.hpp"
#include "centrobody/spectral.hpp"
#include "json.hpp"

namespace centrobody {

/// Experiment configuration. Defaults: rule_degree 40, max_harmonic_degree 60,
/// mc_samples 10^7, seed 1, tol_rel 1e-6.
struct LabConfig {
  double p = 0.5;
  int dim = 3;
  int rule_degree = 40;
  int max_harmonic_degree = 60;
  long mc_samples = 10000000;
  std::uint64_t seed = 1;
  double tol_rel = 1e-6;
  std::vector<StarBody> bodies;
  std::string build_id;
};

/// Reads {p, dim, rule_degree, max_harmonic_degree, mc_samples, seed, tol_rel,
/// bodies: [...]}; missing keys keep their defaults, unknown keys are rejected.
LabConfig config_from_json(const nlohmann::json& j);
LabConfig config_from_file(const std::string& path);
nlohmann::json config_to_json(const LabConfig& cfg);

/// Identifier of this build, recorded in report provenance.
std::string build_id();

struct VolumeEstimate {
  double value = 0.0;
  double error = 0.0;  // change under refinement, or rounding for closed forms
  std::string method;  // "closed-form", "zonal" or "sphere-rule"
};

VolumeEstimate volume_estimate(const StarBody& K, int rule_degree, int harmonic_degree = 0);

/// Expansion degree for zonal gauge computations on K.
int zonal_gauge_degree(const StarBody& K, int harmonic_degree);

struct EmbedSummary {
  std::string verdict;
  std::string route;
  double min_value = 0.0;
  double scale = 0.0;
  Vec witness{};
  int max_degree = 0;
};

EmbedSummary summarize(const EmbeddingCertificate& c);

struct ComparisonReport {
  double p = 0.0;
  int dim = 0;
  std::string id_K, id_L;
  int rule_degree = 0;
  std::size_t rule_nodes = 0;
  std::string inclusion_route;  // "zonal" or "sphere-rule"
  bool inclusion_holds = false;
  double inclusion_margin = 0.0;
  double inclusion_error = 0.0;
  Vec worst_direction{};
  VolumeEstimate vol_K, vol_L;
  EmbedSummary embed_K;
  std::optional<EmbedSummary> embed_L;
  /// consistent | violated | not-applicable | inconclusive
  std::string verdict;
  /// inclusion margin > 3 error and vol(L) - vol(K) > 3 combined error
  bool counterexample = false;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  double tol_rel = 0.0;
  std::string build;
};

/// Comparison pipeline for the pair (K, L): inclusion of the polar p-centroid
/// bodies, volumes with error bars, and the embedding certificate of K.
/// Never throws on mathematical outcomes; throws std::invalid_argument on
/// mismatched dimensions or p outside (-1, 1).
ComparisonReport run_comparison(const StarBody& K, const StarBody& L, double p, const LabConfig& cfg,
                                bool certify_L = false);

struct CounterexampleBundle {
  StarBody L;
  StarBody K;
  CounterexampleCertificate certificate;
  EmbedSummary L_certificate;
  ComparisonReport report;
  bool success = false;
  std::vector<std::string> failures;
};

/// p < 0: L = f_N in R^4. p > 0: L = `candidate` if given, otherwise the f_N
/// profile 1 - z^2 - N z^4 in R^3; either way L must be certified non-embedding
/// at runtime. Throws std::invalid_argument when L embeds.
CounterexampleBundle reproduce_p_counterexample(double p, double N, const LabConfig& cfg,
                                                std::optional<StarBody> candidate = std::nullopt);

/// log mode with L = f_N in R^n.
CounterexampleBundle reproduce_log_counterexample(int n, double N, const LabConfig& cfg);

struct BpReport {
  std::string id_K, id_L;
  int dim = 0;
  std::size_t directions = 0;
  /// min over directions of A_L(0)/vol L - A_K(0)/vol K; the hypothesis asks
  /// for this to be nonnegative
  double min_gap = 0.0;
  Vec worst_direction{};
  bool hypothesis_holds = false;
  VolumeEstimate vol_K, vol_L;
  bool volume_ordered = false;  // vol(L) <= vol(K)(1 + tol)
};

/// Normalized central sections of K and L on the nodes of `rule` (n <= 5).
/// Exploratory: no comparison verdict is attached.
BpReport bp_normalized_sections(const StarBody& K, const StarBody& L, const SphereRule& rule, double tol = 1e-9);

namespace random_bodies {
StarBody ellipsoid(int n, const CounterRng& rng, std::uint64_t stream);
StarBody lq_ball(int n, const CounterRng& rng, std::uint64_t stream);
/// P(z) = 1 + c1 z^2 + c2 z^4 with c2 < 0, redrawn until the root is at least
/// 0.4 and the meridian P^{1/3} is concave.
StarBody revolution(int n, const CounterRng& rng, std::uint64_t stream);
/// One of the three families, chosen by the stream.
StarBody any(int n, const CounterRng& rng, std::uint64_t stream);
}  // namespace random_bodies

struct CheckLine {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct CriterionResult {
  int index = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  std::vector<CheckLine> checks;
};

/// Runs the numbered acceptance checks (all when `only` is empty).
std::vector<CriterionResult> verify_suite(const LabConfig& cfg, const std::vector<int>& only = {});

nlohmann::json to_json(const VolumeEstimate& v);
nlohmann::json to_json(const EmbedSummary& s, int n);
nlohmann::json to_json(const EmbeddingCertificate& c, int n);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const CounterexampleCertificate& c);
nlohmann::json to_json(const CounterexampleBundle& b);
nlohmann::json to_json(const BpReport& r);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace centrobody
