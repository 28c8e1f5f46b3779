#pragma once

#include <string>
#include <vector>

#include "centrobody/bodies.hpp"
#include "centrobody/quadrature.hpp"

namespace centrobody {

/// Resolution of the singular direction integrals. Derived from the sphere
/// rule's degree unless set explicitly; `refine` scales every count (used for
/// the second-resolution error estimate).
struct MomentResolution {
  int slice_count = 0;
  int inner_degree = 0;
  int tau_count = 0;
  static MomentResolution from_degree(int degree, double refine = 1.0);
};

/// m_p(K, xi) = (1/vol K) int_K |<x, xi>|^p dx for p in (-1, 1), p != 0,
/// via (1/((n+p) vol K)) int_S |<theta, xi>|^p rho^{n+p} d theta.
double normalized_moment(const StarBody& K, const Vec& xi, double p, const SphereRule& rule);

/// (1/vol K) int_K ln|<x, xi>| dx.
double mean_log(const StarBody& K, const Vec& xi, const SphereRule& rule);

/// ||xi||_{Gamma*_p K}: m_p^{1/p}, and exp(mean_log) at p = 0.
double gauge_polar_centroid(const StarBody& K, const Vec& xi, double p, const SphereRule& rule);

struct GaugeSamples {
  double p = 0.0;
  std::string body_id;
  SphereRule rule;
  std::vector<double> values;
  std::vector<double> moment_values;  // m_p, or the mean log at p = 0
};

/// Gauges of Gamma*_p K at every node of `rule`, evaluated in parallel.
/// Revolution-symmetric bodies evaluate once per distinct |<xi, axis>|.
GaugeSamples gauge_samples(const StarBody& K, double p, const SphereRule& rule,
                           const MomentResolution& res);
GaugeSamples gauge_samples(const StarBody& K, double p, const SphereRule& rule);

struct InclusionResult {
  bool holds = false;
  double margin = 0.0;        // min_i (gauge_K - gauge_L)
  std::size_t worst_index = 0;  // first node attaining the minimum
  Vec worst_direction{};
  double error_estimate = 0.0;  // max gauge change under refinement, both bodies
  std::vector<double> gauge_K;
  std::vector<double> gauge_L;
};

/// Gamma*_p K subset Gamma*_p L on the rule nodes, i.e. ||xi||_{Gamma*_p L} <=
/// ||xi||_{Gamma*_p K} at every node.
InclusionResult check_inclusion(const StarBody& K, const StarBody& L, double p, const SphereRule& rule,
                                bool estimate_error = true);

/// |(1/vol K) int_K ||x||_K^p dx - n/(n+p)|; at p = 0 the log version
/// against -1/n. The volume is the closed form when known.
double moment_identity_residual(const StarBody& K, double p, const SphereRule& rule);

struct MpBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

/// p > 0: (1/vol L) int_L ||x||_K^p >= n/(n+p) (vol L / vol K)^{p/n}.
/// p < 0: int_L ||x||_K^p <= n/(n+p) vol(L)^{(n+p)/n} vol(K)^{-p/n}.
/// p = 0: (1/vol L) int_L ln||x||_K >= -1/n + (ln vol L - ln vol K)/n.
/// `tol` is the relative slack allowed for quadrature error.
MpBound mp_bound_check(const StarBody& K, const StarBody& L, double p, const SphereRule& rule, double tol = 1e-10);

}  // namespace centrobody
