#pragma once

#include <optional>
#include <string>
#include <vector>

#include "centrobody/bodies.hpp"
#include "centrobody/spectral.hpp"

namespace centrobody {

/// Axis-symmetric nonpositive profile.
/// "plateau": -amplitude exp(1 - 1/(1 - s^2)), s = d / width, where d is the
/// angular distance from the cone |<theta, axis>| = center, zero for s >= 1.
/// "power": -amplitude t^(2 power), a polynomial concentrated at the poles
/// whose harmonic expansion terminates at degree 2 power. With power = 0 the
/// exponent is chosen from `width` so that the profile pairs with the density
/// of L with the sign the construction needs.
/// `center` = 1 puts the bump on the poles. `width` <= 0 selects the largest
/// cap fitting in the negative set, shrunk by `fill`.
struct BumpSpec {
  double center = 1.0;
  double width = 0.0;
  double amplitude = 1.0;
  double fill = 0.6;
  std::string profile = "power";
  int power = 0;
};

double bump_value(const BumpSpec& b, double t);

struct ConvexityProbe {
  bool passed = false;
  double min_turn = 0.0;  // smallest normalized turning along the probed curves
  int resolution = 0;     // points per half circle
  double worst_t = 0.0;   // <theta, axis> (or probe angle) at the worst point
};

/// Discrete convexity test: the radial polygon of K along great circles must
/// turn one way. Revolution bodies are probed along the meridian, with a
/// refined grid at the poles; other bodies along coordinate and pseudo-random
/// planes.
ConvexityProbe convexity_probe(const StarBody& K, int resolution = 4096, double tol = 1e-12);

struct BuildOptions {
  int rule_degree = 40;
  int density_degree = 60;  // harmonic degree for the density of L
  int bump_degree = 240;    // harmonic degree for a plateau v and g
  int pairing_degree = 120; // harmonic degree for the density of L in the pairing
  int max_halvings = 40;
  int convexity_resolution = 4096;
};

struct CounterexampleCertificate {
  std::string mode;  // "p" or "log"
  double p = 0.0;
  /// Omega = {|<theta, axis>| >= omega_t} where the density of L is negative;
  /// omega_t = 1 when only the poles were found.
  double omega_t = 1.0;
  double density_at_center = 0.0;
  BumpSpec bump;
  HarmonicSpectrum v;
  HarmonicSpectrum g;
  /// int_S density_L v, the pairing that drives the volume inequality
  double pairing = 0.0;
  double g_integral = 0.0;         // int_S g, log mode
  /// log mode: relative gap between g and the section route for a shallow D
  /// at three directions within the cap
  double g_cross_check = 0.0;
  double epsilon = 0.0;
  int halvings = 0;
  double min_rho = 0.0;
  ConvexityProbe convexity;
  double vol_K = 0.0;
  double vol_L = 0.0;
  double lambda = 1.0;             // log mode: factor making C vanish
  double c_solve_residual = 0.0;   // log mode: spread of mean-log identity over nodes
  double margin_dilation = 1.0;    // final dilation splitting the volume gap
  std::vector<std::string> diagnostics;
};

struct CounterexampleResult {
  StarBody K;
  CounterexampleCertificate cert;
};

/// Perturbation of a revolution body L that does not embed in L_p: for p < 0,
/// ||x||_K^{-n-p}/vol K = ||x||_L^{-n-p}/vol L + eps |x|^{-n-p} g; for p > 0 the
/// same without the volume normalization. g is the restriction of the
/// transform of |x|^p v. Throws std::invalid_argument when L embeds or no eps
/// passes the positivity and convexity probes.
CounterexampleResult build_counterexample_p(const StarBody& L, double p, const BumpSpec& bump,
                                            std::optional<double> eps, const BuildOptions& opt = {});

/// ||x||_K^{-n}/vol K = ||x||_L^{-n}/vol L + n (2 pi)^{-n} eps |x|^{-n} g with
/// g the transform of v = ln||x||_D - ln|x|, ||theta||_D = exp(v), followed by
/// the dilation that makes the constant C vanish. `cap.amplitude` is the
/// depth of D.
CounterexampleResult build_counterexample_log(const StarBody& L, const BumpSpec& cap, std::optional<double> eps,
                                              const BuildOptions& opt = {});

}  // namespace centrobody
