#pragma once

#include <functional>
#include <string>
#include <vector>

#include "centrobody/bodies.hpp"
#include "centrobody/centroid.hpp"
#include "centrobody/gegenbauer.hpp"
#include "centrobody/quadrature.hpp"

namespace centrobody {

/// Even zonal function h(theta) = sum_m coeffs[m] Phat_m(<theta, axis>) in the
/// orthonormal Gegenbauer basis. Odd entries of `coeffs` are zero.
struct HarmonicSpectrum {
  int dim = 0;
  Vec axis{};
  int max_degree = 0;
  std::vector<double> coeffs;
  /// sup over the probe grid of |h - truncated series| recorded at expansion.
  double truncation_error = 0.0;
  /// Relative energy of the discarded odd degrees.
  double odd_energy = 0.0;

  double operator()(double t) const;
  double operator()(const Vec& theta) const;
  ZonalSeries series() const { return ZonalSeries(dim, coeffs); }
  /// sum_m coeffs[m]^2 = int_S h^2 for the truncated series.
  double energy() const;
};

/// Projection of h(t), t = <theta, axis>, onto degrees 0..M by Gauss-Gegenbauer
/// quadrature. Throws std::invalid_argument when the odd-degree energy exceeds
/// `odd_tol` relative to the total.
HarmonicSpectrum gegenbauer_expand(const std::function<double(double)>& h, int n, const Vec& axis, int M,
                                   double odd_tol = 1e-10);

/// Direction form: h is sampled along the meridian through `axis`.
HarmonicSpectrum gegenbauer_expand(const std::function<double(const Vec&)>& h, int n, const Vec& axis, int M,
                                   double odd_tol = 1e-10);

/// lambda_m(q) = (-1)^{m/2} 2^q pi^{n/2} Gamma((m+q)/2) / Gamma((m+n-q)/2): the
/// Fourier transform maps Y_m(theta) r^{-n+q} to lambda_m(q) Y_m(xi) |xi|^{-q}.
/// Refuses to run until `validate_multiplier` has passed (done on first use),
/// and throws std::domain_error within 1e-9 of a pole.
double ft_multiplier(int m, double q, int n);

struct MultiplierValidation {
  bool passed = false;
  double max_rel_error = 0.0;  // against the spherical-integral formula on balls
  double max_inversion_error = 0.0;
};

/// Compares the m = 0 multiplier with the spherical-integral transform of
/// |x|^{-n-p} for n = 2..5 and six values of p, and checks
/// lambda_m(q) lambda_m(n-q) = (2 pi)^n for even m <= 12. Runs once.
const MultiplierValidation& validate_multiplier();

/// Coefficientwise product with lambda_m(q), q = n + degree: the spectrum of
/// the transform (of degree -q) of |x|^degree h(x/|x|) restricted to the sphere.
HarmonicSpectrum ft_homogeneous(const HarmonicSpectrum& spectrum, double degree);

enum class Verdict { Embeds, Fails, Inconclusive };
std::string to_string(Verdict v);

struct EmbeddingCertificate {
  double p = 0.0;
  std::string body_id;
  int max_degree = 0;
  std::string route;  // "gegenbauer", "sections" or "analytic"
  std::vector<Vec> nodes;
  std::vector<double> density;
  double min_value = 0.0;
  std::size_t witness_index = 0;
  Vec witness{};
  double scale = 0.0;  // max |density|
  double tol = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double C = 0.0;              // L_0 constant, p = 0 only
  double normalization = 0.0;  // int_S density, p = 0 only
  /// Relative disagreement of the section route at the witness (zonal bodies).
  double cross_check = 0.0;
};

/// Density whose nonnegativity characterizes embedding: for p != 0 the
/// transform of ||x||_K^p times sign(Gamma(-p/2)) (2 pi)^{-n}; for p = 0,
/// -(2 pi)^{-n} (ln ||x||_K)^(xi).
double embedding_density_sections(const StarBody& K, const Vec& xi, double p);

/// Spectrum of the p != 0 density for a revolution-symmetric body.
HarmonicSpectrum embedding_density_spectrum(const StarBody& K, double p, int M);

/// Sign certificate on the nodes of `rule`. Balls and ellipsoids use the closed
/// form, revolution-symmetric bodies the Gegenbauer route for p != 0, both
/// checked against sections at the witness; other bodies and p = 0 use section
/// profiles.
EmbeddingCertificate embed_certificate(const StarBody& K, double p, int M, const SphereRule& rule);

/// C = (1/|S|) int_S ln ||theta||_K - psi(1/2)/2 + psi(n/2)/2.
double l0_constant(const StarBody& K, const SphereRule& rule);

/// |int_S (ln ||x||_K)^ + (2 pi)^n| / (2 pi)^n.
double logft_normalization_residual(const StarBody& K, const SphereRule& rule);

/// sup over probe directions x of |ln ||x||_K - int ln|<x, xi>| dmu(xi) - C|,
/// dmu = -(2 pi)^{-n} (ln ||x||_K)^ dxi. Requires analytic section profiles.
double log_reconstruction_residual(const StarBody& K, const SphereRule& rule, int probes = 8);

struct FtNormMinusN {
  double direct = 0.0;        // -n int_K ln|<x,xi>| + (n Gamma'(1) - 1) vol - int rho^n ln ||theta||
  double intermediate = 0.0;  // int_S rho^n (Gamma'(1) - ln|<theta,xi>|)
  double discrepancy = 0.0;   // relative
};

/// (||x||_K^{-n})^(xi) by the two displayed forms, on a rule of degree at least
/// 120 (n <= 3), 80 (n = 4) or 60 (n = 5).
FtNormMinusN ft_norm_minus_n(const StarBody& K, const Vec& xi, const SphereRule& rule);

struct ParsevalResult {
  double lhs = 0.0;  // spherical integral of the two transforms, from spectra
  double rhs = 0.0;  // (2 pi)^n int_S ||theta||_K^{-p} ||theta||_L^{-n+p}
  double residual = 0.0;
};

/// Spherical Parseval identity for two revolution bodies with a common axis,
/// 0 < p < n or -1 < p < 0, truncated at degree M.
ParsevalResult parseval_check(const StarBody& K, const StarBody& L, double p, const SphereRule& rule, int M);

/// Funk-Hecke multipliers of the kernel |t|^p (ln|t| at p = 0) on S^{n-1}:
/// int_S k(<theta, xi>) Phat_m(<theta, e>) d theta = mu[m] Phat_m(<xi, e>),
/// for even m <= M (odd entries zero), by Gauss-Jacobi quadrature.
std::vector<double> funk_hecke_multipliers(int n, double p, int M);

/// Gauges of Gamma*_p K for a revolution body from the degree-M expansion of
/// rho^{n+p} (rho^n and rho^n ln rho at p = 0) and the Funk-Hecke multipliers.
GaugeSamples gauge_samples_zonal(const StarBody& K, double p, const SphereRule& rule, int M);

/// check_inclusion for two revolution bodies through gauge_samples_zonal. The
/// error estimate is the gauge change from degree M to 3M/2, both bodies.
InclusionResult check_inclusion_zonal(const StarBody& K, const StarBody& L, double p, const SphereRule& rule, int M);

}  // namespace centrobody
