#include "centrobody/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <mutex>
#include <stdexcept>

#include "centrobody/parallel.hpp"
#include "centrobody/sections.hpp"
#include "centrobody/special.hpp"

namespace centrobody {
namespace {

constexpr double kPi = special::kPi;

double two_pi_n(int n) { return std::pow(2.0 * kPi, n); }

bool near_nonpositive_integer(double x, double eps) {
  return x <= eps && std::fabs(x - std::round(x)) < eps;
}

double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
}

// Gamma(a) / Gamma(b) without overflow; zero when b is a pole.
double gamma_ratio(double a, double b) {
  if (near_nonpositive_integer(b, 1e-14)) return 0.0;
  if (a < 100.0 && b < 100.0) return special::gamma(a) * special::rgamma(b);
  return gamma_sign(a) * gamma_sign(b) * std::exp(special::lgamma_abs(a) - special::lgamma_abs(b));
}

double multiplier_raw(int m, double q, int n) {
  const double a = 0.5 * (m + q);
  if (near_nonpositive_integer(a, 1e-9)) throw std::domain_error("ft_multiplier: pole of Gamma((m+q)/2)");
  const double sign = (m / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::pow(2.0, q) * std::pow(kPi, 0.5 * n) * gamma_ratio(a, 0.5 * (m + n - q));
}

Vec meridian_point(const Vec& axis, const Vec& perp, double t) {
  return axpy(std::sqrt(std::max(0.0, 1.0 - t * t)), perp, scaled(axis, t));
}

Vec perpendicular(const Vec& axis, int n) { return orthonormal_complement(axis, n)[0]; }

// int_S f(<theta, axis>) for f even in t, evaluating f once per node pair.
double integrate_zonal_even(int n, int count, const std::function<double(double)>& f) {
  const double a = 0.5 * (n - 3);
  const Rule1D r = gauss_jacobi(count, a, a);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.x[i] >= 0.0) idx.push_back(i);
  std::vector<double> val(idx.size());
  parallel_for(idx.size(), [&](std::size_t j) { val[j] = f(r.x[idx[j]]); });
  double s = 0.0;
  for (std::size_t j = 0; j < idx.size(); ++j) s += (r.x[idx[j]] == 0.0 ? 1.0 : 2.0) * r.w[idx[j]] * val[j];
  return special::sphere_area(n - 1) * s;
}

double integrate_sphere_parallel(const SphereRule& rule, const std::function<double(const Vec&)>& f) {
  std::vector<double> val(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) { val[i] = f(rule.nodes[i]); });
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * val[i];
  return s;
}

// int_S f over the sphere: 1-D for revolution bodies.
double integrate_body_function(const StarBody& K, const SphereRule& rule, const std::function<double(double)>& of_rho) {
  if (K.is_zonal())
    return integrate_zonal(K.dim(), zonal_node_count(rule.degree), [&](double t) { return of_rho(K.radial_zonal(t)); });
  return integrate_sphere(rule, [&](const Vec& th) { return of_rho(K.radial(th)); });
}

double density_sign(double p) { return p > 0.0 ? -1.0 : 1.0; }

std::shared_ptr<const StarBody> share(const StarBody& K) { return std::make_shared<const StarBody>(K); }

}  // namespace

double HarmonicSpectrum::operator()(double t) const {
  if (coeffs.empty()) return 0.0;
  return ZonalBasis(dim, static_cast<int>(coeffs.size()) - 1).sum(coeffs, t);
}

double HarmonicSpectrum::operator()(const Vec& theta) const { return (*this)(dot(normalized(theta), axis)); }

double HarmonicSpectrum::energy() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return s;
}

HarmonicSpectrum gegenbauer_expand(const std::function<double(double)>& h, int n, const Vec& axis, int M,
                                   double odd_tol) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("gegenbauer_expand: dimension must be in [2, 5]");
  if (M < 0) throw std::invalid_argument("gegenbauer_expand: negative degree");
  const int count = M + 64;
  const double a = 0.5 * (n - 3);
  const Rule1D r = gauss_jacobi(count, a, a);
  const ZonalBasis basis(n, M);
  const double area = special::sphere_area(n - 1);
  std::vector<double> hv(r.size());
  parallel_for(r.size(), [&](std::size_t i) { hv[i] = h(r.x[i]); });
  std::vector<double> c(M + 1, 0.0), P(M + 1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    basis.eval_all(r.x[i], P.data());
    for (int m = 0; m <= M; ++m) c[m] += area * r.w[i] * hv[i] * P[m];
  }
  double even = 0.0, odd = 0.0;
  for (int m = 0; m <= M; ++m) (m % 2 == 0 ? even : odd) += c[m] * c[m];
  HarmonicSpectrum s;
  s.dim = n;
  s.axis = normalized(axis);
  s.max_degree = M;
  s.odd_energy = (even + odd) > 0.0 ? odd / (even + odd) : 0.0;
  if (s.odd_energy > odd_tol) throw std::invalid_argument("gegenbauer_expand: function is not even");
  for (int m = 1; m <= M; m += 2) c[m] = 0.0;
  s.coeffs = std::move(c);
  const ZonalSeries series = s.series();
  double err = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = std::cos(kPi * i / 400.0);
    err = std::max(err, std::fabs(h(t) - series(t)));
  }
  s.truncation_error = err;
  return s;
}

HarmonicSpectrum gegenbauer_expand(const std::function<double(const Vec&)>& h, int n, const Vec& axis, int M,
                                   double odd_tol) {
  const Vec ax = normalized(axis);
  const Vec perp = perpendicular(ax, n);
  return gegenbauer_expand([&](double t) { return h(meridian_point(ax, perp, t)); }, n, ax, M, odd_tol);
}

const MultiplierValidation& validate_multiplier() {
  static MultiplierValidation result;
  static std::once_flag once;
  std::call_once(once, [] {
    double worst = 0.0, worst_inv = 0.0;
    for (int n = 2; n <= 5; ++n) {
      for (double p : {-0.75, -0.5, -0.25, 0.25, 0.5, 0.75}) {
        // |x|^{-n-p}: spherical-integral formula against m = 0 with q = -p
        const double s = special::sphere_area(n - 1) * singular_moment(p, n, [](double) { return 1.0; }, 64);
        const double spherical = -kPi / (2.0 * special::gamma(p + 1.0) * std::sin(kPi * p / 2.0)) * s;
        const double lam = multiplier_raw(0, -p, n);
        worst = std::max(worst, std::fabs(lam - spherical) / std::fabs(spherical));
      }
      for (int m = 0; m <= 12; m += 2) {
        for (double q : {0.3, 0.7, 1.3, 1.7, 2.5}) {
          if (q >= n) continue;
          const double prod = multiplier_raw(m, q, n) * multiplier_raw(m, n - q, n);
          worst_inv = std::max(worst_inv, std::fabs(prod / two_pi_n(n) - 1.0));
        }
      }
    }
    result.max_rel_error = worst;
    result.max_inversion_error = worst_inv;
    result.passed = worst <= 1e-10 && worst_inv <= 1e-8;
  });
  return result;
}

double ft_multiplier(int m, double q, int n) {
  if (m < 0 || m % 2 != 0) throw std::invalid_argument("ft_multiplier: m must be even and nonnegative");
  if (!validate_multiplier().passed) throw std::logic_error("ft_multiplier: validation against the spherical formula failed");
  return multiplier_raw(m, q, n);
}

HarmonicSpectrum ft_homogeneous(const HarmonicSpectrum& spectrum, double degree) {
  const double q = spectrum.dim + degree;
  HarmonicSpectrum out = spectrum;
  for (int m = 0; m <= spectrum.max_degree; m += 2) out.coeffs[m] = ft_multiplier(m, q, spectrum.dim) * spectrum.coeffs[m];
  out.truncation_error = 0.0;
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Embeds:
      return "embeds";
    case Verdict::Fails:
      return "fails";
    default:
      return "inconclusive";
  }
}

double embedding_density_sections(const StarBody& K, const Vec& xi, double p) {
  if (!(p > -1.0 && p < 1.0)) throw std::invalid_argument("embedding density: p must lie in (-1, 1)");
  const SectionProfile A(share(K), xi);
  const double scale = 1.0 / two_pi_n(K.dim());
  if (p == 0.0) return -scale * ft_log_from_sections(A);
  return density_sign(p) * scale * ft_power_from_sections(A, p);
}

HarmonicSpectrum embedding_density_spectrum(const StarBody& K, double p, int M) {
  if (!K.is_zonal()) throw std::invalid_argument("embedding density spectrum: body is not revolution-symmetric");
  if (!(p > -1.0 && p < 1.0) || p == 0.0) throw std::invalid_argument("embedding density spectrum: p in (-1, 1), p != 0");
  const int n = K.dim();
  const HarmonicSpectrum h =
      gegenbauer_expand([&](double t) { return std::pow(K.radial_zonal(t), -p); }, n, *K.zonal_axis(), M);
  HarmonicSpectrum d = ft_homogeneous(h, p);
  const double s = density_sign(p) / two_pi_n(n);
  for (double& c : d.coeffs) c *= s;
  d.truncation_error = h.truncation_error;
  return d;
}

namespace {

// Semi-axes of a ball or ellipsoid, whose norm is |A^{-1} x| with A diagonal.
std::optional<Vec> linear_axes(const StarBody& K) {
  const int n = K.dim();
  Vec a{};
  if (const auto* b = std::get_if<shape::Ball>(&K.shape())) {
    for (int i = 0; i < n; ++i) a[i] = b->radius * K.scale();
    return a;
  }
  if (const auto* e = std::get_if<shape::Ellipsoid>(&K.shape())) {
    for (int i = 0; i < n; ++i) a[i] = e->semi_axes[i] * K.scale();
    return a;
  }
  return std::nullopt;
}

// Density of the representing measure from the transform of |x|^p, pulled
// back by A: ||.||^p o A^{-1} has transform det A (|.|^p)^ o A.
double ellipsoid_density(const Vec& a, int n, const Vec& xi, double p) {
  double det = 1.0, r2 = 0.0;
  for (int i = 0; i < n; ++i) {
    det *= a[i];
    r2 += a[i] * a[i] * xi[i] * xi[i];
  }
  const double r = std::sqrt(r2);
  if (p == 0.0) return det * std::pow(r, -n) / special::sphere_area(n);
  const double c = std::pow(2.0, n + p) * std::pow(special::kPi, 0.5 * n) * special::gamma(0.5 * (n + p)) /
                   std::fabs(special::gamma(-0.5 * p)) / std::pow(2.0 * special::kPi, n);
  return c * det * std::pow(r, -n - p);
}

}  // namespace

EmbeddingCertificate embed_certificate(const StarBody& K, double p, int M, const SphereRule& rule) {
  if (!(p > -1.0 && p < 1.0)) throw std::invalid_argument("embed_certificate: p must lie in (-1, 1)");
  if (rule.dim != K.dim()) throw std::invalid_argument("embed_certificate: rule dimension does not match body");
  const int n = K.dim();
  EmbeddingCertificate c;
  c.p = p;
  c.body_id = K.id();
  c.max_degree = M;
  c.nodes = rule.nodes;
  c.density.assign(rule.size(), 0.0);
  const bool zonal = K.is_zonal();
  const auto axes = linear_axes(K);
  if (axes) {
    c.route = "analytic";
    for (std::size_t i = 0; i < rule.size(); ++i) c.density[i] = ellipsoid_density(*axes, n, rule.nodes[i], p);
  } else if (zonal && p != 0.0) {
    c.route = "gegenbauer";
    const HarmonicSpectrum d = embedding_density_spectrum(K, p, M);
    for (std::size_t i = 0; i < rule.size(); ++i) c.density[i] = d(rule.nodes[i]);
  } else {
    c.route = "sections";
    // one evaluation per |<xi, axis>| for revolution bodies, per antipodal pair otherwise
    std::vector<std::size_t> rep_of(rule.size());
    std::vector<Vec> reps;
    std::map<std::vector<long long>, std::size_t> seen;
    const Vec axis = zonal ? *K.zonal_axis() : Vec{};
    for (std::size_t i = 0; i < rule.size(); ++i) {
      std::vector<long long> key;
      Vec rep = rule.nodes[i];
      if (zonal) {
        const double s = std::fabs(dot(rule.nodes[i], axis));
        key = {std::llround(s * 1e12)};
        rep = meridian_point(axis, perpendicular(axis, n), s);
      } else {
        Vec v = rule.nodes[i];
        for (int k = 0; k < n; ++k) {
          if (v[k] > 1e-13) break;
          if (v[k] < -1e-13) {
            v = scaled(v, -1.0);
            break;
          }
        }
        for (int k = 0; k < n; ++k) key.push_back(std::llround(v[k] * 1e11));
      }
      auto [it, fresh] = seen.emplace(key, reps.size());
      if (fresh) reps.push_back(rep);
      rep_of[i] = it->second;
    }
    std::vector<double> vals(reps.size());
    parallel_for(reps.size(), [&](std::size_t j) { vals[j] = embedding_density_sections(K, reps[j], p); });
    for (std::size_t i = 0; i < rule.size(); ++i) c.density[i] = vals[rep_of[i]];
  }
  c.min_value = HUGE_VAL;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    c.scale = std::max(c.scale, std::fabs(c.density[i]));
    if (c.density[i] < c.min_value) {
      c.min_value = c.density[i];
      c.witness_index = i;
    }
  }
  c.witness = rule.nodes[c.witness_index];
  c.tol = 1e-7 * c.scale;
  if (c.route != "sections") {
    const double s = embedding_density_sections(K, c.witness, p);
    c.cross_check = std::fabs(s - c.min_value) / std::max(c.scale, 1e-300);
  }
  if (std::fabs(c.min_value) < c.tol)
    c.verdict = Verdict::Inconclusive;
  else
    c.verdict = c.min_value > 0.0 ? Verdict::Embeds : Verdict::Fails;
  if (p == 0.0) {
    c.C = l0_constant(K, rule);
    c.normalization = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) c.normalization += rule.weights[i] * c.density[i];
  }
  return c;
}

double l0_constant(const StarBody& K, const SphereRule& rule) {
  const int n = K.dim();
  const double mean_log_gauge =
      -integrate_body_function(K, rule, [](double r) { return std::log(r); }) / special::sphere_area(n);
  return mean_log_gauge - 0.5 * special::digamma(0.5) + 0.5 * special::digamma(0.5 * n);
}

double logft_normalization_residual(const StarBody& K, const SphereRule& rule) {
  const int n = K.dim();
  const auto body = share(K);
  double total = 0.0;
  if (K.is_zonal()) {
    const Vec axis = *K.zonal_axis();
    const Vec perp = perpendicular(axis, n);
    const int count = std::max(160, zonal_node_count(rule.degree));
    total = integrate_zonal_even(n, count, [&](double t) {
      return ft_log_from_sections(SectionProfile(body, meridian_point(axis, perp, t)));
    });
  } else {
    total = integrate_sphere_parallel(rule, [&](const Vec& xi) { return ft_log_from_sections(SectionProfile(body, xi)); });
  }
  const double target = -two_pi_n(n);
  return std::fabs(total - target) / std::fabs(target);
}

double log_reconstruction_residual(const StarBody& K, const SphereRule& rule, int probes) {
  const int n = K.dim();
  const auto body = share(K);
  if (SectionProfile(body, unit_vector(n, 0)).kind() != ProfileKind::Analytic)
    throw std::invalid_argument("log_reconstruction_residual: needs a body with analytic section profiles");
  const double C = l0_constant(K, rule);
  const int count = std::max(24, rule.degree / 2 + 12);
  const SlicedSphere ss{n, fold_even(slice_rule_log(n, count)), sphere_rule_unchecked(n - 1, std::max(12, rule.degree))};
  const double scale = 1.0 / two_pi_n(n);
  auto mu = [&](const Vec& xi) { return -scale * ft_log_from_sections(SectionProfile(body, xi)); };
  // probe directions: coordinate axes, then fixed mixed directions
  std::vector<Vec> xs;
  for (int k = 0; k < n && static_cast<int>(xs.size()) < probes; ++k) xs.push_back(unit_vector(n, k));
  const CounterRng rng(0x5eed);
  for (std::uint64_t k = 0; static_cast<int>(xs.size()) < probes; ++k) xs.push_back(random_direction(rng, n, k));
  std::vector<double> res(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double I = integrate_sliced(ss, xs[i], mu);
    res[i] = std::fabs(std::log(K.gauge(xs[i])) - I - C);
  });
  return *std::max_element(res.begin(), res.end());
}

FtNormMinusN ft_norm_minus_n(const StarBody& K, const Vec& xi_in, const SphereRule& coarse) {
  const int n = K.dim();
  const Vec xi = normalized(xi_in);
  const SphereRule rule = sphere_rule(n, std::max(coarse.degree, n <= 3 ? 120 : (n == 4 ? 80 : 60)));
  const double g1 = -special::kEulerGamma;  // Gamma'(1)
  const int count = std::max(24, rule.degree / 2 + 12);
  const SlicedSphere ss{n, fold_even(slice_rule_log(n, count)), sphere_rule_unchecked(n - 1, std::max(12, rule.degree))};
  const double rn = integrate_body_function(K, rule, [n](double r) { return std::pow(r, n); });
  const double rn_log_t = integrate_sliced(ss, xi, [&](const Vec& th) { return std::pow(K.radial(th), n); });
  FtNormMinusN out;
  out.intermediate = g1 * rn - rn_log_t;
  // int_K ln|<x, xi>| dx = 2 int_0^h ln z A(z) dz
  const SectionProfile A(share(K), xi);
  std::vector<double> cuts{0.0};
  for (double b : A.breaks()) cuts.push_back(b);
  cuts.push_back(A.support_radius());
  double body_log = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    body_log += 2.0 * tanh_sinh(cuts[i], cuts[i + 1], 1.0 / 64.0).apply([&](double z) { return std::log(z) * A(z); });
  const double vol = volume(K);
  const double rn_log_gauge = -integrate_body_function(K, rule, [n](double r) { return std::pow(r, n) * std::log(r); });
  out.direct = -n * body_log + (n * g1 - 1.0) * vol - rn_log_gauge;
  out.discrepancy = std::fabs(out.direct - out.intermediate) / std::fabs(out.intermediate);
  return out;
}

ParsevalResult parseval_check(const StarBody& K, const StarBody& L, double p, const SphereRule& rule, int M) {
  const int n = K.dim();
  if (L.dim() != n) throw std::invalid_argument("parseval_check: bodies differ in dimension");
  if (!((p > 0.0 && p < n) || (p > -1.0 && p < 0.0))) throw std::invalid_argument("parseval_check: p outside (-1,0) and (0,n)");
  const auto ak = K.zonal_axis(), al = L.zonal_axis();
  if (!ak || !al || *ak != *al) throw std::invalid_argument("parseval_check: needs revolution bodies with a common axis");
  const HarmonicSpectrum a = gegenbauer_expand([&](double t) { return std::pow(K.radial_zonal(t), p); }, n, *ak, M);
  const HarmonicSpectrum b = gegenbauer_expand([&](double t) { return std::pow(L.radial_zonal(t), n - p); }, n, *ak, M);
  const HarmonicSpectrum fa = ft_homogeneous(a, -p);
  const HarmonicSpectrum fb = ft_homogeneous(b, -n + p);
  ParsevalResult r;
  for (int m = 0; m <= M; m += 2) r.lhs += fa.coeffs[m] * fb.coeffs[m];
  const int count = std::max(2 * M + 64, zonal_node_count(rule.degree));
  r.rhs = two_pi_n(n) *
          integrate_zonal(n, count, [&](double t) { return std::pow(K.radial_zonal(t), p) * std::pow(L.radial_zonal(t), n - p); });
  r.residual = std::fabs(r.lhs - r.rhs) / std::fabs(r.rhs);
  return r;
}

std::vector<double> funk_hecke_multipliers(int n, double p, int M) {
  if (n < 2 || M < 0) throw std::invalid_argument("funk_hecke_multipliers: need n >= 2 and M >= 0");
  if (!(p > -1.0 && p < 1.0)) throw std::invalid_argument("funk_hecke_multipliers: p must lie in (-1, 1)");
  const double a = 0.5 * (n - 3);
  const ZonalBasis basis(n, M);
  std::vector<double> at_one(M + 1), row(M + 1), acc(M + 1, 0.0);
  basis.eval_all(1.0, at_one.data());
  auto add = [&](double t, double w) {
    basis.eval_all(t, row.data());
    for (int m = 0; m <= M; m += 2) acc[m] += w * row[m];
  };
  const int count = M / 2 + 40;
  // [1/2, 1]: weight (1 - t)^a, smooth factor (1 + t)^a k(t)
  const Rule1D hi = gauss_jacobi(count, a, 0.0);
  for (std::size_t i = 0; i < hi.size(); ++i) {
    const double t = 0.75 + 0.25 * hi.x[i];
    const double k = p == 0.0 ? std::log(t) : std::pow(t, p);
    add(t, hi.w[i] * std::pow(0.25, a + 1.0) * std::pow(1.0 + t, a) * k);
  }
  if (p != 0.0) {
    // [0, 1/2]: weight t^p
    const Rule1D lo = gauss_jacobi(count, 0.0, p);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const double t = 0.25 * (1.0 + lo.x[i]);
      add(t, lo.w[i] * std::pow(0.25, p + 1.0) * std::pow(1.0 - t * t, a));
    }
  } else {
    // log kernel: tanh-sinh on a short initial panel, Gauss-Legendre beyond
    const double h0 = std::min(0.25, 1.0 / (M + 2.0));
    const Rule1D ts = tanh_sinh(0.0, h0, 1.0 / 32.0);
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (ts.x[i] > 0.0) add(ts.x[i], ts.w[i] * std::log(ts.x[i]) * std::pow(1.0 - ts.x[i] * ts.x[i], a));
    const Rule1D gl = gauss_legendre(count, h0, 0.5);
    for (std::size_t i = 0; i < gl.size(); ++i)
      add(gl.x[i], gl.w[i] * std::log(gl.x[i]) * std::pow(1.0 - gl.x[i] * gl.x[i], a));
  }
  const double area = special::sphere_area(n - 1);
  std::vector<double> mu(M + 1, 0.0);
  for (int m = 0; m <= M; m += 2) mu[m] = 2.0 * area * acc[m] / at_one[m];
  return mu;
}

namespace {

struct ZonalGauge {
  std::function<double(double)> gauge_of_s;  // s = <xi, axis>
};

ZonalGauge zonal_gauge(const StarBody& K, double p, int M) {
  if (!K.is_zonal()) throw std::invalid_argument("gauge_samples_zonal: body is not revolution-symmetric");
  const int n = K.dim();
  const Vec axis = *K.zonal_axis();
  const double e = p == 0.0 ? n : n + p;
  const HarmonicSpectrum h =
      gegenbauer_expand([&](double t) { return std::pow(K.radial_zonal(t), e); }, n, axis, M);
  const double vol = integrate_zonal_even(n, M + 64, [&](double t) { return std::pow(K.radial_zonal(t), n); }) / n;
  std::vector<double> c = h.coeffs;
  const std::vector<double> mu = funk_hecke_multipliers(n, p, M);
  for (int m = 0; m <= M; ++m) c[m] *= mu[m];
  const ZonalSeries s(n, std::move(c));
  if (p != 0.0) {
    const double scale = 1.0 / (e * vol);
    return {[s, scale, p](double t) { return std::pow(scale * s(t), 1.0 / p); }};
  }
  const double rest = integrate_zonal_even(n, M + 64, [&](double t) {
                        const double r = K.radial_zonal(t);
                        return std::pow(r, n) * (std::log(r) - 1.0 / n);
                      }) /
                      (n * vol);
  const double scale = 1.0 / (n * vol);
  return {[s, scale, rest](double t) { return std::exp(scale * s(t) + rest); }};
}

}  // namespace

GaugeSamples gauge_samples_zonal(const StarBody& K, double p, const SphereRule& rule, int M) {
  if (rule.dim != K.dim()) throw std::invalid_argument("gauge_samples_zonal: rule dimension does not match body");
  M += M % 2;
  const ZonalGauge zg = zonal_gauge(K, p, M);
  const Vec axis = *K.zonal_axis();
  GaugeSamples out;
  out.p = p;
  out.body_id = K.id();
  out.rule = rule;
  out.values.resize(rule.size());
  out.moment_values.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double g = zg.gauge_of_s(dot(rule.nodes[i], axis));
    out.values[i] = g;
    out.moment_values[i] = p == 0.0 ? std::log(g) : std::pow(g, p);
  }
  return out;
}

InclusionResult check_inclusion_zonal(const StarBody& K, const StarBody& L, double p, const SphereRule& rule, int M) {
  if (K.dim() != L.dim()) throw std::invalid_argument("check_inclusion_zonal: bodies differ in dimension");
  const GaugeSamples gk = gauge_samples_zonal(K, p, rule, M), gl = gauge_samples_zonal(L, p, rule, M);
  const int fine = 3 * M / 2;
  const GaugeSamples fk = gauge_samples_zonal(K, p, rule, fine), fl = gauge_samples_zonal(L, p, rule, fine);
  InclusionResult r;
  r.margin = HUGE_VAL;
  double ek = 0.0, el = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double gap = gk.values[i] - gl.values[i];
    if (gap < r.margin) {
      r.margin = gap;
      r.worst_index = i;
    }
    ek = std::max(ek, std::fabs(fk.values[i] - gk.values[i]));
    el = std::max(el, std::fabs(fl.values[i] - gl.values[i]));
  }
  r.worst_direction = rule.nodes[r.worst_index];
  r.holds = r.margin >= 0.0;
  r.error_estimate = ek + el;
  r.gauge_K = gk.values;
  r.gauge_L = gl.values;
  return r;
}

}  // namespace centrobody
