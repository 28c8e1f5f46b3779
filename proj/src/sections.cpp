#include "centrobody/sections.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "centrobody/centroid.hpp"
#include "centrobody/special.hpp"

namespace centrobody {
namespace {

constexpr double kPi = special::kPi;

// Coefficients of P(w)^alpha for P(w) = sum p[k] w^k (J. C. P. Miller).
std::vector<double> series_power(const std::vector<double>& p, double alpha, int terms) {
  std::vector<double> f(terms, 0.0);
  f[0] = std::pow(p[0], alpha);
  for (int k = 1; k < terms; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k && j < static_cast<int>(p.size()); ++j) s += ((alpha + 1.0) * j - k) * p[j] * f[k - j];
    f[k] = s / (k * p[0]);
  }
  return f;
}

// Truncates an even series once terms at radius delta are negligible.
std::vector<double> trim_series(std::vector<double> c, double delta) {
  const double ref = std::fabs(c[0]);
  double dp = 1.0;
  std::size_t keep = c.size();
  int small_run = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    small_run = (std::fabs(c[k]) * dp < 1e-18 * ref) ? small_run + 1 : 0;
    if (small_run >= 3) {
      keep = k + 1;
      break;
    }
    dp *= delta * delta;
  }
  c.resize(keep);
  return c;
}

bool has_tips(const StarBody& K) {
  switch (K.kind()) {
    case ShapeKind::Revolution:
    case ShapeKind::RadialGrid:
      return true;
    case ShapeKind::Perturbed:
      return has_tips(*std::get<shape::Perturbed>(K.shape()).base);
    default:
      return false;
  }
}

// Radius of the (n-1)-ball cross-section of a revolution-symmetric body at
// axial height y.
double meridian_radius(const StarBody& K, double y) {
  y = std::fabs(y);
  const double c = K.scale();
  if (const auto* r = std::get_if<shape::Revolution>(&K.shape())) {
    const double u = y / c;
    if (u >= r->root) return 0.0;
    return c * std::cbrt(std::max(0.0, eval_even_poly(r->profile, u)));
  }
  const double top = K.radial_zonal(1.0);
  if (y >= top) return 0.0;
  // y = rho(t) t is increasing in t for convex bodies
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80 && hi - lo > 1e-16; ++i) {
    const double m = 0.5 * (lo + hi);
    (K.radial_zonal(m) * m < y ? lo : hi) = m;
  }
  const double t = 0.5 * (lo + hi);
  return K.radial_zonal(t) * std::sqrt(std::max(0.0, 1.0 - t * t));
}

struct MeridianFrame {
  Vec axis{};
  Vec perp{};
  double s = 0.0;      // <xi, axis> >= 0
  double sigma = 0.0;  // sqrt(1 - s^2)
};

MeridianFrame meridian_frame(const StarBody& K, const Vec& xi) {
  MeridianFrame f;
  f.axis = *K.zonal_axis();
  double s = dot(xi, f.axis);
  Vec x = xi;
  if (s < 0.0) {
    s = -s;
    x = scaled(xi, -1.0);
  }
  f.s = std::min(1.0, s);
  f.sigma = std::sqrt(std::max(0.0, 1.0 - f.s * f.s));
  Vec w = axpy(-f.s, f.axis, x);
  if (norm(w) > 1e-14) {
    f.perp = normalized(w);
  } else {
    f.perp = orthonormal_complement(f.axis, K.dim())[0];
  }
  return f;
}

// Support in the meridian plane: maximize rho(cos phi) (cos phi s + sin phi sigma).
std::pair<double, double> zonal_support(const StarBody& K, double s, double sigma) {
  auto f = [&](double phi) { return K.radial_zonal(std::cos(phi)) * (std::cos(phi) * s + std::sin(phi) * sigma); };
  const int m = 720;
  int best = 0;
  double bv = -HUGE_VAL;
  for (int i = 0; i <= m; ++i) {
    const double v = f(kPi * i / m);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  double a = kPi * std::max(0, best - 1) / m, b = kPi * std::min(m, best + 1) / m;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  const double phi = 0.5 * (a + b);
  return {std::max({f(phi), f1, f2, bv}), phi};
}

double max_radius(const StarBody& K) {
  if (K.is_zonal()) {
    double m = 0.0;
    for (int i = 0; i <= 400; ++i) m = std::max(m, K.radial_zonal(std::cos(kPi * i / 800.0)));
    return m;
  }
  double m = 0.0;
  for (const Vec& v : sphere_rule(K.dim(), 30).nodes) m = std::max(m, K.radial(v));
  return m;
}

// Exit parameter along base + l dir from an interior point, by bisection.
template <class Inside>
double exit_along(Inside&& inside, double lmax) {
  double lo = 0.0, hi = lmax;
  while (inside(hi)) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++i) {
    const double m = 0.5 * (lo + hi);
    (inside(m) ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

double meridian_section(const StarBody& K, const MeridianFrame& f, double h, double support_phi, double rmax,
                        double z) {
  z = std::fabs(z);
  if (z >= h) return 0.0;
  const int n = K.dim();
  const double top = K.radial_zonal(1.0);
  // interior start: (z/h) times the support point, in (y, omega) coordinates
  const double rs = K.radial_zonal(std::cos(support_phi));
  const double y0 = (z / h) * rs * std::cos(support_phi);
  const double w0 = (z / h) * rs * std::sin(support_phi);
  const double dy = f.sigma, dw = -f.s;
  auto g = [&](double l) {
    const double y = y0 + l * dy, w = w0 + l * dw;
    if (std::fabs(y) >= top) return -1.0;
    const double R = meridian_radius(K, y);
    return R * R - w * w;
  };
  auto inside_p = [&](double l) { return g(l) > 0.0; };
  auto inside_m = [&](double l) { return g(-l) > 0.0; };
  const double lp = exit_along(inside_p, 2.0 * rmax);
  const double lm = -exit_along(inside_m, 2.0 * rmax);
  if (n == 2) return lp - lm;
  const double kappa = special::ball_volume(n - 2);
  const double e = 0.5 * (n - 2);
  return tanh_sinh(lm, lp, 1.0 / 32.0).apply([&](double l) { return kappa * std::pow(std::max(0.0, g(l)), e); });
}

// General body: polar integration inside the hyperplane around an interior
// point of the section.
double hyperplane_section(const StarBody& K, const Vec& xi, const Support& sup, double z) {
  const double sgn = z < 0.0 ? -1.0 : 1.0;
  z = std::fabs(z);
  if (z >= sup.h) return 0.0;
  const int n = K.dim();
  const Vec c = scaled(sup.point, sgn * z / sup.h);
  const auto basis = orthonormal_complement(xi, n);
  const SphereRule inner = sphere_rule_unchecked(n - 1, 48);
  const double rmax = 4.0 * sup.h + 4.0 * norm(sup.point);
  double s = 0.0;
  for (std::size_t j = 0; j < inner.size(); ++j) {
    Vec d{};
    for (int k = 0; k + 1 < n; ++k) d = axpy(inner.nodes[j][k], basis[k], d);
    const double r = exit_along([&](double l) { return K.gauge(axpy(l, d, c)) < 1.0; }, rmax);
    s += inner.weights[j] * std::pow(r, n - 1);
  }
  return s / (n - 1);
}

}  // namespace

Support support(const StarBody& K, const Vec& xi_in) {
  const int n = K.dim();
  const Vec xi = normalized(xi_in);
  Support out;
  if (const auto* b = std::get_if<shape::Ball>(&K.shape())) {
    out.h = b->radius * K.scale();
    out.point = scaled(xi, out.h);
    return out;
  }
  if (const auto* e = std::get_if<shape::Ellipsoid>(&K.shape())) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += e->semi_axes[i] * e->semi_axes[i] * xi[i] * xi[i];
    out.h = std::sqrt(s);
    for (int i = 0; i < n; ++i) out.point[i] = e->semi_axes[i] * e->semi_axes[i] * xi[i] / out.h;
    out.h *= K.scale();
    out.point = scaled(out.point, K.scale());
    return out;
  }
  if (K.is_zonal()) {
    const MeridianFrame f = meridian_frame(K, xi);
    const auto [h, phi] = zonal_support(K, f.s, f.sigma);
    out.h = h;
    const double r = K.radial_zonal(std::cos(phi));
    out.point = axpy(r * std::sin(phi), f.perp, scaled(f.axis, r * std::cos(phi)));
    if (dot(xi, f.axis) < 0.0) out.point = scaled(out.point, -1.0);
    return out;
  }
  // Scan, then coordinate search on the sphere.
  Vec best{};
  double bv = -HUGE_VAL;
  for (const Vec& v : sphere_rule(n, 30).nodes) {
    const double val = K.radial(v) * dot(v, xi);
    if (val > bv) {
      bv = val;
      best = v;
    }
  }
  for (double step = 0.05; step > 1e-12; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int i = 0; i < n; ++i)
        for (double sg : {-1.0, 1.0}) {
          Vec v = best;
          v[i] += sg * step;
          v = normalized(v);
          const double val = K.radial(v) * dot(v, xi);
          if (val > bv) {
            bv = val;
            best = v;
            improved = true;
          }
        }
    }
  }
  out.h = bv;
  out.point = scaled(best, K.radial(best));
  return out;
}

SectionProfile::SectionProfile(std::shared_ptr<const StarBody> body, const Vec& xi, double taylor_radius)
    : body_(std::move(body)), xi_(normalized(xi)) {
  const StarBody& K = *body_;
  const int n = K.dim();
  const double kappa = special::ball_volume(n - 1);
  const double alpha = 0.5 * (n - 1);
  if (const auto* b = std::get_if<shape::Ball>(&K.shape())) {
    kind_ = ProfileKind::Analytic;
    h_ = b->radius * K.scale();
    const double a0 = kappa * std::pow(h_, n - 1);
    const double hh = h_;
    eval_ = [a0, hh, alpha](double z) {
      const double u = 1.0 - z * z / (hh * hh);
      return u > 0.0 ? a0 * std::pow(u, alpha) : 0.0;
    };
    delta_ = 0.5 * h_;
    taylor_ = series_power({1.0, -1.0 / (h_ * h_)}, alpha, 90);
    for (double& c : taylor_) c *= a0;
    taylor_ = trim_series(taylor_, delta_);
    return;
  }
  if (const auto* e = std::get_if<shape::Ellipsoid>(&K.shape())) {
    kind_ = ProfileKind::Analytic;
    h_ = support(K, xi_).h;
    double prod = kappa;
    for (int i = 0; i < n; ++i) prod *= e->semi_axes[i] * K.scale();
    const double a0 = prod / h_;
    const double hh = h_;
    eval_ = [a0, hh, alpha](double z) {
      const double u = 1.0 - z * z / (hh * hh);
      return u > 0.0 ? a0 * std::pow(u, alpha) : 0.0;
    };
    delta_ = 0.5 * h_;
    taylor_ = series_power({1.0, -1.0 / (h_ * h_)}, alpha, 90);
    for (double& c : taylor_) c *= a0;
    taylor_ = trim_series(taylor_, delta_);
    return;
  }
  if (K.is_zonal()) {
    const MeridianFrame f = meridian_frame(K, xi_);
    if (f.sigma == 0.0) {
      // Along the axis: A(z) = kappa R(z)^{n-1}.
      h_ = K.radial_zonal(1.0);
      auto bp = body_;
      eval_ = [bp, kappa, n](double z) { return kappa * std::pow(meridian_radius(*bp, z), n - 1); };
      if (const auto* r = std::get_if<shape::Revolution>(&K.shape())) {
        kind_ = ProfileKind::Analytic;
        const double c = K.scale();
        delta_ = 0.5 * h_;
        // kappa c^{n-1} P(z/c)^{(n-1)/3}, P in powers of w = z^2
        std::vector<double> pw(r->profile.size());
        for (std::size_t k = 0; k < pw.size(); ++k) pw[k] = r->profile[k] / std::pow(c, 2.0 * k);
        taylor_ = series_power(pw, (n - 1) / 3.0, 90);
        for (double& t : taylor_) t *= kappa * std::pow(c, n - 1);
        taylor_ = trim_series(taylor_, delta_);
        return;
      }
      kind_ = ProfileKind::QuadratureBacked;
      delta_ = 0.5 * h_;
      build_taylor_fit();
      return;
    }
    kind_ = ProfileKind::QuadratureBacked;
    const auto [h, phi] = zonal_support(K, f.s, f.sigma);
    h_ = h;
    const double rmax = max_radius(K);
    auto bp = body_;
    eval_ = [bp, f, h, phi, rmax](double z) { return meridian_section(*bp, f, h, phi, rmax, z); };
    delta_ = 0.5 * h_;
    bool singular = false;
    if (has_tips(K)) {
      const double zstar = K.radial_zonal(1.0) * f.s;
      if (zstar < h_ && zstar > 0.0) breaks_.push_back(zstar);
      if (zstar > 0.25 * h_) {
        delta_ = std::min(delta_, 0.8 * zstar);
      } else if (n % 2 == 0) {
        singular = true;
        sing_point_ = zstar;
        sing_power_ = n + 1;
      }
    }
    if (taylor_radius > 0.0) delta_ = taylor_radius;
    build_taylor_fit(singular && sing_point_ < delta_);
    return;
  }
  kind_ = ProfileKind::QuadratureBacked;
  const Support sup = support(K, xi_);
  h_ = sup.h;
  auto bp = body_;
  const Vec x = xi_;
  eval_ = [bp, x, sup](double z) { return hyperplane_section(*bp, x, sup, z); };
  delta_ = 0.5 * h_;
  build_taylor_fit();
}

namespace {

double binom(int b, int i) {
  double c = 1.0;
  for (int j = 0; j < i; ++j) c = c * (b - j) / (j + 1);
  return c;
}

}  // namespace

void SectionProfile::build_taylor_fit(bool singular) {
  // Least squares in v = (z/delta)^2 on Chebyshev points of [0, 1].
  constexpr int J = 10, M = 40;
  if (!singular) sing_power_ = 0;
  const int cols = J + 1 + (singular ? 1 : 0);
  Eigen::MatrixXd V(M, cols);
  Eigen::VectorXd y(M);
  const double zs = sing_point_, b = sing_power_;
  auto psi = [&](double z) { return std::pow(std::fabs(z - zs), b) + std::pow(z + zs, b); };
  const double psi_scale = singular ? 1.0 / std::pow(delta_ + zs, b) : 0.0;
  for (int i = 0; i < M; ++i) {
    const double v = 0.5 * (1.0 - std::cos(kPi * (i + 0.5) / M));
    const double z = delta_ * std::sqrt(v);
    y(i) = eval_(z);
    double vp = 1.0;
    for (int k = 0; k <= J; ++k) {
      V(i, k) = vp;
      vp *= v;
    }
    if (singular) V(i, J + 1) = psi(z) * psi_scale;
  }
  const Eigen::VectorXd d = V.colPivHouseholderQr().solve(y);
  smooth_.assign(J + 1, 0.0);
  for (int k = 0; k <= J; ++k) smooth_[k] = d(k) / std::pow(delta_, 2.0 * k);
  taylor_ = smooth_;
  sing_coef_ = 0.0;
  if (!singular) return;
  sing_coef_ = d(J + 1) * psi_scale;
  // for |z| < z*: psi = 2 sum_j C(b, 2j) z*^{b-2j} z^{2j}
  const int jmax = (sing_power_ - 1) / 2;
  if (static_cast<int>(taylor_.size()) < jmax + 1) taylor_.resize(jmax + 1, 0.0);
  for (int j = 0; j <= jmax; ++j)
    taylor_[j] += sing_coef_ * 2.0 * binom(sing_power_, 2 * j) * std::pow(zs, sing_power_ - 2 * j);
}

double SectionProfile::model_remainder_integral(double q) const {
  int sub = 0;
  while (2.0 * sub < q) ++sub;
  const double delta = std::min(delta_, h_);
  double s = 0.0;
  const std::vector<double>& poly = sing_power_ == 0 ? taylor_ : smooth_;
  for (int k = sub; k < static_cast<int>(poly.size()); ++k)
    s += poly[k] * std::pow(delta, 2.0 * k - q) / (2.0 * k - q);
  if (sing_power_ == 0 || sing_coef_ == 0.0) return s;
  const int b = sing_power_;
  const double zs = sing_point_;
  const double m = std::min(zs, delta);
  // [0, m]: psi is the even polynomial; drop the subtracted terms
  for (int j = sub; 2 * j < b && m > 0.0; ++j)
    s += sing_coef_ * 2.0 * binom(b, 2 * j) * std::pow(zs, b - 2 * j) * std::pow(m, 2.0 * j - q) / (2.0 * j - q);
  if (delta > zs) {
    // [z*, delta]: psi = 2 sum_l C(b, 2l) z*^{2l} z^{b-2l}, minus the subtracted terms
    auto mono = [](double z, double e) { return std::fabs(e) < 1e-14 ? std::log(z) : std::pow(z, e) / e; };
    auto prim = [&](double z) {
      double v = 0.0;
      if (zs == 0.0) return 2.0 * mono(z, b - q);
      for (int l = 0; 2 * l <= b; ++l) v += 2.0 * binom(b, 2 * l) * std::pow(zs, 2 * l) * mono(z, b - 2.0 * l - q);
      for (int j = 0; j < sub && 2 * j < b; ++j)
        v -= 2.0 * binom(b, 2 * j) * std::pow(zs, b - 2 * j) * std::pow(z, 2.0 * j - q) / (2.0 * j - q);
      return v;
    };
    s += sing_coef_ * (prim(delta) - prim(zs));
  }
  return s;
}

double SectionProfile::operator()(double z) const { return eval_(z); }

double section_function(const StarBody& K, const Vec& xi, double z) {
  return SectionProfile(std::make_shared<const StarBody>(K), xi)(z);
}

double regularized_integral(const SectionProfile& A, double q) {
  if (q >= 0.0 && std::fabs(q / 2.0 - std::round(q / 2.0)) < 1e-14)
    throw std::invalid_argument("regularized_integral: q must not be an even nonnegative integer");
  const double h = A.support_radius();
  const double delta = std::min(A.taylor_radius(), h);
  int sub = 0;  // number of subtracted Taylor terms: 2k < q
  while (2.0 * sub < q) ++sub;
  if (sub > A.taylor_order()) throw std::invalid_argument("regularized_integral: Taylor model too short for q");
  auto T = [&](double z) {
    double s = 0.0, zp = 1.0;
    for (int k = 0; k < sub; ++k) {
      s += A.taylor(k) * zp;
      zp *= z * z;
    }
    return s;
  };
  // [0, delta]: the local model minus its subtracted terms
  const double inner = A.model_remainder_integral(q);
  // [delta, h]: quadrature, split at breakpoints
  std::vector<double> cuts{delta};
  for (double b : A.breaks())
    if (b > delta && b < h) cuts.push_back(b);
  cuts.push_back(h);
  double middle = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    middle += tanh_sinh(cuts[i], cuts[i + 1], 1.0 / 32.0).apply([&](double z) {
      return std::pow(z, -1.0 - q) * (A(z) - T(z));
    });
  }
  // [h, inf): A = 0
  double tail = 0.0;
  for (int k = 0; k < sub; ++k) tail -= A.taylor(k) * std::pow(h, 2.0 * k - q) / (q - 2.0 * k);
  return inner + middle + tail;
}

double frac_derivative_at_zero(const SectionProfile& A, double q) {
  if (q >= 0.0 && std::fabs(q - std::round(q)) < 1e-14)
    throw std::invalid_argument("frac_derivative_at_zero: q must not be a nonnegative integer");
  return regularized_integral(A, q) * special::rgamma(-q);
}

FtNormPower ft_norm_power(const StarBody& K, const Vec& xi_in, double p, const SphereRule& rule, double tol) {
  if (!(p > -1.0 && p < 1.0) || p == 0.0) throw std::invalid_argument("ft_norm_power: p must be in (-1, 1), p != 0");
  const int n = K.dim();
  const Vec xi = normalized(xi_in);
  FtNormPower r;
  const double vol = volume(K, rule);
  const double mp = normalized_moment(K, xi, p, rule);
  const double sphere_int = mp * vol * (n + p);
  r.spherical = -kPi / (2.0 * special::gamma(p + 1.0) * std::sin(kPi * p / 2.0)) * sphere_int;
  const SectionProfile A(std::make_shared<const StarBody>(K), xi);
  r.fractional = -kPi * (n + p) / std::sin(kPi * p / 2.0) * frac_derivative_at_zero(A, -p - 1.0);
  r.discrepancy = std::fabs(r.spherical - r.fractional) / std::fabs(r.spherical);
  r.flagged = r.discrepancy > tol;
  return r;
}

double ft_power_from_sections(const SectionProfile& A, double p) {
  const int n = A.body().dim();
  const double q = n - 1 + p;
  return kPi * (n - q - 1.0) / std::cos(kPi * q / 2.0) * frac_derivative_at_zero(A, q);
}

double log_coefficient_even(int n) {
  double f = 1.0;
  for (int k = 2; k <= n - 1; ++k) f *= k;
  return 2.0 * ((n / 2 + 1) % 2 == 0 ? 1.0 : -1.0) * f;
}

double ft_log_from_sections(const SectionProfile& A) {
  const int n = A.body().dim();
  if (n % 2 == 1) {
    // A^{(n-1)}(0) = (n-1)! c_{n-1}
    double f = 1.0;
    for (int k = 2; k <= n - 1; ++k) f *= k;
    const double sign = ((n + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * kPi * f * A.taylor((n - 1) / 2);
  }
  return log_coefficient_even(n) * regularized_integral(A, n - 1.0);
}

double fn_root(double N) {
  if (N == 0.0) return 1.0;
  return std::sqrt((-1.0 + std::sqrt(1.0 + 4.0 * N)) / (2.0 * N));
}

double fn_integral_closed_form(double N, double p) {
  const double a = fn_root(N);
  return 4.0 * kPi / 3.0 *
         (-N * std::pow(a, 1.0 - p) / (1.0 - p) + 1.0 / ((1.0 + p) * std::pow(a, 1.0 + p)) -
          1.0 / ((3.0 + p) * std::pow(a, 3.0 + p)));
}

double fn_integral_printed_form(double N, double p) {
  const double a = fn_root(N);
  return 4.0 * kPi / 3.0 *
         (-N * std::pow(a, 1.0 + p) / (1.0 + p) + 1.0 / ((1.0 + p) * std::pow(a, 1.0 + p)) -
          1.0 / ((3.0 + p) * std::pow(a, 3.0 + p)));
}

double fn_log_integral_closed_form(double N) {
  const double a = fn_root(N);
  return 4.0 * kPi / 3.0 * (-N * a + 1.0 / a - 1.0 / (3.0 * a * a * a));
}

CounterexampleIntegral counterexample_integral(double N, double p) {
  if (!(N > 0.0)) throw std::invalid_argument("counterexample_integral: N must be positive");
  if (!(p > -1.0 && p < 0.0)) throw std::invalid_argument("counterexample_integral: p must be in (-1, 0)");
  CounterexampleIntegral r;
  r.N = N;
  r.p = p;
  r.a_N = fn_root(N);
  const auto body = std::make_shared<const StarBody>(StarBody::fn_body(N, 4));
  const SectionProfile A(body, unit_vector(4, 3));
  r.numeric = regularized_integral(A, 3.0 + p);
  r.closed_form = fn_integral_closed_form(N, p);
  r.printed_closed_form = fn_integral_printed_form(N, p);
  return r;
}

double sign_threshold(const std::function<double(double)>& f, double lo, double hi, double width) {
  const double flo = f(lo), fhi = f(hi);
  if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("sign_threshold: no sign change on the bracket");
  while (hi - lo > width) {
    const double m = 0.5 * (lo + hi);
    ((f(m) > 0.0) == (flo > 0.0) ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace centrobody
