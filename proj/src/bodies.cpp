#include "centrobody/bodies.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "centrobody/special.hpp"

namespace centrobody {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Deterministic representative of {theta, -theta}.
Vec canonical(const Vec& theta, int n) {
  for (int i = 0; i < n; ++i) {
    if (theta[i] > 0.0) return theta;
    if (theta[i] < 0.0) return scaled(theta, -1.0);
  }
  return theta;
}

double poly_derivative(const std::vector<double>& c, double t) {
  double s = 0.0, tp = t;
  for (std::size_t k = 1; k < c.size(); ++k) {
    s += 2.0 * k * c[k] * tp;
    tp *= t * t;
  }
  return s;
}

// Radius r solving (r s)^3 = P(r t) for t, s >= 0.
double revolution_radius(const shape::Revolution& rev, double t, double s) {
  const double a = rev.root;
  if (s <= 0.0) return a;
  if (t <= 0.0) return std::cbrt(rev.profile[0]) / s;
  double lo = 0.0, hi = a / t;
  auto G = [&](double r) {
    const double rs = r * s;
    return rs * rs * rs - eval_even_poly(rev.profile, r * t);
  };
  const double g_hi = G(hi);
  if (g_hi <= 0.0) return hi;
  double r = std::min(hi, std::cbrt(rev.profile[0]) / s);
  for (int it = 0; it < 200; ++it) {
    const double g = G(r);
    if (g == 0.0) return r;
    if (g < 0.0)
      lo = r;
    else
      hi = r;
    const double dg = 3.0 * r * r * s * s * s - t * poly_derivative(rev.profile, r * t);
    double next = (dg > 0.0) ? r - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - r) <= 1e-16 * std::max(1.0, r) || hi - lo <= 4e-16 * hi) {
      r = next;
      break;
    }
    r = next;
  }
  return r;
}

// Natural cubic spline second derivatives for (x, y).
std::vector<double> spline_second(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  std::vector<double> y2(m, 0.0), u(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
    const double p = sig * y2[i - 1] + 2.0;
    y2[i] = (sig - 1.0) / p;
    const double d = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    u[i] = (6.0 * d / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
  }
  y2[m - 1] = 0.0;
  for (std::size_t k = m - 1; k-- > 0;) y2[k] = y2[k] * y2[k + 1] + u[k];
  return y2;
}

double spline_eval(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& y2,
                   double v) {
  const auto it = std::upper_bound(x.begin(), x.end(), v);
  std::size_t hi = std::clamp<std::size_t>(it - x.begin(), 1, x.size() - 1);
  std::size_t lo = hi - 1;
  const double h = x[hi] - x[lo];
  const double a = (x[hi] - v) / h, b = (v - x[lo]) / h;
  return a * y[lo] + b * y[hi] + ((a * a * a - a) * y2[lo] + (b * b * b - b) * y2[hi]) * h * h / 6.0;
}

double cone_interpolate(const shape::RadialGrid& g, int n, const Vec& theta) {
  // Candidates: the 2n nearest nodes (ties broken by node order).
  std::vector<std::pair<double, std::size_t>> near;
  near.reserve(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) near.emplace_back(-dot(g.nodes[i], theta), i);
  const std::size_t keep = std::min<std::size_t>(2 * n, near.size());
  std::partial_sort(near.begin(), near.begin() + keep, near.end());
  if (near[0].first <= -1.0 + 1e-15) return g.samples[near[0].second];
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Eigen::MatrixXd V(n, n);
    Eigen::VectorXd b(n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) V(i, j) = g.nodes[near[pick[j]].second][i];
    for (int i = 0; i < n; ++i) b(i) = theta[i];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
    if (lu.isInvertible()) {
      const Eigen::VectorXd lam = lu.solve(b);
      if (lam.minCoeff() >= -1e-13) {
        double gauge = 0.0;
        for (int j = 0; j < n; ++j) gauge += lam(j) / g.samples[near[pick[j]].second];
        return 1.0 / gauge;
      }
    }
    // next combination of n out of keep
    int k = n - 1;
    while (k >= 0 && pick[k] == static_cast<int>(keep) - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return g.samples[near[0].second];
}

}  // namespace

double eval_even_poly(const std::vector<double>& c, double t) {
  const double t2 = t * t;
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * t2 + c[k];
  return s;
}

double revolution_root(const std::vector<double>& c) {
  require(!c.empty() && c[0] > 0.0, "revolution profile must satisfy P(0) > 0");
  double lo = 0.0;
  double step = 1e-3;
  while (lo < 1e6) {
    const double hi = lo + step;
    if (eval_even_poly(c, hi) <= 0.0) {
      double a = lo, b = hi;
      for (int i = 0; i < 200 && b - a > 1e-16 * b; ++i) {
        const double m = 0.5 * (a + b);
        (eval_even_poly(c, m) > 0.0 ? a : b) = m;
      }
      return eval_even_poly(c, b) == 0.0 ? b : 0.5 * (a + b);
    }
    lo = hi;
    step = 1e-3 * std::max(1.0, lo);
  }
  throw std::invalid_argument("revolution profile has no positive root");
}

int zonal_node_count(int degree) { return std::max(64, 4 * degree); }

double integrate_zonal(int n, int count, const std::function<double(double)>& f) {
  const double a = 0.5 * (n - 3);
  const Rule1D r = gauss_jacobi(count, a, a);
  return special::sphere_area(n - 1) * r.apply(f);
}

StarBody StarBody::ball(int n, double radius) {
  require(n >= 2 && n <= kMaxDim, "dimension must be in [2, 5]");
  require(radius > 0.0 && std::isfinite(radius), "ball radius must be positive");
  StarBody b(n, shape::Ball{radius});
  b.id_ = "ball";
  return b;
}

StarBody StarBody::ellipsoid(int n, const Vec& axes) {
  require(n >= 2 && n <= kMaxDim, "dimension must be in [2, 5]");
  for (int i = 0; i < n; ++i) require(axes[i] > 0.0 && std::isfinite(axes[i]), "semi-axes must be positive");
  Vec a{};
  for (int i = 0; i < n; ++i) a[i] = axes[i];
  StarBody b(n, shape::Ellipsoid{a});
  b.id_ = "ellipsoid";
  return b;
}

StarBody StarBody::lq_ball(int n, double q, double scale) {
  require(n >= 2 && n <= kMaxDim, "dimension must be in [2, 5]");
  require(q > 0.0 && std::isfinite(q), "l_q exponent must be positive");
  require(scale > 0.0 && std::isfinite(scale), "l_q scale must be positive");
  StarBody b(n, shape::LqBall{q, scale});
  b.id_ = "lq_ball";
  b.validate();
  return b;
}

StarBody StarBody::revolution(int n, std::vector<double> profile) {
  require(n >= 2 && n <= kMaxDim, "dimension must be in [2, 5]");
  const double a = revolution_root(profile);
  StarBody b(n, shape::Revolution{std::move(profile), a});
  b.id_ = "revolution";
  b.validate();
  return b;
}

StarBody StarBody::fn_body(double N, int n) {
  require(N >= 0.0, "N must be nonnegative");
  StarBody b = revolution(n, {1.0, -1.0, -N});
  b.id_ = "f_N";
  return b;
}

StarBody StarBody::radial_grid_zonal(int n, const Vec& axis, std::vector<double> t, std::vector<double> samples) {
  require(n >= 2 && n <= kMaxDim, "dimension must be in [2, 5]");
  require(t.size() == samples.size() && t.size() >= 2, "zonal grid needs matching t and samples (>= 2)");
  for (std::size_t i = 0; i < t.size(); ++i) {
    require(t[i] >= 0.0 && t[i] <= 1.0, "zonal grid t values must lie in [0, 1]");
    require(i == 0 || t[i] > t[i - 1], "zonal grid t values must be strictly increasing");
    require(samples[i] > 0.0 && std::isfinite(samples[i]), "radial samples must be positive");
  }
  shape::RadialGrid g;
  g.zonal = true;
  g.axis = normalized(axis);
  g.t = std::move(t);
  g.samples = std::move(samples);
  const bool has_zero = g.t.front() == 0.0;
  for (std::size_t i = g.t.size(); i-- > (has_zero ? 1u : 0u);) {
    g.mirrored_t.push_back(-g.t[i]);
    g.mirrored_samples.push_back(g.samples[i]);
  }
  for (std::size_t i = 0; i < g.t.size(); ++i) {
    g.mirrored_t.push_back(g.t[i]);
    g.mirrored_samples.push_back(g.samples[i]);
  }
  g.second = spline_second(g.mirrored_t, g.mirrored_samples);
  StarBody b(n, std::move(g));
  b.id_ = "radial_grid";
  b.validate();
  return b;
}

StarBody StarBody::radial_grid_nodes(int n, std::vector<Vec> nodes, std::vector<double> samples, int rule_degree) {
  require(n >= 2 && n <= kMaxDim, "dimension must be in [2, 5]");
  require(nodes.size() == samples.size() && nodes.size() >= static_cast<std::size_t>(2 * n),
          "radial grid needs matching nodes and samples");
  shape::RadialGrid g;
  g.zonal = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    require(samples[i] > 0.0 && std::isfinite(samples[i]), "radial samples must be positive");
    require(norm(nodes[i]) > 0.0, "grid nodes must be nonzero");
    nodes[i] = normalized(nodes[i]);
  }
  // Symmetrize so the interpolant is even.
  const std::size_t m = nodes.size();
  for (std::size_t i = 0; i < m; ++i) {
    nodes.push_back(scaled(nodes[i], -1.0));
    samples.push_back(samples[i]);
  }
  g.nodes = std::move(nodes);
  g.samples = std::move(samples);
  g.rule_degree = rule_degree;
  StarBody b(n, std::move(g));
  b.id_ = "radial_grid";
  b.validate();
  return b;
}

StarBody StarBody::perturbed(std::shared_ptr<const StarBody> base, double exponent, double c_base, double c_g,
                             ZonalSeries g) {
  require(base != nullptr, "perturbed body needs a base");
  require(base->is_zonal(), "perturbed body needs a revolution-symmetric base");
  require(exponent != 0.0 && std::isfinite(exponent), "perturbation exponent must be nonzero");
  require(g.dim() == base->dim() || g.empty(), "perturbation series dimension mismatch");
  const int n = base->dim();
  StarBody b(n, shape::Perturbed{std::move(base), exponent, c_base, c_g, std::move(g)});
  b.id_ = "perturbed";
  b.validate();
  return b;
}

ShapeKind StarBody::kind() const { return static_cast<ShapeKind>(shape_.index()); }

StarBody StarBody::with_id(std::string id) const {
  StarBody b = *this;
  b.id_ = std::move(id);
  return b;
}

std::optional<Vec> StarBody::zonal_axis() const {
  return std::visit(
      Overloaded{
          [&](const shape::Ball&) -> std::optional<Vec> { return unit_vector(n_, n_ - 1); },
          [&](const shape::Ellipsoid& e) -> std::optional<Vec> {
            for (int k = n_ - 1; k >= 0; --k) {
              bool others_equal = true;
              double ref = -1.0;
              for (int i = 0; i < n_; ++i) {
                if (i == k) continue;
                if (ref < 0.0) ref = e.semi_axes[i];
                if (e.semi_axes[i] != ref) others_equal = false;
              }
              if (others_equal) return unit_vector(n_, k);
            }
            return std::nullopt;
          },
          [&](const shape::LqBall& l) -> std::optional<Vec> {
            if (l.q == 2.0 || n_ == 2) return unit_vector(n_, n_ - 1);
            return std::nullopt;
          },
          [&](const shape::Revolution&) -> std::optional<Vec> { return unit_vector(n_, n_ - 1); },
          [&](const shape::RadialGrid& g) -> std::optional<Vec> {
            if (g.zonal) return g.axis;
            return std::nullopt;
          },
          [&](const shape::Perturbed& p) -> std::optional<Vec> { return p.base->zonal_axis(); },
      },
      shape_);
}

double StarBody::shape_radial_zonal(double t) const {
  t = std::min(1.0, std::fabs(t));
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  return std::visit(
      Overloaded{
          [&](const shape::Ball& b) { return b.radius; },
          [&](const shape::Ellipsoid& e) {
            const Vec ax = *zonal_axis();
            int k = 0;
            for (int i = 0; i < n_; ++i)
              if (ax[i] != 0.0) k = i;
            const double ak = e.semi_axes[k];
            const double b = e.semi_axes[k == 0 ? 1 : 0];
            return 1.0 / std::sqrt(t * t / (ak * ak) + s * s / (b * b));
          },
          [&](const shape::LqBall& l) {
            if (l.q == 2.0) return l.scale;
            const double m = std::max(t, s);
            return l.scale / (m * std::pow(std::pow(t / m, l.q) + std::pow(s / m, l.q), 1.0 / l.q));
          },
          [&](const shape::Revolution& r) { return revolution_radius(r, t, s); },
          [&](const shape::RadialGrid& g) { return spline_eval(g.mirrored_t, g.mirrored_samples, g.second, t); },
          [&](const shape::Perturbed& p) {
            const double rb = p.base->radial_zonal(t);
            const double inner = p.c_base * std::pow(rb, p.exponent) + p.c_g * p.g(t);
            return std::pow(inner, 1.0 / p.exponent);
          },
      },
      shape_);
}

double StarBody::radial_zonal(double t) const {
  if (!is_zonal()) throw std::logic_error("radial_zonal called on a body without symmetry axis");
  return scale_ * shape_radial_zonal(t);
}

double StarBody::shape_radial(const Vec& theta) const {
  return std::visit(
      Overloaded{
          [&](const shape::Ball& b) { return b.radius; },
          [&](const shape::Ellipsoid& e) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += theta[i] * theta[i] / (e.semi_axes[i] * e.semi_axes[i]);
            return 1.0 / std::sqrt(s);
          },
          [&](const shape::LqBall& l) {
            double m = 0.0;
            for (int i = 0; i < n_; ++i) m = std::max(m, std::fabs(theta[i]));
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += std::pow(std::fabs(theta[i]) / m, l.q);
            return l.scale / (m * std::pow(s, 1.0 / l.q));
          },
          [&](const shape::Revolution& r) {
            double s2 = 0.0;
            for (int i = 0; i + 1 < n_; ++i) s2 += theta[i] * theta[i];
            return revolution_radius(r, std::fabs(theta[n_ - 1]), std::sqrt(s2));
          },
          [&](const shape::RadialGrid& g) {
            if (g.zonal) return spline_eval(g.mirrored_t, g.mirrored_samples, g.second, std::fabs(dot(theta, g.axis)));
            return cone_interpolate(g, n_, theta);
          },
          [&](const shape::Perturbed& p) {
            const double rb = p.base->radial(theta);
            const double inner = p.c_base * std::pow(rb, p.exponent) + p.c_g * p.g(dot(theta, *p.base->zonal_axis()));
            return std::pow(inner, 1.0 / p.exponent);
          },
      },
      shape_);
}

double StarBody::radial(const Vec& theta) const {
  const Vec u = canonical(normalized(theta), n_);
  return scale_ * shape_radial(u);
}

double StarBody::gauge(const Vec& x) const {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  return r / radial(scaled(x, 1.0 / r));
}

StarBody StarBody::dilate(double lambda) const {
  require(lambda > 0.0 && std::isfinite(lambda), "dilation factor must be positive");
  StarBody b = *this;
  if (auto* s = std::get_if<shape::Ball>(&b.shape_)) {
    s->radius *= lambda;
  } else if (auto* e = std::get_if<shape::Ellipsoid>(&b.shape_)) {
    for (int i = 0; i < n_; ++i) e->semi_axes[i] *= lambda;
  } else if (auto* l = std::get_if<shape::LqBall>(&b.shape_)) {
    l->scale *= lambda;
  } else {
    b.scale_ *= lambda;
  }
  return b;
}

std::optional<double> StarBody::closed_form_volume() const {
  const double sn = std::pow(scale_, n_);
  return std::visit(
      Overloaded{
          [&](const shape::Ball& b) -> std::optional<double> {
            return sn * special::ball_volume(n_) * std::pow(b.radius, n_);
          },
          [&](const shape::Ellipsoid& e) -> std::optional<double> {
            double p = special::ball_volume(n_);
            for (int i = 0; i < n_; ++i) p *= e.semi_axes[i];
            return sn * p;
          },
          [&](const shape::LqBall& l) -> std::optional<double> {
            const double v = std::pow(2.0 * special::gamma(1.0 + 1.0 / l.q), n_) / special::gamma(1.0 + n_ / l.q);
            return sn * v * std::pow(l.scale, n_);
          },
          [&](const shape::Revolution& r) -> std::optional<double> {
            const double kappa = special::ball_volume(n_ - 1);
            double integral = 0.0;
            if (n_ == 4) {
              double ap = r.root;
              for (std::size_t k = 0; k < r.profile.size(); ++k) {
                integral += r.profile[k] * ap / (2.0 * k + 1.0);
                ap *= r.root * r.root;
              }
            } else {
              const double e = (n_ - 1) / 3.0;
              integral = tanh_sinh(0.0, r.root, 1.0 / 64.0).apply([&](double z) {
                return std::pow(std::max(0.0, eval_even_poly(r.profile, z)), e);
              });
            }
            return sn * 2.0 * kappa * integral;
          },
          [&](const shape::RadialGrid&) -> std::optional<double> { return std::nullopt; },
          [&](const shape::Perturbed&) -> std::optional<double> { return std::nullopt; },
      },
      shape_);
}

double StarBody::revolution_residual(const Vec& theta) const {
  const auto* r = std::get_if<shape::Revolution>(&shape_);
  if (!r) throw std::logic_error("revolution_residual needs a revolution body");
  const Vec u = canonical(normalized(theta), n_);
  const double rad = shape_radial(u);
  double s2 = 0.0;
  for (int i = 0; i + 1 < n_; ++i) s2 += u[i] * u[i];
  const double t = std::fabs(u[n_ - 1]);
  return std::fabs(rad * std::sqrt(s2) - std::cbrt(eval_even_poly(r->profile, rad * t)));
}

void StarBody::validate() const {
  const SphereRule probe = sphere_rule(n_, 10);
  for (const Vec& v : probe.nodes) {
    const double r = radial(v);
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radial function not positive and finite on probe grid");
  }
  for (int k = 0; k < n_; ++k) {
    const double r = radial(unit_vector(n_, k));
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radial function not positive and finite on probe grid");
  }
  if (const auto* rev = std::get_if<shape::Revolution>(&shape_)) {
    // Star-shapedness: (r s)^3 - P(r t) must change sign once along each probe ray.
    for (int i = 1; i < 64; ++i) {
      const double t = std::cos(0.5 * special::kPi * i / 64.0);
      const double s = std::sqrt(1.0 - t * t);
      const double hi = rev->root / t;
      int changes = 0;
      double prev = -rev->profile[0];
      for (int j = 1; j <= 256; ++j) {
        const double r = hi * j / 256.0;
        const double g = std::pow(r * s, 3) - eval_even_poly(rev->profile, r * t);
        if ((g > 0.0) != (prev > 0.0)) ++changes;
        prev = g;
      }
      if (changes > 1) throw std::invalid_argument("revolution profile does not define a star body");
    }
  }
}

double volume(const StarBody& body, const SphereRule& rule) {
  const int n = body.dim();
  if (rule.dim != n) throw std::invalid_argument("volume: rule dimension does not match body");
  if (body.is_zonal())
    return integrate_zonal(n, zonal_node_count(rule.degree), [&](double t) { return std::pow(body.radial_zonal(t), n); }) / n;
  return integrate_sphere(rule, [&](const Vec& th) { return std::pow(body.radial(th), n); }) / n;
}

double volume(const StarBody& body) {
  if (auto v = body.closed_form_volume()) return *v;
  const int n = body.dim();
  if (body.is_zonal())
    return integrate_zonal(n, 800, [&](double t) { return std::pow(body.radial_zonal(t), n); }) / n;
  const int degree = n <= 3 ? 80 : (n == 4 ? 40 : 24);
  return volume(body, sphere_rule(n, degree));
}

}  // namespace centrobody
