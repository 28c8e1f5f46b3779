#include "centrobody/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>
#include <sstream>
#include <stdexcept>

#include "centrobody/bodies.hpp"
#include "centrobody/special.hpp"

namespace centrobody {

std::array<Vec, kMaxDim> orthonormal_complement(const Vec& xi, int n) {
  // Householder H = I - 2 v v^T / (v^T v) with v = xi - sign(xi_k) e_k maps
  // e_k to -sign * xi; the other columns of H span xi^perp.
  int k = 0;
  for (int i = 1; i < n; ++i)
    if (std::fabs(xi[i]) > std::fabs(xi[k])) k = i;
  const double sgn = xi[k] >= 0.0 ? 1.0 : -1.0;
  Vec v = xi;
  v[k] += sgn;
  const double vv = dot(v, v);
  std::array<Vec, kMaxDim> out{};
  int slot = 0;
  for (int j = 0; j < n; ++j) {
    if (j == k) continue;
    Vec col{};
    col[j] = 1.0;
    const double c = 2.0 * v[j] / vv;
    for (int i = 0; i < n; ++i) col[i] -= c * v[i];
    out[slot++] = col;
  }
  return out;
}

static Rule1D gauss_jacobi_uncached(int count, double alpha, double beta) {
  if (count < 1) throw std::invalid_argument("gauss_jacobi: count must be positive");
  if (alpha <= -1.0 || beta <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(count), sub(std::max(count - 1, 1));
  for (int k = 0; k < count; ++k) {
    if (k == 0) {
      diag[k] = (beta - alpha) / (ab + 2.0);
    } else {
      const double d = 2.0 * k + ab;
      diag[k] = (beta * beta - alpha * alpha) / (d * (d + 2.0));
    }
  }
  // one extra coefficient, so the degree-count polynomial can be evaluated for Newton polishing
  std::vector<double> off(count);
  for (int k = 1; k <= count; ++k) {
    double b;
    if (k == 1) {
      b = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double d = 2.0 * k + ab;
      b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (d * d * (d + 1.0) * (d - 1.0));
    }
    off[k - 1] = std::sqrt(b);
    if (k < count) sub[k - 1] = off[k - 1];
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * special::beta(alpha + 1.0, beta + 1.0);
  Rule1D r;
  r.x.resize(count);
  r.w.resize(count);
  if (count == 1) {
    r.x[0] = diag[0];
    r.w[0] = mu0;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(count - 1), Eigen::EigenvaluesOnly);
  // Christoffel weights 1 / sum_k q_k(x)^2 over the orthonormal recurrence.
  for (int i = 0; i < count; ++i) {
    double x = es.eigenvalues()[i];
    for (int it = 0; it < 2; ++it) {
      double q0 = 0.0, q1 = 1.0, d0 = 0.0, d1 = 0.0;
      for (int k = 0; k < count; ++k) {
        const double s0 = k > 0 ? off[k - 1] : 0.0;
        const double q2 = ((x - diag[k]) * q1 - s0 * q0) / off[k];
        const double d2 = ((x - diag[k]) * d1 + q1 - s0 * d0) / off[k];
        q0 = q1, q1 = q2, d0 = d1, d1 = d2;
      }
      if (d1 == 0.0 || !std::isfinite(q1 / d1)) break;
      const double step = q1 / d1;
      if (std::fabs(step) > 1e-8 * (1.0 + std::fabs(x))) break;
      x -= step;
    }
    x = std::clamp(x, -1.0, 1.0);
    double prev = 0.0, cur = 1.0 / std::sqrt(mu0), sum = cur * cur;
    for (int k = 0; k + 1 < count; ++k) {
      const double next = ((x - diag[k]) * cur - (k > 0 ? sub[k - 1] : 0.0) * prev) / sub[k];
      prev = cur;
      cur = next;
      sum += cur * cur;
    }
    r.x[i] = x;
    r.w[i] = 1.0 / sum;
  }
  // Symmetric weights: enforce exact antisymmetry of nodes.
  if (alpha == beta) {
    for (int i = 0; i < count / 2; ++i) {
      const int j = count - 1 - i;
      const double x = 0.5 * (r.x[j] - r.x[i]);
      const double w = 0.5 * (r.w[i] + r.w[j]);
      r.x[i] = -x;
      r.x[j] = x;
      r.w[i] = r.w[j] = w;
    }
    if (count % 2 == 1) r.x[count / 2] = 0.0;
  }
  return r;
}

Rule1D gauss_jacobi(int count, double alpha, double beta) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, Rule1D> cache;
  const auto key = std::make_tuple(count, alpha, beta);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Rule1D r = gauss_jacobi_uncached(count, alpha, beta);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 256) cache.clear();
  return cache.emplace(key, std::move(r)).first->second;
}

Rule1D gauss_legendre(int count, double a, double b) {
  Rule1D r = gauss_legendre(count);
  const double h = 0.5 * (b - a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.x[i] = a + h * (r.x[i] + 1.0);
    r.w[i] *= h;
  }
  return r;
}

Rule1D tanh_sinh(double a, double b, double h) {
  Rule1D r;
  const double half = 0.5 * (b - a);
  const double pi2 = 0.5 * special::kPi;
  const int kmax = static_cast<int>(std::ceil(4.0 / h));
  for (int k = -kmax; k <= kmax; ++k) {
    const double s = k * h;
    const double u = pi2 * std::sinh(s);
    const double ch = std::cosh(u);
    const double w = h * pi2 * std::cosh(s) / (ch * ch) * half;
    if (w < 1e-300) continue;
    // distance to the nearer endpoint, computed without cancellation
    const double dist = 2.0 * half / (1.0 + std::exp(2.0 * std::fabs(u)));
    if (dist <= 0.0) continue;
    r.x.push_back(u >= 0.0 ? b - dist : a + dist);
    r.w.push_back(w);
  }
  return r;
}

SphereRule sphere_rule_unchecked(int n, int degree) {
  SphereRule rule;
  rule.dim = n;
  rule.degree = degree;
  rule.kind = RuleKind::ProductGauss;
  if (n == 1) {
    Vec a{}, b{};
    a[0] = 1.0;
    b[0] = -1.0;
    rule.nodes = {a, b};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (n == 2) {
    const int count = 2 * ((degree + 1) / 2) + 2;
    for (int j = 0; j < count; ++j) {
      const double phi = 2.0 * special::kPi * j / count;
      Vec v{};
      v[0] = std::cos(phi);
      v[1] = std::sin(phi);
      rule.nodes.push_back(v);
      rule.weights.push_back(2.0 * special::kPi / count);
    }
    return rule;
  }
  const double a = 0.5 * (n - 3);
  const Rule1D polar = gauss_jacobi((degree + 2) / 2, a, a);
  const SphereRule inner = sphere_rule_unchecked(n - 1, degree);
  for (std::size_t i = 0; i < polar.size(); ++i) {
    const double t = polar.x[i];
    const double c = std::sqrt(1.0 - t * t);
    for (std::size_t j = 0; j < inner.size(); ++j) {
      Vec v{};
      for (int k = 0; k + 1 < n; ++k) v[k] = c * inner.nodes[j][k];
      v[n - 1] = t;
      rule.nodes.push_back(v);
      rule.weights.push_back(polar.w[i] * inner.weights[j]);
    }
  }
  return rule;
}

SphereRule sphere_rule(int n, int degree) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("sphere_rule: dimension must be in [2, 5]");
  if (degree < 2) throw std::invalid_argument("sphere_rule: degree must be at least 2");
  return sphere_rule_unchecked(n, degree);
}

double integrate_sphere(const SphereRule& rule, const std::function<double(const Vec&)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrate_sphere: non-finite integrand at direction (";
      for (int k = 0; k < rule.dim; ++k) os << (k ? ", " : "") << rule.nodes[i][k];
      os << ")";
      throw std::domain_error(os.str());
    }
    s += rule.weights[i] * v;
  }
  return s;
}

std::string rule_to_csv(const SphereRule& rule) {
  std::ostringstream os;
  for (int k = 0; k < rule.dim; ++k) os << "x" << k << ",";
  os << "weight\n";
  char buf[64];
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (int k = 0; k < rule.dim; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,", rule.nodes[i][k]);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", rule.weights[i]);
    os << buf;
  }
  return os.str();
}

namespace {

constexpr double kSplit = 0.5;

// [kSplit, 1] panel: Gauss-Jacobi carrying (1-t)^beta; `kernel` multiplies
// the remaining smooth factor (1+t)^beta.
void append_outer_panel(Rule1D& r, int n, int count, const std::function<double(double)>& kernel) {
  const double beta = 0.5 * (n - 3);
  const Rule1D gj = gauss_jacobi(count, beta, 0.0);
  const double half = 0.5 * (1.0 - kSplit);
  const double scale = std::pow(half, beta + 1.0);
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const double t = 1.0 - half * (1.0 - gj.x[i]);
    const double w = gj.w[i] * scale * kernel(t) * std::pow(1.0 + t, beta);
    r.x.push_back(t);
    r.w.push_back(w);
    r.x.push_back(-t);
    r.w.push_back(w);
  }
}

}  // namespace

Rule1D fold_even(const Rule1D& r) {
  std::vector<std::pair<double, double>> v;
  v.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) v.emplace_back(std::fabs(r.x[i]), r.w[i]);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Rule1D out;
  for (const auto& [x, w] : v) {
    if (!out.x.empty() && out.x.back() == x) {
      out.w.back() += w;
    } else {
      out.x.push_back(x);
      out.w.push_back(w);
    }
  }
  return out;
}

Rule1D slice_rule_smooth(int n, int count) {
  const double a = 0.5 * (n - 3);
  return gauss_jacobi(count, a, a);
}

Rule1D slice_rule_power(double p, int n, int count) {
  if (!(p > -1.0)) throw std::invalid_argument("slice_rule_power: exponent must exceed -1");
  const double beta = 0.5 * (n - 3);
  Rule1D r;
  const Rule1D gj = gauss_jacobi(count, 0.0, p);
  const double half = 0.5 * kSplit;
  const double scale = std::pow(half, p + 1.0);
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const double t = half * (1.0 + gj.x[i]);
    const double w = gj.w[i] * scale * std::pow(1.0 - t * t, beta);
    r.x.push_back(t);
    r.w.push_back(w);
    r.x.push_back(-t);
    r.w.push_back(w);
  }
  append_outer_panel(r, n, count, [p](double t) { return std::pow(t, p); });
  return r;
}

Rule1D slice_rule_log(int n, int count) {
  const double beta = 0.5 * (n - 3);
  Rule1D r;
  constexpr double ratio = 0.25;
  double hi = kSplit;
  int panel = 0;
  while (hi > 1e-17) {
    const double lo = hi * ratio;
    const int m = std::max(6, count / 2 - panel);
    const Rule1D gl = gauss_legendre(m, lo, hi);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double t = gl.x[i];
      const double w = gl.w[i] * std::log(t) * std::pow(1.0 - t * t, beta);
      r.x.push_back(t);
      r.w.push_back(w);
      r.x.push_back(-t);
      r.w.push_back(w);
    }
    hi = lo;
    ++panel;
  }
  // [0, hi]: int ln t dt = hi (ln hi - 1), h ~ h(0)
  const double w0 = hi * (std::log(hi) - 1.0);
  r.x.push_back(0.5 * hi);
  r.w.push_back(w0);
  r.x.push_back(-0.5 * hi);
  r.w.push_back(w0);
  append_outer_panel(r, n, count, [](double t) { return std::log(t); });
  return r;
}

double singular_moment(double p, int n, const std::function<double(double)>& h, int count) {
  if (!(p > -1.0)) throw std::invalid_argument("singular_moment: p <= -1 diverges");
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("singular_moment: dimension must be in [2, 5]");
  return slice_rule_power(p, n, count).apply(h);
}

Rule1D zonal_inner_rule(int n, int count) {
  if (n == 2) return Rule1D{{1.0, -1.0}, {1.0, 1.0}};
  const double a = 0.5 * (n - 4);
  Rule1D r = gauss_jacobi(count, a, a);
  const double area = special::sphere_area(n - 2);
  for (double& w : r.w) w *= area;
  return r;
}

// ---------------------------------------------------------------------------

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  // splitmix64 finalizer over (seed, counter)
  std::uint64_t z = seed_ * 0x9E3779B97F4A7C15ULL + counter * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t k) const {
  const double u1 = uniform(2 * (k / 2) * 2 + 0);
  const double u2 = uniform(2 * (k / 2) * 2 + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * special::kPi * u2;
  return (k % 2 == 0) ? r * std::cos(a) : r * std::sin(a);
}

Vec random_direction(const CounterRng& rng, int n, std::uint64_t k) {
  Vec v{};
  for (int i = 0; i < n; ++i) v[i] = rng.normal(static_cast<std::uint64_t>(k) * 6 + i);
  return normalized(v);
}

McEstimate mc_body_integral(const StarBody& body, const std::function<double(const Vec&)>& f,
                            long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_body_integral: samples must be positive");
  const int n = body.dim();
  const CounterRng rng(seed);
  const double area = special::sphere_area(n);
  double sum = 0.0, sum2 = 0.0;
  for (long k = 0; k < samples; ++k) {
    const std::uint64_t base = static_cast<std::uint64_t>(k) * 8;
    Vec theta{};
    for (int i = 0; i < n; ++i) theta[i] = rng.normal(base + i);
    theta = normalized(theta);
    const double u = rng.uniform((base + 7) * 2 + 1);
    const double rho = body.radial(theta);
    const double r = rho * std::pow(u, 1.0 / n);
    const double v = area * std::pow(rho, n) / n * f(scaled(theta, r));
    sum += v;
    sum2 += v * v;
  }
  McEstimate e;
  e.estimate = sum / samples;
  const double var = std::max(0.0, sum2 / samples - e.estimate * e.estimate);
  e.std_error = std::sqrt(var / samples);
  return e;
}

}  // namespace centrobody
