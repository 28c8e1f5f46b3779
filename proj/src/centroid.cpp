#include "centrobody/centroid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "centrobody/parallel.hpp"

namespace centrobody {
namespace {

void check_p(double p, bool allow_zero) {
  if (!(p > -1.0 && p < 1.0)) throw std::invalid_argument("p must lie in (-1, 1)");
  if (!allow_zero && p == 0.0) throw std::invalid_argument("p = 0 is the logarithmic case");
}

// Precomputed rules for int_S k(<theta, xi>) rho^e d theta.
struct DirectionIntegrator {
  const StarBody& body;
  int n;
  bool zonal;
  Vec axis{};
  Rule1D slice;  // folded onto t >= 0
  Rule1D tau;
  SphereRule inner;

  DirectionIntegrator(const StarBody& K, const Rule1D& full_slice, const MomentResolution& res)
      : body(K), n(K.dim()), zonal(K.is_zonal()), slice(fold_even(full_slice)) {
    if (zonal) {
      axis = *K.zonal_axis();
      tau = zonal_inner_rule(n, res.tau_count);
    } else {
      inner = sphere_rule_unchecked(n - 1, res.inner_degree);
    }
  }

  double operator()(const Vec& xi, double e) const {
    if (zonal) {
      const double s = dot(xi, axis);
      return integrate_sliced_zonal(slice, tau, s, [&](double t) { return std::pow(body.radial_zonal(t), e); });
    }
    SlicedSphere ss{n, slice, inner};
    return integrate_sliced(ss, xi, [&](const Vec& th) { return std::pow(body.radial(th), e); });
  }
};

// int_S F(rho_K, rho_L) over the sphere; 1-D when both share an axis.
template <class F>
double integrate_pair(const StarBody& K, const StarBody& L, const SphereRule& rule, F&& f) {
  const int n = K.dim();
  const auto ak = K.zonal_axis(), al = L.zonal_axis();
  if (ak && al && *ak == *al)
    return integrate_zonal(n, zonal_node_count(rule.degree),
                           [&](double t) { return f(K.radial_zonal(t), L.radial_zonal(t)); });
  return integrate_sphere(rule, [&](const Vec& th) { return f(K.radial(th), L.radial(th)); });
}

template <class F>
double integrate_body(const StarBody& K, const SphereRule& rule, F&& f) {
  return integrate_pair(K, K, rule, [&](double r, double) { return f(r); });
}

struct MomentEngine {
  const StarBody& K;
  double p;
  double vol;
  DirectionIntegrator integ;
  double log_shift = 0.0;  // (1/(n vol)) int rho^n ln rho - 1/n

  static Rule1D slice_for(double p, int n, int count) {
    return p == 0.0 ? slice_rule_log(n, count) : slice_rule_power(p, n, count);
  }

  MomentEngine(const StarBody& body, double p_, const SphereRule& rule, const MomentResolution& res)
      : K(body), p(p_), vol(volume(body, rule)), integ(body, slice_for(p_, body.dim(), res.slice_count), res) {
    const int n = K.dim();
    if (p == 0.0)
      log_shift = integrate_body(K, rule, [&](double r) { return std::pow(r, n) * std::log(r); }) / (n * vol) -
                  1.0 / n;
  }

  // m_p, or the mean log at p = 0
  double moment(const Vec& xi) const {
    const int n = K.dim();
    if (p == 0.0) return integ(xi, n) / (n * vol) + log_shift;
    return integ(xi, n + p) / ((n + p) * vol);
  }

  double gauge_from_moment(double m) const { return p == 0.0 ? std::exp(m) : std::pow(m, 1.0 / p); }
};

using Key = std::array<long long, kMaxDim>;

Key direction_key(const Vec& v, int n) {
  Vec c = v;
  for (int i = 0; i < n; ++i) {
    if (c[i] > 1e-13) break;
    if (c[i] < -1e-13) {
      c = scaled(c, -1.0);
      break;
    }
  }
  Key k{};
  for (int i = 0; i < n; ++i) k[i] = std::llround(c[i] * 1e11);
  return k;
}

}  // namespace

MomentResolution MomentResolution::from_degree(int degree, double refine) {
  MomentResolution r;
  r.slice_count = static_cast<int>(std::ceil(refine * std::max(24, degree / 2 + 12)));
  r.inner_degree = static_cast<int>(std::ceil(refine * std::max(12, degree)));
  r.tau_count = static_cast<int>(std::ceil(refine * std::max(24, degree / 2 + 12)));
  return r;
}

double normalized_moment(const StarBody& K, const Vec& xi, double p, const SphereRule& rule) {
  check_p(p, false);
  const MomentEngine eng(K, p, rule, MomentResolution::from_degree(rule.degree));
  return eng.moment(normalized(xi));
}

double mean_log(const StarBody& K, const Vec& xi, const SphereRule& rule) {
  const MomentEngine eng(K, 0.0, rule, MomentResolution::from_degree(rule.degree));
  return eng.moment(normalized(xi));
}

double gauge_polar_centroid(const StarBody& K, const Vec& xi, double p, const SphereRule& rule) {
  check_p(p, true);
  const MomentEngine eng(K, p, rule, MomentResolution::from_degree(rule.degree));
  return eng.gauge_from_moment(eng.moment(normalized(xi)));
}

GaugeSamples gauge_samples(const StarBody& K, double p, const SphereRule& rule, const MomentResolution& res) {
  check_p(p, true);
  if (rule.dim != K.dim()) throw std::invalid_argument("gauge_samples: rule dimension does not match body");
  const MomentEngine eng(K, p, rule, res);
  const std::size_t m = rule.size();
  // Representatives: distinct |<xi, axis>| for revolution bodies, antipodal
  // classes otherwise.
  std::vector<std::size_t> rep_of(m);
  std::vector<Vec> reps;
  if (K.is_zonal()) {
    const Vec axis = *K.zonal_axis();
    std::map<long long, std::size_t> seen;
    for (std::size_t i = 0; i < m; ++i) {
      const double s = std::fabs(dot(rule.nodes[i], axis));
      const long long key = std::llround(s * 1e12);
      auto [it, fresh] = seen.emplace(key, reps.size());
      if (fresh) {
        // Canonical direction with the same |s|.
        Vec v = scaled(axis, s);
        const auto perp = orthonormal_complement(axis, K.dim());
        v = axpy(std::sqrt(std::max(0.0, 1.0 - s * s)), perp[0], v);
        reps.push_back(v);
      }
      rep_of[i] = it->second;
    }
  } else {
    std::map<Key, std::size_t> seen;
    for (std::size_t i = 0; i < m; ++i) {
      auto [it, fresh] = seen.emplace(direction_key(rule.nodes[i], K.dim()), reps.size());
      if (fresh) reps.push_back(rule.nodes[i]);
      rep_of[i] = it->second;
    }
  }
  std::vector<double> rep_moment(reps.size());
  parallel_for(reps.size(), [&](std::size_t j) { rep_moment[j] = eng.moment(reps[j]); });
  GaugeSamples out;
  out.p = p;
  out.body_id = K.id();
  out.rule = rule;
  out.values.resize(m);
  out.moment_values.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.moment_values[i] = rep_moment[rep_of[i]];
    out.values[i] = eng.gauge_from_moment(out.moment_values[i]);
  }
  return out;
}

GaugeSamples gauge_samples(const StarBody& K, double p, const SphereRule& rule) {
  return gauge_samples(K, p, rule, MomentResolution::from_degree(rule.degree));
}

InclusionResult check_inclusion(const StarBody& K, const StarBody& L, double p, const SphereRule& rule,
                                bool estimate_error) {
  if (K.dim() != L.dim()) throw std::invalid_argument("check_inclusion: bodies differ in dimension");
  const auto res = MomentResolution::from_degree(rule.degree);
  const GaugeSamples gk = gauge_samples(K, p, rule, res);
  const GaugeSamples gl = gauge_samples(L, p, rule, res);
  InclusionResult r;
  r.margin = HUGE_VAL;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double gap = gk.values[i] - gl.values[i];
    if (gap < r.margin) {
      r.margin = gap;
      r.worst_index = i;
    }
  }
  r.worst_direction = rule.nodes[r.worst_index];
  r.holds = r.margin >= 0.0;
  if (estimate_error) {
    const auto fine = MomentResolution::from_degree(rule.degree, 1.5);
    const GaugeSamples fk = gauge_samples(K, p, rule, fine);
    const GaugeSamples fl = gauge_samples(L, p, rule, fine);
    double ek = 0.0, el = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      ek = std::max(ek, std::fabs(fk.values[i] - gk.values[i]));
      el = std::max(el, std::fabs(fl.values[i] - gl.values[i]));
    }
    r.error_estimate = ek + el;
  }
  r.gauge_K = gk.values;
  r.gauge_L = gl.values;
  return r;
}

double moment_identity_residual(const StarBody& K, double p, const SphereRule& rule) {
  check_p(p, true);
  const int n = K.dim();
  const double vol = volume(K);
  if (p == 0.0) {
    // int_K ln||x||_K dx = int_S int_0^rho ln(r/rho) r^{n-1} dr = -(1/n^2) int_S rho^n
    const double v = -integrate_body(K, rule, [&](double r) { return std::pow(r, n); }) / (n * n) / vol;
    return std::fabs(v + 1.0 / n);
  }
  const double v = integrate_body(K, rule, [&](double r) { return std::pow(r, n); }) / (n + p) / vol;
  return std::fabs(v - n / (n + p));
}

MpBound mp_bound_check(const StarBody& K, const StarBody& L, double p, const SphereRule& rule, double tol) {
  check_p(p, true);
  if (K.dim() != L.dim()) throw std::invalid_argument("mp_bound_check: bodies differ in dimension");
  const int n = K.dim();
  const double vk = volume(K, rule), vl = volume(L, rule);
  MpBound b;
  if (p == 0.0) {
    const double I = integrate_pair(K, L, rule, [&](double rk, double rl) {
      const double rn = std::pow(rl, n);
      return rn * std::log(rl) / n - rn / (n * n) - rn * std::log(rk) / n;
    });
    b.lhs = I / vl;
    b.rhs = -1.0 / n + (std::log(vl) - std::log(vk)) / n;
    b.satisfied = b.lhs >= b.rhs - tol * std::max(1.0, std::fabs(b.rhs));
    return b;
  }
  const double I = integrate_pair(K, L, rule, [&](double rk, double rl) {
    return std::pow(rl, n + p) / ((n + p) * std::pow(rk, p));
  });
  if (p > 0.0) {
    b.lhs = I / vl;
    b.rhs = n / (n + p) * std::pow(vl / vk, p / n);
    b.satisfied = b.lhs >= b.rhs * (1.0 - tol);
  } else {
    b.lhs = I;
    b.rhs = n / (n + p) * std::pow(vl, (n + p) / n) * std::pow(vk, -p / n);
    b.satisfied = b.lhs <= b.rhs * (1.0 + tol);
  }
  return b;
}

}  // namespace centrobody
