#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "centrobody/vec.hpp"

namespace centrobody {

class StarBody;

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }
  template <class F>
  double apply(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    return s;
  }
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1 (Golub-Welsch).
Rule1D gauss_jacobi(int count, double alpha, double beta);
inline Rule1D gauss_legendre(int count) { return gauss_jacobi(count, 0.0, 0.0); }

/// Gauss-Legendre mapped to [a, b].
Rule1D gauss_legendre(int count, double a, double b);

/// Double-exponential (tanh-sinh) rule on [a, b]; robust to algebraic
/// endpoint singularities. `h` is the step in the transformed variable.
Rule1D tanh_sinh(double a, double b, double h = 1.0 / 16.0);

enum class RuleKind { ProductGauss, RevolutionReduced, MonteCarlo };

/// Quadrature rule on S^{n-1}. Nodes closed under antipodes; weights sum to
/// |S^{n-1}|.
struct SphereRule {
  int dim = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;
  int degree = 0;
  RuleKind kind = RuleKind::ProductGauss;

  std::size_t size() const { return nodes.size(); }
};

/// Product rule exact for polynomials of total degree <= `degree` on S^{n-1},
/// 2 <= n <= 5. The polar coordinate is taken along e_n: S^{n-1} is built from
/// Gauss-Gegenbauer nodes t = <theta, e_n> and an S^{n-2} rule.
SphereRule sphere_rule(int n, int degree);

/// Same construction without the public dimension check; n = 1 gives S^0.
SphereRule sphere_rule_unchecked(int n, int degree);

/// Sum of w_i f(theta_i). Throws std::domain_error naming the direction when
/// f is non-finite at a node.
double integrate_sphere(const SphereRule& rule, const std::function<double(const Vec&)>& f);

/// CSV dump (components..., weight) for debugging.
std::string rule_to_csv(const SphereRule& rule);

// ---------------------------------------------------------------------------
// Slice rules: a slice rule integrates int_{-1}^{1} k(t) (1-t^2)^{(n-3)/2} h(t) dt
// for smooth h. With t = <theta, xi> this is the one-dimensional form of a
// spherical integral of k(<theta, xi>) against a function averaged over the
// (n-2)-sphere of directions orthogonal to xi.

/// Folds a symmetric rule onto x >= 0 (weights of x and -x merged); valid for
/// even integrands.
Rule1D fold_even(const Rule1D& r);

/// k(t) = 1.
Rule1D slice_rule_smooth(int n, int count);

/// k(t) = |t|^p, p > -1. Gauss-Jacobi panels carry the |t|^p factor on
/// [0, 1/2] and the endpoint factor (1-t)^{(n-3)/2} on [1/2, 1].
Rule1D slice_rule_power(double p, int n, int count);

/// k(t) = ln|t|. Geometrically graded Gauss-Legendre panels toward t = 0,
/// with the innermost panel integrated against h(0) in closed form.
Rule1D slice_rule_log(int n, int count);

/// int_{-1}^{1} |t|^p (1-t^2)^{(n-3)/2} h(t) dt. Throws for p <= -1.
double singular_moment(double p, int n, const std::function<double(double)>& h, int count = 48);

/// Rule on S^{n-2} (embedded in xi^perp) used for the inner average of the
/// sliced integrals; n = 2 gives the two points +-b.
struct SlicedSphere {
  int dim = 0;
  Rule1D slice;
  SphereRule inner;  // dim n-1, coordinates 0..n-2
};

/// Computes int_{S^{n-1}} k(<theta,xi>) f(theta) d theta, where k is encoded in
/// `s.slice`.
template <class F>
double integrate_sliced(const SlicedSphere& s, const Vec& xi, F&& f) {
  const int n = s.dim;
  const auto basis = orthonormal_complement(xi, n);
  double total = 0.0;
  for (std::size_t i = 0; i < s.slice.size(); ++i) {
    const double t = s.slice.x[i];
    const double c = std::sqrt(std::max(0.0, 1.0 - t * t));
    double inner = 0.0;
    for (std::size_t j = 0; j < s.inner.size(); ++j) {
      Vec theta = scaled(xi, t);
      const Vec& w = s.inner.nodes[j];
      for (int k = 0; k + 1 < n; ++k) theta = axpy(c * w[k], basis[k], theta);
      inner += s.inner.weights[j] * f(theta);
    }
    total += s.slice.w[i] * inner;
  }
  return total;
}

/// tau-rule for zonal integrands: int_{S^{n-2}} f(<omega,u>) d omega
/// = sum w_j f(tau_j). n = 2 gives tau = +-1.
Rule1D zonal_inner_rule(int n, int count);

/// Zonal version of integrate_sliced: the integrand depends only on
/// <theta, axis>; `s_axis` = <xi, axis>.
template <class F>
double integrate_sliced_zonal(const Rule1D& slice, const Rule1D& tau, double s_axis, F&& f) {
  const double sc = std::sqrt(std::max(0.0, 1.0 - s_axis * s_axis));
  double total = 0.0;
  for (std::size_t i = 0; i < slice.size(); ++i) {
    const double t = slice.x[i];
    const double c = std::sqrt(std::max(0.0, 1.0 - t * t));
    double inner = 0.0;
    for (std::size_t j = 0; j < tau.size(); ++j) {
      const double te = std::clamp(t * s_axis + c * sc * tau.x[j], -1.0, 1.0);
      inner += tau.w[j] * f(te);
    }
    total += slice.w[i] * inner;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Monte Carlo.

/// Counter-based generator: the k-th draw depends only on (seed, k), so
/// sample streams can be partitioned without changing the result.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in (0, 1).
  double uniform(std::uint64_t counter) const;
  /// Standard normal from a Box-Muller pair at counters 2k, 2k+1.
  double normal(std::uint64_t k) const;

 private:
  std::uint64_t seed_;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Estimate of int_K f(x) dx by polar sampling: theta uniform, r = rho(theta)
/// u^{1/n}, weight |S^{n-1}| rho^n / n. Deterministic given seed.
McEstimate mc_body_integral(const StarBody& body, const std::function<double(const Vec&)>& f,
                            long samples, std::uint64_t seed);

/// Uniform random direction on S^{n-1} from draw index k.
Vec random_direction(const CounterRng& rng, int n, std::uint64_t k);

}  // namespace centrobody
