#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "centrobody/special.hpp"

namespace centrobody {

/// Orthonormal zonal harmonics on S^{n-1}: Phat_m(<theta, axis>) with
/// int_{S^{n-1}} Phat_m Phat_k d theta = delta_{mk}. These are the Gegenbauer
/// polynomials of index (n-2)/2 (Chebyshev for n = 2), generated by the
/// orthonormal three-term recurrence for the weight (1-t^2)^{(n-3)/2}.
class ZonalBasis {
 public:
  ZonalBasis() = default;
  ZonalBasis(int n, int max_degree) : n_(n), max_degree_(max_degree) {
    const double a = 0.5 * (n - 3);
    const double mu0 = std::sqrt(special::kPi) * special::gamma(a + 1.0) / special::gamma(a + 1.5);
    p0_ = 1.0 / std::sqrt(mu0 * special::sphere_area(n - 1));
    sqrt_beta_.assign(max_degree + 2, 0.0);
    for (int k = 1; k <= max_degree + 1; ++k) {
      const double b = (k == 1) ? 1.0 / (3.0 + 2.0 * a)
                                : k * (k + 2.0 * a) / ((2.0 * k + 2.0 * a + 1.0) * (2.0 * k + 2.0 * a - 1.0));
      sqrt_beta_[k] = std::sqrt(b);
    }
  }

  int dim() const { return n_; }
  int max_degree() const { return max_degree_; }

  /// out[m] = Phat_m(t) for m = 0..max_degree.
  void eval_all(double t, double* out) const {
    double prev = 0.0, cur = p0_;
    out[0] = cur;
    for (int k = 0; k < max_degree_; ++k) {
      const double next = (t * cur - sqrt_beta_[k] * prev) / sqrt_beta_[k + 1];
      prev = cur;
      cur = next;
      out[k + 1] = cur;
    }
  }

  /// sum_m c[m] Phat_m(t), c indexed by degree.
  double sum(const std::vector<double>& c, double t) const {
    double prev = 0.0, cur = p0_;
    double s = c.empty() ? 0.0 : c[0] * cur;
    const int top = std::min<int>(max_degree_, static_cast<int>(c.size()) - 1);
    for (int k = 0; k < top; ++k) {
      const double next = (t * cur - sqrt_beta_[k] * prev) / sqrt_beta_[k + 1];
      prev = cur;
      cur = next;
      s += c[k + 1] * cur;
    }
    return s;
  }

 private:
  int n_ = 0;
  int max_degree_ = 0;
  double p0_ = 0.0;
  std::vector<double> sqrt_beta_;
};

/// Piecewise Chebyshev interpolant in phi = arccos t of a series of degree M.
/// cos(m phi) content up to M on panels of width 2 pi / M is resolved by 25
/// nodes per panel far below rounding.
class PhiTable {
 public:
  static constexpr int kNodes = 25;

  template <class F>
  PhiTable(int degree, F&& exact) {
    panels_ = std::max(4, degree / 2);
    width_ = special::kPi / panels_;
    values_.resize(static_cast<std::size_t>(panels_) * kNodes);
    for (int j = 0; j < kNodes; ++j) {
      const double a = special::kPi * (j + 0.5) / kNodes;
      x_[j] = std::cos(a);
      w_[j] = ((j % 2 == 0) ? 1.0 : -1.0) * std::sin(a);
    }
    for (int p = 0; p < panels_; ++p)
      for (int j = 0; j < kNodes; ++j)
        values_[static_cast<std::size_t>(p) * kNodes + j] = exact(std::cos(width_ * (p + 0.5 * (1.0 + x_[j]))));
  }

  double operator()(double t) const {
    const double phi = std::acos(std::clamp(t, -1.0, 1.0));
    const int p = std::min(panels_ - 1, static_cast<int>(phi / width_));
    const double x = 2.0 * (phi - width_ * p) / width_ - 1.0;
    const double* v = &values_[static_cast<std::size_t>(p) * kNodes];
    double num = 0.0, den = 0.0;
    for (int j = 0; j < kNodes; ++j) {
      const double d = x - x_[j];
      if (d == 0.0) return v[j];
      const double c = w_[j] / d;
      num += c * v[j];
      den += c;
    }
    return num / den;
  }

 private:
  int panels_ = 0;
  double width_ = 0.0;
  double x_[kNodes];
  double w_[kNodes];
  std::vector<double> values_;
};

/// Zonal function sum_m coeffs[m] Phat_m(<theta, axis>). Immutable, so safe
/// to evaluate from several threads. From degree 96 on, evaluation goes
/// through a PhiTable built at construction; `exact` always runs the
/// recurrence.
class ZonalSeries {
 public:
  static constexpr int kTableDegree = 96;

  ZonalSeries() = default;
  ZonalSeries(int dim, std::vector<double> coeffs)
      : dim_(dim),
        coeffs_(std::move(coeffs)),
        basis_(coeffs_.empty() ? nullptr
                               : std::make_shared<const ZonalBasis>(dim, static_cast<int>(coeffs_.size()) - 1)) {
    const int degree = static_cast<int>(coeffs_.size()) - 1;
    if (degree >= kTableDegree)
      table_ = std::make_shared<const PhiTable>(degree, [this](double t) { return exact(t); });
  }

  int dim() const { return dim_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  double operator()(double t) const { return table_ ? (*table_)(t) : exact(t); }
  double exact(double t) const { return basis_ ? basis_->sum(coeffs_, t) : 0.0; }

 private:
  int dim_ = 0;
  std::vector<double> coeffs_;
  std::shared_ptr<const ZonalBasis> basis_;
  std::shared_ptr<const PhiTable> table_;
};

}  // namespace centrobody
