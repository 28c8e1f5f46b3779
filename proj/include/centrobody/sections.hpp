#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "centrobody/bodies.hpp"
#include "centrobody/quadrature.hpp"

namespace centrobody {

enum class ProfileKind { Analytic, QuadratureBacked };

struct Support {
  double h = 0.0;  // support function value
  Vec point{};     // a boundary point attaining it
};

/// Support function h_K(xi) and a supporting boundary point.
Support support(const StarBody& K, const Vec& xi);

/// Parallel section function z -> A_{K,xi}(z) with a local model on
/// [0, taylor_radius]: an even polynomial plus, for bodies with conical-cusp
/// tips, C (|z - z*|^b + (z + z*)^b) with b = n + 1 and z* the height of the
/// tip. `taylor(k)` is the expansion of the model at z = 0. `breaks` lists
/// interior points of (0, support_radius) where A may lose smoothness.
class SectionProfile {
 public:
  /// `taylor_radius` > 0 overrides the radius of the fitted local model.
  SectionProfile(std::shared_ptr<const StarBody> body, const Vec& xi, double taylor_radius = 0.0);

  double operator()(double z) const;
  const StarBody& body() const { return *body_; }
  const Vec& direction() const { return xi_; }
  ProfileKind kind() const { return kind_; }
  double support_radius() const { return h_; }
  double a0() const { return taylor_.empty() ? 0.0 : taylor_[0]; }
  /// A''(0).
  double a2() const { return taylor_.size() > 1 ? 2.0 * taylor_[1] : 0.0; }
  /// Coefficient of z^{2k} in the local model (0 beyond the model order).
  double taylor(int k) const { return k < static_cast<int>(taylor_.size()) ? taylor_[k] : 0.0; }
  int taylor_order() const { return static_cast<int>(taylor_.size()); }
  double taylor_radius() const { return delta_; }
  const std::vector<double>& breaks() const { return breaks_; }
  double singular_coefficient() const { return sing_coef_; }

  /// int_0^taylor_radius z^{-1-q} (model(z) - sum_{2k<q} taylor(k) z^{2k}) dz.
  double model_remainder_integral(double q) const;

 private:
  void build_taylor_fit(bool singular = false);

  std::shared_ptr<const StarBody> body_;
  Vec xi_{};
  ProfileKind kind_ = ProfileKind::QuadratureBacked;
  double h_ = 0.0;
  std::vector<double> taylor_;
  double delta_ = 0.0;
  std::vector<double> breaks_;
  std::vector<double> smooth_;  // polynomial part of the model
  double sing_coef_ = 0.0;
  double sing_point_ = 0.0;
  int sing_power_ = 0;
  std::function<double(double)> eval_;
};

double section_function(const StarBody& K, const Vec& xi, double z);

/// int_0^inf z^{-1-q} (A(z) - sum_{2k<q} A^{(2k)}(0) z^{2k}/(2k)!) dz for q not
/// an even nonnegative integer. The part inside the Taylor radius is
/// integrated term by term, the part past the support radius in closed form.
double regularized_integral(const SectionProfile& A, double q);

/// A^{(q)}(0) = regularized_integral(A, q) / Gamma(-q); throws for q a
/// nonnegative integer.
double frac_derivative_at_zero(const SectionProfile& A, double q);

struct FtNormPower {
  double spherical = 0.0;   // -(pi/(2 Gamma(p+1) sin(pi p/2))) int_S |<theta,xi>|^p rho^{n+p}
  double fractional = 0.0;  // -(pi (n+p)/sin(pi p/2)) A^{(-p-1)}(0)
  double discrepancy = 0.0; // relative
  bool flagged = false;
};

/// (||x||_K^{-n-p})^(xi) by the spherical-integral and fractional-derivative
/// routes.
FtNormPower ft_norm_power(const StarBody& K, const Vec& xi, double p, const SphereRule& rule,
                          double tol = 1e-4);

/// Converts section data to (||x||_K^p)^(xi) for p in (-1, 1), p != 0:
/// pi (n-q-1) / cos(pi q / 2) A^{(q)}(0) with q = n - 1 + p.
double ft_power_from_sections(const SectionProfile& A, double p);

/// (ln||x||_K)^(xi) from section data: (-1)^{(n+1)/2} pi A^{(n-1)}(0) for odd
/// n, a_n times the regularized integral of order n-1 for even n.
double ft_log_from_sections(const SectionProfile& A);

/// a_n = 2 (-1)^{n/2+1} (n-1)!.
double log_coefficient_even(int n);

struct CounterexampleIntegral {
  double N = 0.0;
  double p = 0.0;
  double a_N = 0.0;
  double numeric = 0.0;            // regularized integral of order 3+p at xi = e_4
  double closed_form = 0.0;        // (4pi/3)(-N a^{1-p}/(1-p) + 1/((1+p) a^{1+p}) - 1/((3+p) a^{3+p}))
  double printed_closed_form = 0.0;  // the variant with -N a^{1+p}/(1+p) as first term
};

/// Regularized integral int_0^inf (A - A(0) - A''(0) z^2/2) z^{-4-p} dz for the
/// f_N body in R^4 along its axis.
CounterexampleIntegral counterexample_integral(double N, double p);

/// Positive root a_N of 1 - t^2 - N t^4: a_N^2 = (-1 + sqrt(1 + 4N)) / (2N).
double fn_root(double N);

/// Closed forms for the f_N body on its axis.
double fn_integral_closed_form(double N, double p);
double fn_integral_printed_form(double N, double p);
/// (4pi/3)(-N a + 1/a - 1/(3 a^3)): the order-3 regularized integral.
double fn_log_integral_closed_form(double N);

/// Smallest N in [lo, hi] where f changes sign, by bisection to `width`.
double sign_threshold(const std::function<double(double)>& f, double lo, double hi, double width = 1e-6);

}  // namespace centrobody
