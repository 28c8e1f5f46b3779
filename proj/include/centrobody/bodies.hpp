#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "centrobody/gegenbauer.hpp"
#include "centrobody/quadrature.hpp"
#include "centrobody/vec.hpp"

namespace centrobody {

class StarBody;

namespace shape {

struct Ball {
  double radius = 1.0;
};

struct Ellipsoid {
  Vec semi_axes{};
};

/// Unit ball of the l_q quasi-norm, scaled by `scale`.
struct LqBall {
  double q = 2.0;
  double scale = 1.0;
};

/// {x : |x'|^3 <= P(x_n), |x_n| <= a} with P(t) = sum_k profile[k] t^{2k} and
/// a the smallest positive root of P.
struct Revolution {
  std::vector<double> profile;
  double root = 0.0;
};

/// Radial samples. Zonal grids store rho at t = <theta, axis> in [0, 1] and
/// interpolate with a natural cubic spline of the even extension; general
/// grids store rho at sphere nodes and interpolate the gauge linearly on the
/// nearest enclosing simplicial cone.
struct RadialGrid {
  bool zonal = true;
  Vec axis{};
  std::vector<double> t;
  std::vector<double> samples;
  std::vector<double> second;  // spline second derivatives on the mirrored grid
  std::vector<double> mirrored_t;
  std::vector<double> mirrored_samples;
  std::vector<Vec> nodes;
  int rule_degree = 0;
};

/// rho^e = c_base * rho_base^e + c_g * g(<theta, axis_base>).
struct Perturbed {
  std::shared_ptr<const StarBody> base;
  double exponent = 1.0;
  double c_base = 1.0;
  double c_g = 0.0;
  ZonalSeries g;
};

}  // namespace shape

enum class ShapeKind { Ball, Ellipsoid, LqBall, Revolution, RadialGrid, Perturbed };

using Shape = std::variant<shape::Ball, shape::Ellipsoid, shape::LqBall, shape::Revolution,
                           shape::RadialGrid, shape::Perturbed>;

/// Origin-symmetric star body in R^n, 2 <= n <= 5, described by its radial
/// function. Immutable; every construction path validates positivity and
/// finiteness of rho on a probe grid and throws std::invalid_argument.
class StarBody {
 public:
  static StarBody ball(int n, double radius);
  static StarBody ellipsoid(int n, const Vec& semi_axes);
  static StarBody lq_ball(int n, double q, double scale);
  static StarBody revolution(int n, std::vector<double> profile);
  static StarBody radial_grid_zonal(int n, const Vec& axis, std::vector<double> t, std::vector<double> samples);
  static StarBody radial_grid_nodes(int n, std::vector<Vec> nodes, std::vector<double> samples, int rule_degree = 0);
  static StarBody perturbed(std::shared_ptr<const StarBody> base, double exponent, double c_base, double c_g,
                            ZonalSeries g);
  /// The Revolution body with P(t) = 1 - t^2 - N t^4, n = 4.
  static StarBody fn_body(double N, int n = 4);

  int dim() const { return n_; }
  ShapeKind kind() const;
  const Shape& shape() const { return shape_; }
  /// Extra homogeneous factor applied on top of the shape (1 unless dilated).
  double scale() const { return scale_; }

  const std::string& id() const { return id_; }
  StarBody with_id(std::string id) const;

  double radial(const Vec& theta) const;
  double gauge(const Vec& x) const;
  StarBody dilate(double lambda) const;

  /// Axis of rotational symmetry, when the body has one.
  std::optional<Vec> zonal_axis() const;
  bool is_zonal() const { return zonal_axis().has_value(); }
  /// rho as a function of t = <theta, axis>; requires is_zonal().
  double radial_zonal(double t) const;

  /// Exact or 1-D-integral volume when the family allows it.
  std::optional<double> closed_form_volume() const;

  /// Revolution boundary residual |r s - P(r t)^{1/3}| at direction theta.
  double revolution_residual(const Vec& theta) const;

 private:
  StarBody(int n, Shape s) : n_(n), shape_(std::move(s)) {}
  double shape_radial(const Vec& theta) const;
  double shape_radial_zonal(double t) const;
  void validate() const;

  int n_ = 0;
  Shape shape_;
  double scale_ = 1.0;
  std::string id_;
};

/// Smallest positive root of P(t) = sum_k c[k] t^{2k}; throws if none.
double revolution_root(const std::vector<double>& profile);
double eval_even_poly(const std::vector<double>& profile, double t);

/// Number of 1-D nodes used for revolution-reduced integrals at a given
/// sphere-rule degree.
int zonal_node_count(int degree);

/// int_{S^{n-1}} f(<theta, axis>) d theta by Gauss-Gegenbauer in t.
double integrate_zonal(int n, int count, const std::function<double(double)>& f);

/// Quadrature volume (1/n) int rho^n. Revolution-symmetric bodies use the
/// reduced 1-D rule at the rule's degree.
double volume(const StarBody& body, const SphereRule& rule);

/// Closed form when available, otherwise a high-degree quadrature.
double volume(const StarBody& body);

}  // namespace centrobody
