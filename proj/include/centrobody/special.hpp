#pragma once

namespace centrobody::special {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Gamma function (Lanczos approximation with reflection for x < 1/2).
/// Throws std::domain_error at the poles x = 0, -1, -2, ...
double gamma(double x);

/// 1/Gamma(x); an entire function, exactly zero at the nonpositive integers.
double rgamma(double x);

/// ln|Gamma(x)|.
double lgamma_abs(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x): recurrence to x >= 10, asymptotic
/// series there, reflection for x < 0.
double digamma(double x);

double beta(double a, double b);

/// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2); n = 1 gives 2 (the two points of S^0).
double sphere_area(int n);

/// Volume of the unit ball in R^k; k = 0 gives 1.
double ball_volume(int k);

}  // namespace centrobody::special
