#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace centrobody {

/// Largest ambient dimension supported by the library.
inline constexpr int kMaxDim = 5;

/// Point or direction in R^n, n <= kMaxDim. Components past the ambient
/// dimension are kept at zero, so dot products and norms can run over all
/// kMaxDim slots regardless of n.
using Vec = std::array<double, kMaxDim>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < kMaxDim; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec scaled(const Vec& a, double s) {
  Vec r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] * s;
  return r;
}

inline Vec axpy(double s, const Vec& x, const Vec& y) {
  Vec r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = s * x[i] + y[i];
  return r;
}

inline Vec normalized(const Vec& a) { return scaled(a, 1.0 / norm(a)); }

inline Vec unit_vector(int n, int k) {
  (void)n;
  Vec e{};
  e[k] = 1.0;
  return e;
}

/// Orthonormal basis of the complement of the unit vector `xi` in R^n.
/// Returns n-1 vectors in the first slots of the array (Householder reflection
/// of the standard basis, so the result is deterministic).
std::array<Vec, kMaxDim> orthonormal_complement(const Vec& xi, int n);

}  // namespace centrobody
