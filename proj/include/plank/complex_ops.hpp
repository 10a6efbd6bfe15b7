// complex_ops.hpp - scalar/vector arithmetic over C^d
//
// Inner product convention, fixed project-wide: <x,y> = sum_i x_i * conj(y_i),
// linear in the first slot and conjugate-linear in the second, so
// <y,x> = conj(<x,y>).
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "plank/errors.hpp"

namespace plank {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Norms below this are treated as zero vectors.
inline constexpr double kZeroNormFloor = 1e-300;
// Entry moduli within this of the maximum count as ties in gauge_fix.
inline constexpr double kGaugeTieTol = 1e-12;

inline Complex inner(const CVector& x, const CVector& y) {
  if (x.size() != y.size())
    throw DimensionMismatch("inner: length " + std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()));
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline double norm(const CVector& x) {
  double s = 0.0;
  for (const Complex& c : x) s += std::norm(c);
  return std::sqrt(s);
}

inline CVector normalize(const CVector& x) {
  const double n = norm(x);
  if (n <= kZeroNormFloor) throw ZeroVector{};
  CVector out(x);
  for (Complex& c : out) c /= n;
  return out;
}

// z*x + y, componentwise.
inline CVector axpy(Complex z, const CVector& x, const CVector& y) {
  if (x.size() != y.size())
    throw DimensionMismatch("axpy: length " + std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()));
  CVector out(y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += z * x[i];
  return out;
}

// Canonical phase: rotate u so its largest-modulus entry becomes real and
// non-negative. Ties (moduli within kGaugeTieTol) go to the lowest index,
// which makes the result deterministic and the map idempotent.
inline CVector gauge_fix(const CVector& u) {
  double max_mod = 0.0;
  for (const Complex& c : u) max_mod = std::max(max_mod, std::abs(c));
  if (max_mod <= kZeroNormFloor) throw ZeroVector{};
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) >= max_mod - kGaugeTieTol) {
      pivot = i;
      break;
    }
  }
  const Complex phase = std::conj(u[pivot]) / std::abs(u[pivot]);
  CVector out(u);
  for (Complex& c : out) c *= phase;
  // kill rounding dust in the pivot's imaginary part
  out[pivot] = Complex(std::abs(u[pivot]), 0.0);
  return out;
}

}  // namespace plank
