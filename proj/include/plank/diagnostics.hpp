// diagnostics.hpp - direct implementations of the escape construction's
// objects: the perturbation family u_z = z v_j + u, the circle C on which u_z
// stays unit, the polynomial p(z) = prod_{k!=j} <u_z,v_k>/<u,v_k> with
// p(0) = 1, its derivative at 0 (raw sum and the closed form valid at
// stationary points), the weighted log-|p| variant, and a max-modulus /
// subharmonicity probe over C.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "plank/complex_ops.hpp"
#include "plank/golden.hpp"
#include "plank/instance.hpp"
#include "plank/json_util.hpp"
#include "plank/rng.hpp"
#include "plank/solver.hpp"

namespace plank {

struct CircleSpec {
  Complex center;      // -<u,v_j>
  double radius = 0.0; // |<v_j,u>| = |center|
  std::size_t j = 0;
};

// z*v_j + u. Not normalized: unit exactly when z lies on the circle.
inline CVector perturbed_vector(const CVector& u, const CVector& vj, Complex z) {
  return axpy(z, vj, u);
}

// The set of z keeping u_z unit: ||u_z||^2 = |z|^2 + 2 Re(z <v_j,u>) + 1 = 1
// iff |z + conj(<v_j,u>)| = |<v_j,u>|. z = 0 always lies on it.
inline CircleSpec circle_of(const CVector& u, const PlankInstance& inst, std::size_t j) {
  if (j >= inst.n) throw DimensionMismatch("circle_of: plank index out of range");
  const Complex w = inner(inst.vectors[j], u);
  return {-std::conj(w), std::abs(w), j};
}

inline Complex circle_point(const CircleSpec& spec, double theta) {
  return spec.center + spec.radius * std::polar(1.0, theta);
}

namespace detail {

inline bool has_equal_weights(const PlankInstance& inst, double tol = 1e-12) {
  const double target = 1.0 / static_cast<double>(inst.n);
  for (double t : inst.weights)
    if (std::abs(t * t - target) > tol) return false;
  return true;
}

inline void require_equal_weights(const PlankInstance& inst, const char* who) {
  if (!has_equal_weights(inst))
    throw std::invalid_argument(std::string(who) + " requires equal weights t_k = 1/sqrt(n)");
}

}  // namespace detail

// p(z) = prod_{k!=j} <u_z,v_k>/<u,v_k>, a polynomial of degree <= n-1 in z
// (the numerator is z <v_j,v_k> + <u,v_k>, linear in z). p(0) = 1 by
// construction. Equal weights only.
inline Complex p_holomorphic(const PlankInstance& inst, const CVector& u, std::size_t j,
                             Complex z) {
  if (j >= inst.n) throw DimensionMismatch("p_holomorphic: plank index out of range");
  detail::require_equal_weights(inst, "p_holomorphic");
  Complex val(1.0, 0.0);
  for (std::size_t k = 0; k < inst.n; ++k) {
    if (k == j) continue;
    const Complex den = inner(u, inst.vectors[k]);
    if (std::norm(den) == 0.0) throw ZeroDenominator(k);
    const Complex num = z * inner(inst.vectors[j], inst.vectors[k]) + den;
    val *= num / den;
  }
  return val;
}

// ln p(z) for the weighted variant: sum_{k!=j} t_k^2 (ln|<v_k,u_z>| -
// ln|<v_k,u>|). Subharmonic in z, equals (1/n) ln|p_holomorphic| for equal
// weights. Returns -inf at zeros of a numerator factor.
inline double p_weighted_logabs(const PlankInstance& inst, const CVector& u, std::size_t j,
                                Complex z) {
  if (j >= inst.n) throw DimensionMismatch("p_weighted_logabs: plank index out of range");
  double s = 0.0;
  for (std::size_t k = 0; k < inst.n; ++k) {
    if (k == j) continue;
    const Complex den = inner(inst.vectors[k], u);
    if (std::norm(den) == 0.0) throw ZeroDenominator(k);
    const Complex num = std::conj(z) * inner(inst.vectors[k], inst.vectors[j]) + den;
    const double m = std::abs(num);
    if (m == 0.0) return kNegInf;
    s += inst.weights[k] * inst.weights[k] * (std::log(m) - std::log(std::abs(den)));
  }
  return s;
}

// p'(0) = sum_{k!=j} <v_j,v_k>/<u,v_k>; valid at any u. Equal weights only.
inline Complex p_prime_zero_raw(const PlankInstance& inst, const CVector& u, std::size_t j) {
  if (j >= inst.n) throw DimensionMismatch("p_prime_zero_raw: plank index out of range");
  detail::require_equal_weights(inst, "p_prime_zero_raw");
  Complex s(0.0, 0.0);
  for (std::size_t k = 0; k < inst.n; ++k) {
    if (k == j) continue;
    const Complex den = inner(u, inst.vectors[k]);
    if (std::norm(den) == 0.0) throw ZeroDenominator(k);
    s += inner(inst.vectors[j], inst.vectors[k]) / den;
  }
  return s;
}

// Closed form <v_j,u> (n - 1/|<v_j,u>|^2). Coincides with the raw sum only
// when u satisfies the stationarity equation; callers check residual(u)
// first. The real scalar factor is negative exactly when |<v_j,u>| < 1/sqrt(n).
inline Complex p_prime_zero_stationary(const PlankInstance& inst, const CVector& u,
                                       std::size_t j) {
  if (j >= inst.n) throw DimensionMismatch("p_prime_zero_stationary: plank index out of range");
  detail::require_equal_weights(inst, "p_prime_zero_stationary");
  const Complex w = inner(inst.vectors[j], u);
  if (std::norm(w) == 0.0) throw ZeroDenominator(j);
  return w * (static_cast<double>(inst.n) - 1.0 / std::norm(w));
}

struct ProbeReport {
  double boundary_max = 0.0;
  double interior_max = 0.0;
  bool interior_exceeds_boundary = false;
};

enum class ProbeKind { Weighted, Holomorphic };

// Samples ln p on the circle (equispaced, then golden refinement around the
// best) and at uniform points of the open disc. The maximum modulus principle
// (holomorphic p) and subharmonicity (weighted log) say the interior max can
// never beat the boundary max; interior_exceeds_boundary flags a breach
// beyond a 1e-9 sampling slack.
inline ProbeReport max_modulus_probe(const PlankInstance& inst, const CVector& u, std::size_t j,
                                     int boundary_samples, int interior_samples, RngState& rng,
                                     ProbeKind kind = ProbeKind::Weighted) {
  const CircleSpec spec = circle_of(u, inst, j);
  auto log_p = [&](Complex z) -> double {
    if (kind == ProbeKind::Holomorphic) {
      const double m = std::abs(p_holomorphic(inst, u, j, z));
      return m == 0.0 ? kNegInf : std::log(m);
    }
    return p_weighted_logabs(inst, u, j, z);
  };

  ProbeReport rep;
  const int nb = std::max(boundary_samples, 4);
  const double step = 2.0 * 3.14159265358979323846 / nb;
  double best_theta = 0.0;
  rep.boundary_max = kNegInf;
  for (int i = 0; i < nb; ++i) {
    const double theta = step * i;
    const double v = log_p(circle_point(spec, theta));
    if (v > rep.boundary_max) {
      rep.boundary_max = v;
      best_theta = theta;
    }
  }
  if (rep.boundary_max > kNegInf) {
    const auto [theta_star, f_star] = detail::golden_max(
        [&](double th) { return log_p(circle_point(spec, th)); }, best_theta - step,
        best_theta + step, 1e-12);
    (void)theta_star;
    rep.boundary_max = std::max(rep.boundary_max, f_star);
  }

  rep.interior_max = kNegInf;
  const int ni = std::max(interior_samples, 1);
  for (int i = 0; i < ni; ++i) {
    const double rho = spec.radius * std::sqrt(rng.uniform01());
    const double phi = 2.0 * 3.14159265358979323846 * rng.uniform01();
    const Complex z = spec.center + rho * std::polar(1.0, phi);
    rep.interior_max = std::max(rep.interior_max, log_p(z));
  }
  rep.interior_exceeds_boundary = rep.interior_max > rep.boundary_max + 1e-9;
  return rep;
}

inline void to_json(nlohmann::json& j, const ProbeReport& r) {
  j = nlohmann::json{{"boundary_max", r.boundary_max},
                     {"interior_max", r.interior_max},
                     {"interior_exceeds_boundary", r.interior_exceeds_boundary}};
}

inline void to_json(nlohmann::json& j, const CircleSpec& c) {
  j = nlohmann::json{{"center", c.center}, {"radius", c.radius}, {"j", c.j}};
}

}  // namespace plank
