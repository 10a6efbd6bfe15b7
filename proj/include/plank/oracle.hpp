// oracle.hpp - independent brute-force maximizers for cross-checking solver
// output on small instances.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "plank/complex_ops.hpp"
#include "plank/instance.hpp"
#include "plank/json_util.hpp"
#include "plank/rng.hpp"
#include "plank/solver.hpp"

namespace plank {

struct OracleResult {
  CVector u_star;
  double objective_star = kNegInf;
  std::size_t grid_resolution = 0;  // set by the d=2 grid oracle
  std::size_t sample_count = 0;     // set by the restart oracle
};

namespace detail {

// F at u(alpha, beta) = (cos a, e^{i b} sin a); global phase is quotiented
// out, so these two parameters cover all of CP^1.
inline double d2_objective(const PlankInstance& inst, double alpha, double beta) {
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);  // may dip negative in refinement windows
  const Complex e = sa * Complex(std::cos(beta), -std::sin(beta));
  double f = 0.0;
  for (std::size_t k = 0; k < inst.n; ++k) {
    const Complex w = inst.vectors[k][0] * ca + inst.vectors[k][1] * e;
    const double m2 = std::norm(w);
    if (m2 == 0.0) return kNegInf;
    f += inst.weights[k] * inst.weights[k] * 0.5 * std::log(m2);
  }
  return f;
}

}  // namespace detail

// Dense scan of (alpha, beta) in [0, pi/2] x [0, 2pi) with grid and 2*grid
// points, then 3 rounds of 21x21 local refinement shrinking the window by 10
// each time. Ties keep the lowest linear index, so the scan order fixes the
// result.
inline OracleResult brute_force_d2(const PlankInstance& inst, std::size_t grid) {
  if (inst.d != 2) throw WrongDimension("brute_force_d2 requires d = 2");
  if (grid < 64) throw std::invalid_argument("brute_force_d2: grid must be >= 64");

  constexpr double kPi = 3.14159265358979323846;
  double best_alpha = 0.0, best_beta = 0.0;
  double best_f = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid; ++i) {
    const double alpha = (kPi / 2.0) * static_cast<double>(i) / static_cast<double>(grid - 1);
    for (std::size_t jj = 0; jj < 2 * grid; ++jj) {
      const double beta = kPi * static_cast<double>(jj) / static_cast<double>(grid);
      const double f = detail::d2_objective(inst, alpha, beta);
      if (f > best_f) {
        best_f = f;
        best_alpha = alpha;
        best_beta = beta;
      }
    }
  }

  double ha = (kPi / 2.0) / static_cast<double>(grid - 1);
  double hb = kPi / static_cast<double>(grid);
  for (int round = 0; round < 3; ++round) {
    const double ca = best_alpha, cb = best_beta;
    for (int p = 0; p <= 20; ++p) {
      const double alpha = ca - ha + (2.0 * ha) * p / 20.0;
      for (int q = 0; q <= 20; ++q) {
        const double beta = cb - hb + (2.0 * hb) * q / 20.0;
        const double f = detail::d2_objective(inst, alpha, beta);
        if (f > best_f) {
          best_f = f;
          best_alpha = alpha;
          best_beta = beta;
        }
      }
    }
    ha /= 10.0;
    hb /= 10.0;
  }

  OracleResult res;
  const double sa = std::sin(best_alpha);
  res.u_star = gauge_fix(CVector{Complex(std::cos(best_alpha), 0.0),
                                 sa * Complex(std::cos(best_beta), std::sin(best_beta))});
  res.objective_star = objective(inst, res.u_star);
  res.grid_resolution = grid;
  return res;
}

// Best tangent ascent over `samples` independent random starts. Starts are
// drawn sequentially from one stream, so a run with more samples extends the
// same sequence and its best objective can only grow.
inline OracleResult random_restart_oracle(const PlankInstance& inst, std::size_t samples,
                                          std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("random_restart_oracle: samples must be >= 1");
  RngState start_rng(seed);
  SolveConfig cfg;
  cfg.seed = seed;

  OracleResult best;
  for (std::size_t s = 0; s < samples; ++s) {
    CVector v0 = rand_unit_vector(inst.d, start_rng);
    for (int tries = 0; objective(inst, v0) == kNegInf && tries < 64; ++tries)
      v0 = rand_unit_vector(inst.d, start_rng);
    // jitter stream separate from the start stream, so sample s is the same
    // vector regardless of how many samples follow it
    RngState jitter_rng(seed ^ (0x9E3779B97F4A7C15ULL * (s + 1)));
    const auto out = detail::ascend(inst, v0, cfg, detail::AscentKind::Tangent, jitter_rng);
    const SolveResult res = detail::finish_result(inst, out.v, cfg, out.iterations, 0);
    if (res.objective > best.objective_star) {
      best.u_star = res.u;
      best.objective_star = res.objective;
    }
  }
  best.sample_count = samples;
  return best;
}

inline void to_json(nlohmann::json& j, const OracleResult& r) {
  j = nlohmann::json{{"u_star", r.u_star}, {"objective_star", r.objective_star}};
  if (r.grid_resolution > 0) j["grid_resolution"] = r.grid_resolution;
  if (r.sample_count > 0) j["sample_count"] = r.sample_count;
}

}  // namespace plank
