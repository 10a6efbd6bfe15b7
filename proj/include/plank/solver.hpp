// solver.hpp - maximizes F(v) = sum_k t_k^2 ln|<v_k,v>| over the unit sphere
// of C^d and returns a vector meeting the plank guarantee |<v_k,u>| >= t_k.
//
// Pieces: the stationarity map T(v) = sum_k (t_k^2 / <v_k,v>) v_k whose fixed
// points are the critical points of F, a damped fixed-point iteration and a
// tangent-ascent line search built on it, a circle-escape step that moves off
// stationary points with violated margins, and a multistart driver.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "plank/complex_ops.hpp"
#include "plank/golden.hpp"
#include "plank/instance.hpp"
#include "plank/json_util.hpp"
#include "plank/rng.hpp"

namespace plank {

// Factors with modulus at or below this floor poison the objective; the
// iterate gets jittered instead of dividing by them.
inline constexpr double kFactorFloor = 1e-150;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class SolveStatus { Converged, MarginShortfall, IterationCap };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MarginShortfall: return "MarginShortfall";
    case SolveStatus::IterationCap: return "IterationCap";
  }
  return "IterationCap";
}

inline SolveStatus solve_status_from_string(const std::string& s) {
  if (s == "Converged") return SolveStatus::Converged;
  if (s == "MarginShortfall") return SolveStatus::MarginShortfall;
  if (s == "IterationCap") return SolveStatus::IterationCap;
  throw ParseError("unknown status \"" + s + "\"");
}

struct SolveConfig {
  double residual_tol = 1e-10;
  double margin_tol = 1e-8;
  int max_iters = 10000;
  int multistart = 8;
  int escape_rounds_cap = 50;
  int escape_samples = 256;
  double step_shrink = 0.5;   // in (0,1)
  double min_step = 1e-14;
  std::uint64_t seed = 0;
  int threads = 1;            // multistart branches; results are schedule-independent
};

struct SolveResult {
  CVector u;                   // gauge-fixed unit vector
  double objective = kNegInf;  // F(u), natural log scale
  std::vector<double> margins; // |<v_k,u>| - t_k
  double min_margin = 0.0;
  double residual = 0.0;       // ||u - T(u)||
  int iterations = 0;
  int escapes_used = 0;
  SolveStatus status = SolveStatus::IterationCap;
};

// All inner products w_k = <v_k, v> in one pass.
inline std::vector<Complex> plank_factors(const PlankInstance& inst, const CVector& v) {
  if (v.size() != inst.d)
    throw DimensionMismatch("plank_factors: vector length " + std::to_string(v.size()) +
                            " vs instance dimension " + std::to_string(inst.d));
  std::vector<Complex> w(inst.n);
  for (std::size_t k = 0; k < inst.n; ++k) w[k] = inner(inst.vectors[k], v);
  return w;
}

namespace detail {

inline double objective_from_factors(const PlankInstance& inst, const std::vector<Complex>& w) {
  double f = 0.0;
  for (std::size_t k = 0; k < inst.n; ++k) {
    const double m2 = std::norm(w[k]);
    if (m2 == 0.0) return kNegInf;
    f += inst.weights[k] * inst.weights[k] * 0.5 * std::log(m2);
  }
  return f;
}

}  // namespace detail

// F(v) = sum_k t_k^2 ln|<v_k,v>|, or -inf when a factor vanishes exactly.
// F(v) <= 0 for unit v since every factor is <= 1 by Cauchy-Schwarz.
inline double objective(const PlankInstance& inst, const CVector& v) {
  return detail::objective_from_factors(inst, plank_factors(inst, v));
}

// T(v) = sum_k (t_k^2 / <v_k,v>) v_k. For ANY v with factors above the floor,
// <T(v),v> = sum_k t_k^2 = 1 (the coefficients come out of the linear slot
// unconjugated), stationary or not.
inline CVector stationarity_map(const PlankInstance& inst, const CVector& v) {
  const std::vector<Complex> w = plank_factors(inst, v);
  CVector out(inst.d, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < inst.n; ++k) {
    if (std::abs(w[k]) <= kFactorFloor) throw NearZeroFactor(k);
    const Complex c = inst.weights[k] * inst.weights[k] / w[k];
    const CVector& vk = inst.vectors[k];
    for (std::size_t i = 0; i < inst.d; ++i) out[i] += c * vk[i];
  }
  return out;
}

// Stationarity defect ||v - T(v)||; zero exactly at critical points of F.
inline double residual(const PlankInstance& inst, const CVector& v) {
  const CVector t = stationarity_map(inst, v);
  double s = 0.0;
  for (std::size_t i = 0; i < inst.d; ++i) s += std::norm(v[i] - t[i]);
  return std::sqrt(s);
}

namespace detail {

enum class AscentKind { FixedPoint, Tangent };

struct AscentOutcome {
  CVector v;
  double objective = kNegInf;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

// Shared ascent loop. FixedPoint damps v <- normalize(v + s(T(v)-v)) and
// accepts only on objective increase; Tangent walks the tangential component
// g = T(v) - <T(v),v> v under an Armijo test. Near stationarity the true
// objective change falls below double rounding (|dF| ~ residual^2), where an
// objective-gated search would stall around residual 1e-9; both kinds then
// accept a candidate that keeps F within a 1e-12 band while strictly
// decreasing the residual, which restores linear convergence down to
// residual_tol. NearZeroFactor jitters the iterate (1e-8, up to 10 times).
inline AscentOutcome ascend(const PlankInstance& inst, const CVector& v0, const SolveConfig& cfg,
                            AscentKind kind, RngState& rng, std::vector<double>* trace = nullptr) {
  AscentOutcome out;
  CVector v = v0;
  double f = objective(inst, v);
  if (trace) trace->push_back(f);
  int iters = 0;
  int jitters = 0;

  auto jitter = [&](CVector& x) {
    const CVector noise = rand_unit_vector(inst.d, rng);
    for (std::size_t i = 0; i < inst.d; ++i) x[i] += 1e-8 * noise[i];
    x = normalize(x);
  };

  for (;;) {
    CVector tv;
    try {
      tv = stationarity_map(inst, v);
    } catch (const NearZeroFactor&) {
      if (++jitters > 10) break;
      jitter(v);
      f = objective(inst, v);
      continue;
    }
    double r = 0.0;
    for (std::size_t i = 0; i < inst.d; ++i) r += std::norm(v[i] - tv[i]);
    r = std::sqrt(r);
    if (r <= cfg.residual_tol) break;
    if (iters >= cfg.max_iters) break;

    CVector dir(inst.d);
    if (kind == AscentKind::Tangent) {
      const Complex tv_dot_v = inner(tv, v);  // 1 up to rounding
      for (std::size_t i = 0; i < inst.d; ++i) dir[i] = tv[i] - tv_dot_v * v[i];
    } else {
      for (std::size_t i = 0; i < inst.d; ++i) dir[i] = tv[i] - v[i];
    }
    double dir2 = 0.0;
    for (std::size_t i = 0; i < inst.d; ++i) dir2 += std::norm(dir[i]);

    const double band = 1e-12 * (1.0 + std::abs(f));
    double s = 1.0;
    bool accepted = false;
    while (s >= cfg.min_step) {
      CVector cand(inst.d);
      for (std::size_t i = 0; i < inst.d; ++i) cand[i] = v[i] + s * dir[i];
      double cn = norm(cand);
      if (cn <= kZeroNormFloor) {
        s *= cfg.step_shrink;
        continue;
      }
      for (Complex& c : cand) c /= cn;
      const double fc = objective(inst, cand);
      bool ok = (kind == AscentKind::Tangent) ? (fc >= f + 1e-4 * s * dir2) : (fc > f);
      if (!ok && fc >= f - band) {
        double rc = std::numeric_limits<double>::infinity();
        try {
          rc = residual(inst, cand);
        } catch (const NearZeroFactor&) {
        }
        ok = rc < r;
      }
      if (ok) {
        v = std::move(cand);
        f = fc;
        accepted = true;
        if (trace) trace->push_back(f);
        break;
      }
      s *= cfg.step_shrink;
    }
    ++iters;
    if (!accepted) {
      // steps exhausted far from stationarity: a near-singular factor has
      // blown the gradient past what backtracking can bridge; spend a jitter
      if (r > 100.0 * cfg.residual_tol && ++jitters <= 10) {
        jitter(v);
        f = objective(inst, v);
        continue;
      }
      break;  // report from the current point
    }
  }

  out.v = std::move(v);
  out.objective = f;
  out.iterations = iters;
  try {
    out.residual = residual(inst, out.v);
  } catch (const NearZeroFactor&) {
  }
  return out;
}

inline SolveStatus classify(double res, double min_margin, const SolveConfig& cfg) {
  if (res <= cfg.residual_tol)
    return min_margin >= -cfg.margin_tol ? SolveStatus::Converged : SolveStatus::MarginShortfall;
  return SolveStatus::IterationCap;
}

// Gauge-fixes v and recomputes every reported metric from scratch.
inline SolveResult finish_result(const PlankInstance& inst, const CVector& v,
                                 const SolveConfig& cfg, int iterations, int escapes) {
  SolveResult res;
  res.u = gauge_fix(v);
  const std::vector<Complex> w = plank_factors(inst, res.u);
  res.objective = objective_from_factors(inst, w);
  res.margins.resize(inst.n);
  for (std::size_t k = 0; k < inst.n; ++k) res.margins[k] = std::abs(w[k]) - inst.weights[k];
  res.min_margin = *std::min_element(res.margins.begin(), res.margins.end());
  try {
    res.residual = residual(inst, res.u);
  } catch (const NearZeroFactor&) {
    res.residual = std::numeric_limits<double>::infinity();
  }
  res.iterations = iterations;
  res.escapes_used = escapes;
  res.status = classify(res.residual, res.min_margin, cfg);
  return res;
}

}  // namespace detail

// Damped fixed-point iteration on v <- normalize(v + s(T(v) - v)).
inline SolveResult fixed_point_iterate(const PlankInstance& inst, const CVector& v0,
                                       const SolveConfig& cfg) {
  RngState rng(cfg.seed);
  const auto out = detail::ascend(inst, v0, cfg, detail::AscentKind::FixedPoint, rng);
  return detail::finish_result(inst, out.v, cfg, out.iterations, 0);
}

// Backtracking ascent along the tangential component of T(v).
inline SolveResult tangent_ascent(const PlankInstance& inst, const CVector& v0,
                                  const SolveConfig& cfg) {
  RngState rng(cfg.seed);
  const auto out = detail::ascend(inst, v0, cfg, detail::AscentKind::Tangent, rng);
  return detail::finish_result(inst, out.v, cfg, out.iterations, 0);
}

// Searches the circle C of perturbation coefficients z for which
// u_z = z v_j + u stays unit: center -<u,v_j>, radius |<v_j,u>|. On C the
// j-th factor is constant, so any gain comes from the others; at a stationary
// point with |<v_j,u>| < t_j (equal weights) such a gain provably exists.
// Samples escape_samples equispaced angles plus the angle pointing from 0 at
// the disc center, refines the best by golden section, and returns the
// gauge-fixed improved vector, or nullopt when nothing beats F(u) + 1e-14.
inline std::optional<CVector> circle_escape(const PlankInstance& inst, const CVector& u,
                                            std::size_t j, const SolveConfig& cfg) {
  if (j >= inst.n) throw DimensionMismatch("circle_escape: plank index out of range");
  const Complex w = inner(inst.vectors[j], u);
  const double radius = std::abs(w);
  if (radius <= kFactorFloor) throw NearZeroFactor(j);
  const Complex center = -std::conj(w);

  // <v_k, u_z> = conj(z) a_k + b_k
  std::vector<Complex> a(inst.n);
  for (std::size_t k = 0; k < inst.n; ++k) a[k] = inner(inst.vectors[k], inst.vectors[j]);
  const std::vector<Complex> b = plank_factors(inst, u);

  auto objective_at = [&](double theta) -> double {
    const Complex z = center + radius * std::polar(1.0, theta);
    double f = 0.0;
    for (std::size_t k = 0; k < inst.n; ++k) {
      const Complex fac = std::conj(z) * a[k] + b[k];
      const double m = std::abs(fac);
      if (m <= kFactorFloor) return kNegInf;
      f += inst.weights[k] * inst.weights[k] * std::log(m);
    }
    return f;
  };

  const int samples = std::max(cfg.escape_samples, 8);
  const double step = 2.0 * 3.14159265358979323846 / samples;
  double best_theta = 0.0;
  double best_f = kNegInf;
  for (int i = 0; i <= samples; ++i) {
    // i == samples probes the angle aimed from 0 at the disc center
    const double theta = (i < samples) ? step * i : std::arg(center);
    const double f = objective_at(theta);
    if (f > best_f) {
      best_f = f;
      best_theta = theta;
    }
  }
  if (best_f == kNegInf) throw NearZeroFactor(j);

  const auto [theta_star, f_star] =
      detail::golden_max(objective_at, best_theta - step, best_theta + step, 1e-12);
  if (f_star > best_f) best_theta = theta_star;

  const Complex z_star = center + radius * std::polar(1.0, best_theta);
  CVector improved = gauge_fix(axpy(z_star, inst.vectors[j], u));
  if (objective(inst, improved) > objective(inst, u) + 1e-14) return improved;
  return std::nullopt;
}

namespace detail {

inline std::size_t most_violated_index(const std::vector<double>& margins) {
  std::size_t j = 0;
  for (std::size_t k = 1; k < margins.size(); ++k)
    if (margins[k] < margins[j]) j = k;  // strict: ties keep the lowest index
  return j;
}

inline SolveResult solve_one_start(const PlankInstance& inst, const SolveConfig& cfg, int start) {
  // stream k of the multistart family
  RngState rng(cfg.seed ^ static_cast<std::uint64_t>(start));
  CVector v0 = rand_unit_vector(inst.d, rng);
  for (int tries = 0; objective(inst, v0) == kNegInf && tries < 64; ++tries)
    v0 = rand_unit_vector(inst.d, rng);

  AscentOutcome out = ascend(inst, v0, cfg, AscentKind::Tangent, rng);
  int iterations = out.iterations;
  int escapes = 0;

  while (escapes < cfg.escape_rounds_cap) {
    const std::vector<Complex> w = plank_factors(inst, out.v);
    std::vector<double> margins(inst.n);
    for (std::size_t k = 0; k < inst.n; ++k) margins[k] = std::abs(w[k]) - inst.weights[k];
    const std::size_t j = most_violated_index(margins);
    if (margins[j] >= -cfg.margin_tol) break;

    std::optional<CVector> improved;
    try {
      improved = circle_escape(inst, out.v, j, cfg);
    } catch (const NearZeroFactor&) {
      CVector jittered = out.v;
      const CVector noise = rand_unit_vector(inst.d, rng);
      for (std::size_t i = 0; i < inst.d; ++i) jittered[i] += 1e-8 * noise[i];
      improved = normalize(jittered);
    }
    if (!improved) break;  // stuck; surfaced via status

    ++escapes;
    out = ascend(inst, *improved, cfg, AscentKind::Tangent, rng);
    iterations += out.iterations;
  }
  return finish_result(inst, out.v, cfg, iterations, escapes);
}

}  // namespace detail

// Multistart tangent ascent with the escape-then-re-ascend loop. Returns the
// start with the largest objective (lowest start index on ties), so the
// outcome does not depend on thread scheduling.
inline SolveResult solve(const PlankInstance& inst, const SolveConfig& cfg) {
  const int starts = std::max(cfg.multistart, 1);
  std::vector<SolveResult> results(starts);

  if (cfg.threads <= 1) {
    for (int k = 0; k < starts; ++k) results[k] = detail::solve_one_start(inst, cfg, k);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int k; (k = next.fetch_add(1)) < starts;)
        results[k] = detail::solve_one_start(inst, cfg, k);
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min(cfg.threads, starts);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k)
    if (results[k].objective > results[best].objective) best = k;
  return results[best];
}

inline void to_json(nlohmann::json& j, const SolveResult& r) {
  j = nlohmann::json{{"u", r.u},
                     {"objective", r.objective},
                     {"margins", r.margins},
                     {"min_margin", r.min_margin},
                     {"residual", r.residual},
                     {"iterations", r.iterations},
                     {"escapes_used", r.escapes_used},
                     {"status", to_string(r.status)}};
}

inline SolveResult solve_result_from_json(const nlohmann::json& j) {
  SolveResult r;
  r.u = j.at("u").get<CVector>();
  r.objective = j.at("objective").is_number() ? j.at("objective").get<double>() : kNegInf;
  r.margins = j.at("margins").get<std::vector<double>>();
  r.min_margin = j.at("min_margin").get<double>();
  r.residual = j.at("residual").is_number() ? j.at("residual").get<double>()
                                            : std::numeric_limits<double>::infinity();
  r.iterations = j.at("iterations").get<int>();
  r.escapes_used = j.at("escapes_used").get<int>();
  r.status = solve_status_from_string(j.at("status").get<std::string>());
  return r;
}

}  // namespace plank
