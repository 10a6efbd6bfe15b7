// instance.hpp - problem data: unit normals v_1..v_n in C^d and half-widths
// t_1..t_n with sum of squares 1. Includes validation, deterministic
// generators, and JSON (de)serialization.
//
// Instance JSON schema:
//   { "d": int, "n": int, "vectors": [[[re,im] x d] x n], "weights": [real x n] }
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "plank/complex_ops.hpp"
#include "plank/json_util.hpp"
#include "plank/rng.hpp"

namespace plank {

struct PlankInstance {
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<CVector> vectors;
  std::vector<double> weights;
};

struct Violation {
  std::string check;
  double defect = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;  // load-time adjustments (renormalized, dropped, rescaled)
  bool valid() const { return violations.empty(); }
};

// Reports every violated invariant with its measured defect; does not throw.
inline ValidationReport validate(const PlankInstance& inst, double tol = 1e-10) {
  ValidationReport rep;
  auto fail = [&rep](std::string check, double defect) {
    rep.violations.push_back({std::move(check), defect});
  };
  if (inst.d < 1) fail("dimension", static_cast<double>(inst.d));
  if (inst.n < 1) fail("plank_count", static_cast<double>(inst.n));
  if (inst.vectors.size() != inst.n)
    fail("vector_count", static_cast<double>(inst.vectors.size()) - static_cast<double>(inst.n));
  if (inst.weights.size() != inst.n)
    fail("weight_count", static_cast<double>(inst.weights.size()) - static_cast<double>(inst.n));

  for (std::size_t k = 0; k < inst.vectors.size(); ++k) {
    if (inst.vectors[k].size() != inst.d) {
      fail("vector_length[" + std::to_string(k) + "]",
           static_cast<double>(inst.vectors[k].size()) - static_cast<double>(inst.d));
      continue;
    }
    const double defect = std::abs(norm(inst.vectors[k]) - 1.0);
    if (defect > tol) fail("unit_norm[" + std::to_string(k) + "]", defect);
  }
  double wsum = 0.0;
  for (std::size_t k = 0; k < inst.weights.size(); ++k) {
    if (!(inst.weights[k] > 0.0)) fail("positive_weight[" + std::to_string(k) + "]", inst.weights[k]);
    wsum += inst.weights[k] * inst.weights[k];
  }
  if (!inst.weights.empty() && std::abs(wsum - 1.0) > tol) fail("weight_sum_sq", wsum - 1.0);
  return rep;
}

enum class WeightMode { Equal, Random };

// n i.i.d. uniform unit vectors; weights all 1/sqrt(n) (Equal) or
// g_k/sqrt(sum g^2) for g_k ~ U(0.1, 1) (Random). Deterministic in seed:
// the n vectors are drawn first, then the n weight variates.
inline PlankInstance gen_random(std::size_t d, std::size_t n, std::uint64_t seed, WeightMode mode) {
  if (d < 1 || n < 1) throw WrongDimension("gen_random: d and n must be >= 1");
  PlankInstance inst;
  inst.d = d;
  inst.n = n;
  RngState rng(seed);
  inst.vectors.reserve(n);
  for (std::size_t k = 0; k < n; ++k) inst.vectors.push_back(rand_unit_vector(d, rng));
  inst.weights.assign(n, 0.0);
  if (mode == WeightMode::Equal) {
    // sqrt(1/n) is the correctly rounded 1/sqrt(n)
    const double t = std::sqrt(1.0 / static_cast<double>(n));
    for (double& w : inst.weights) w = t;
  } else {
    double sum_sq = 0.0;
    for (double& w : inst.weights) {
      w = rng.uniform(0.1, 1.0);
      sum_sq += w * w;
    }
    const double scale = 1.0 / std::sqrt(sum_sq);
    for (double& w : inst.weights) w *= scale;
  }
  return inst;
}

// The extremal instance: v_k = e_k, n = d, t_k = 1/sqrt(d). At the optimum
// every margin is exactly zero.
inline PlankInstance gen_tight(std::size_t d) {
  if (d < 1) throw WrongDimension("gen_tight: d must be >= 1");
  PlankInstance inst;
  inst.d = d;
  inst.n = d;
  inst.vectors.assign(d, CVector(d, Complex(0.0, 0.0)));
  for (std::size_t k = 0; k < d; ++k) inst.vectors[k][k] = Complex(1.0, 0.0);
  inst.weights.assign(d, std::sqrt(1.0 / static_cast<double>(d)));
  return inst;
}

// Degenerate stress case: every v_k = e_1, equal weights. The optimum is
// u = e_1 with all margins 1 - 1/sqrt(n).
inline PlankInstance gen_repeated(std::size_t d, std::size_t n) {
  if (d < 1 || n < 1) throw WrongDimension("gen_repeated: d and n must be >= 1");
  PlankInstance inst;
  inst.d = d;
  inst.n = n;
  CVector e1(d, Complex(0.0, 0.0));
  e1[0] = Complex(1.0, 0.0);
  inst.vectors.assign(n, e1);
  inst.weights.assign(n, std::sqrt(1.0 / static_cast<double>(n)));
  return inst;
}

inline void to_json(nlohmann::json& j, const PlankInstance& inst) {
  j = nlohmann::json{
      {"d", inst.d}, {"n", inst.n}, {"vectors", inst.vectors}, {"weights", inst.weights}};
}

// Canonical (compact) encoding; digests and files both derive from this tree.
inline std::string instance_to_json(const PlankInstance& inst, int indent = 2) {
  const nlohmann::json j = inst;
  return j.dump(indent) + "\n";
}

namespace detail {

// Defects at or below this are already at double precision; touching the
// stored values would only break bit-exact round trips.
inline constexpr double kLoadExactTol = 1e-14;
// Defects up to this are repaired on load; anything larger is rejected.
inline constexpr double kLoadRepairTol = 1e-10;

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline std::size_t parse_count(const nlohmann::json& j, const char* name) {
  const nlohmann::json& f = require_field(j, name);
  if (!f.is_number_integer() || f.get<long long>() < 1)
    throw ParseError(std::string("field \"") + name + "\" must be a positive integer, got " +
                     f.dump());
  return f.get<std::size_t>();
}

}  // namespace detail

// Parses and normalizes an instance document.
//   - zero-weight planks are dropped (their guarantee is vacuous)
//   - vectors within 1e-10 of unit norm are renormalized, farther are rejected
//   - a weight-square-sum defect within 1e-10 is rescaled away, larger rejected
// Values already exact to double precision are loaded verbatim so that a
// round trip through to_json reproduces them bit for bit. Adjustments are
// recorded in *report when given.
inline PlankInstance instance_from_json(const std::string& text, ValidationReport* report = nullptr) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw ParseError("top-level value must be an object");

  PlankInstance inst;
  inst.d = detail::parse_count(j, "d");
  inst.n = detail::parse_count(j, "n");

  const nlohmann::json& jv = detail::require_field(j, "vectors");
  const nlohmann::json& jw = detail::require_field(j, "weights");
  if (!jv.is_array() || jv.size() != inst.n)
    throw ParseError("\"vectors\" must be an array of n=" + std::to_string(inst.n) + " vectors");
  if (!jw.is_array() || jw.size() != inst.n)
    throw ParseError("\"weights\" must be an array of n=" + std::to_string(inst.n) + " numbers");

  std::vector<CVector> vectors(inst.n);
  std::vector<double> weights(inst.n);
  for (std::size_t k = 0; k < inst.n; ++k) {
    const nlohmann::json& row = jv.at(k);
    if (!row.is_array() || row.size() != inst.d)
      throw ParseError("vectors[" + std::to_string(k) + "] must hold d=" + std::to_string(inst.d) +
                       " complex entries");
    vectors[k].resize(inst.d);
    for (std::size_t i = 0; i < inst.d; ++i) {
      try {
        vectors[k][i] = row.at(i).get<Complex>();
      } catch (const ParseError& e) {
        throw ParseError("vectors[" + std::to_string(k) + "][" + std::to_string(i) + "]: " +
                         e.what());
      }
    }
    if (!jw.at(k).is_number())
      throw ParseError("weights[" + std::to_string(k) + "] must be a number");
    weights[k] = jw.at(k).get<double>();
  }

  ValidationReport local;
  ValidationReport& rep = report ? *report : local;

  // drop vacuous zero-weight planks; negative weights are invalid data
  inst.vectors.clear();
  inst.weights.clear();
  for (std::size_t k = 0; k < inst.n; ++k) {
    if (weights[k] < 0.0)
      throw ValidationError("weights[" + std::to_string(k) + "] is negative");
    if (weights[k] == 0.0) {
      rep.notes.push_back("dropped zero-weight plank " + std::to_string(k));
      continue;
    }
    inst.vectors.push_back(std::move(vectors[k]));
    inst.weights.push_back(weights[k]);
  }
  inst.n = inst.vectors.size();
  if (inst.n == 0) throw ValidationError("no planks with positive weight");

  for (std::size_t k = 0; k < inst.n; ++k) {
    const double defect = std::abs(norm(inst.vectors[k]) - 1.0);
    if (defect > detail::kLoadRepairTol)
      throw ValidationError("vectors[" + std::to_string(k) + "] has norm defect " +
                            std::to_string(defect) + ", beyond the 1e-10 load tolerance");
    if (defect > detail::kLoadExactTol) {
      inst.vectors[k] = normalize(inst.vectors[k]);
      rep.notes.push_back("renormalized vector " + std::to_string(k) + " (defect " +
                          std::to_string(defect) + ")");
    }
  }

  double wsum = 0.0;
  for (double w : inst.weights) wsum += w * w;
  const double wdefect = std::abs(wsum - 1.0);
  if (wdefect > detail::kLoadRepairTol)
    throw ValidationError("weight square sum is " + std::to_string(wsum) +
                          ", beyond the 1e-10 load tolerance");
  if (wdefect > detail::kLoadExactTol) {
    const double scale = 1.0 / std::sqrt(wsum);
    for (double& w : inst.weights) w *= scale;
    rep.notes.push_back("rescaled weights (square-sum defect " + std::to_string(wdefect) + ")");
  }
  return inst;
}

}  // namespace plank
