// certificate.hpp - post-hoc verification of a claimed solution vector.
// Everything is recomputed from (instance, u); caller-provided metrics are
// never trusted. The verdict gates on unit norm and margins only: the plank
// guarantee does not require stationarity, so the residual is informational.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "plank/complex_ops.hpp"
#include "plank/instance.hpp"
#include "plank/json_util.hpp"
#include "plank/solver.hpp"

namespace plank {

struct Certificate {
  double unit_norm_defect = 0.0;  // | ||u|| - 1 |
  std::vector<double> margins;
  double min_margin = 0.0;
  double residual = 0.0;  // +inf when a factor vanishes
  bool pass = false;
  std::vector<std::string> failing_checks;
};

// m_k = |<v_k,u>| - t_k, in instance order.
inline std::vector<double> margins(const PlankInstance& inst, const CVector& u) {
  const std::vector<Complex> w = plank_factors(inst, u);
  std::vector<double> m(inst.n);
  for (std::size_t k = 0; k < inst.n; ++k) m[k] = std::abs(w[k]) - inst.weights[k];
  return m;
}

inline Certificate verify(const PlankInstance& inst, const CVector& u, double tol_norm = 1e-9,
                          double tol_margin = 1e-7) {
  Certificate cert;
  cert.unit_norm_defect = std::abs(norm(u) - 1.0);
  cert.margins = margins(inst, u);
  cert.min_margin = *std::min_element(cert.margins.begin(), cert.margins.end());
  try {
    cert.residual = residual(inst, u);
  } catch (const NearZeroFactor&) {
    cert.residual = std::numeric_limits<double>::infinity();
  }
  if (cert.unit_norm_defect > tol_norm) cert.failing_checks.push_back("unit_norm");
  if (cert.min_margin < -tol_margin) cert.failing_checks.push_back("min_margin");
  cert.pass = cert.failing_checks.empty();
  return cert;
}

inline void to_json(nlohmann::json& j, const Certificate& c) {
  j = nlohmann::json{{"unit_norm_defect", c.unit_norm_defect},
                     {"margins", c.margins},
                     {"min_margin", c.min_margin},
                     {"residual", c.residual},
                     {"verdict", c.pass ? "Pass" : "Fail"},
                     {"failing_checks", c.failing_checks}};
}

}  // namespace plank
