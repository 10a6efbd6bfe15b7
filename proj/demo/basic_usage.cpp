// Generates a random instance, solves it, and verifies the result in-process.
#include <iostream>

#include "plank/plank.hpp"

int main() {
  const plank::PlankInstance inst = plank::gen_random(4, 9, /*seed=*/17, plank::WeightMode::Random);

  plank::SolveConfig cfg;
  cfg.seed = 1;
  const plank::SolveResult res = plank::solve(inst, cfg);

  std::cout << "status      " << plank::to_string(res.status) << "\n"
            << "objective   " << res.objective << "\n"
            << "min margin  " << res.min_margin << "\n"
            << "residual    " << res.residual << "\n"
            << "iterations  " << res.iterations << "\n";

  const plank::Certificate cert = plank::verify(inst, res.u);
  std::cout << "certificate " << (cert.pass ? "Pass" : "Fail") << "\n";
  return cert.pass ? 0 : 1;
}
