// plank - batch CLI for generating, solving, verifying and probing plank
// instances.
//
// Exit codes: 0 success / verification Pass, 1 verification Fail,
// 2 invalid input, 3 convergence failure.
//
// Commands whose payload goes to a file (generate, solve) print the run
// manifest on stdout; commands whose payload goes to stdout (verify, diag,
// oracle) print it on stderr. Payload JSON carries no timestamps, so repeated
// runs with the same flags are byte-identical.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "plank/plank.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConverge = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw plank::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw plank::ParseError("cannot write file: " + path);
  out << text;
}

plank::PlankInstance load_instance(const std::string& path, plank::ValidationReport* rep = nullptr) {
  return plank::instance_from_json(read_file(path), rep);
}

// Accepts a SolveResult document, any object with a "u" field, or a bare
// vector of [re,im] pairs.
plank::CVector load_solution_vector(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw plank::ParseError(e.what());
  }
  try {
    if (j.is_object() && j.contains("u")) return j.at("u").get<plank::CVector>();
    if (j.is_array()) return j.get<plank::CVector>();
  } catch (const json::exception& e) {
    throw plank::ParseError(std::string("solution vector: ") + e.what());
  }
  throw plank::ParseError("solution file must be a SolveResult object or a [re,im] array");
}

class Stopwatch {
 public:
  double ms() const {
    const auto dt = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(dt).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit_manifest(const std::string& command, json config, const plank::PlankInstance& inst,
                   const Stopwatch& sw, bool to_stdout) {
  plank::RunManifest m;
  m.command = command;
  m.config = std::move(config);
  m.instance_digest = plank::instance_digest(inst);
  m.wall_ms = sw.ms();
  const json j = m;
  (to_stdout ? std::cout : std::cerr) << j.dump(2) << "\n";
}

struct GenerateArgs {
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string mode = "equal";
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  Stopwatch sw;
  plank::PlankInstance inst;
  if (a.mode == "tight") {
    inst = plank::gen_tight(a.d);  // n is fixed at d
  } else if (a.mode == "repeated") {
    inst = plank::gen_repeated(a.d, a.n);
  } else if (a.mode == "equal") {
    inst = plank::gen_random(a.d, a.n, a.seed, plank::WeightMode::Equal);
  } else if (a.mode == "random") {
    inst = plank::gen_random(a.d, a.n, a.seed, plank::WeightMode::Random);
  } else {
    std::cerr << "unknown mode: " << a.mode << "\n";
    return kExitInvalid;
  }
  write_file(a.out, plank::instance_to_json(inst));
  emit_manifest("generate",
                json{{"d", a.d}, {"n", a.n}, {"seed", a.seed}, {"mode", a.mode}, {"out", a.out}},
                inst, sw, /*to_stdout=*/true);
  return kExitPass;
}

struct SolveArgs {
  std::string in, out;
  plank::SolveConfig cfg;
};

int cmd_solve(const SolveArgs& a) {
  Stopwatch sw;
  const plank::PlankInstance inst = load_instance(a.in);
  const plank::SolveResult res = plank::solve(inst, a.cfg);
  const json j = res;
  write_file(a.out, j.dump(2) + "\n");
  emit_manifest("solve",
                json{{"in", a.in},
                     {"out", a.out},
                     {"multistart", a.cfg.multistart},
                     {"seed", a.cfg.seed},
                     {"residual_tol", a.cfg.residual_tol},
                     {"margin_tol", a.cfg.margin_tol},
                     {"max_iters", a.cfg.max_iters},
                     {"threads", a.cfg.threads}},
                inst, sw, /*to_stdout=*/true);
  return res.status == plank::SolveStatus::Converged ? kExitPass : kExitNoConverge;
}

struct VerifyArgs {
  std::string in, solution;
  double tol_margin = 1e-7;
  double tol_norm = 1e-9;
};

int cmd_verify(const VerifyArgs& a) {
  Stopwatch sw;
  const plank::PlankInstance inst = load_instance(a.in);
  const plank::CVector u = load_solution_vector(a.solution);
  if (u.size() != inst.d) throw plank::ParseError("solution dimension does not match instance");
  const plank::Certificate cert = plank::verify(inst, u, a.tol_norm, a.tol_margin);
  const json j = cert;
  std::cout << j.dump(2) << "\n";
  emit_manifest("verify",
                json{{"in", a.in},
                     {"solution", a.solution},
                     {"tol_margin", a.tol_margin},
                     {"tol_norm", a.tol_norm}},
                inst, sw, /*to_stdout=*/false);
  return cert.pass ? kExitPass : kExitFail;
}

struct DiagArgs {
  std::string in, u_path, what = "circle";
  std::size_t j = 1;  // 1-based on the command line
  int boundary_samples = 512;
  int interior_samples = 2000;
  std::uint64_t seed = 0;
  std::string kind = "weighted";
};

int cmd_diag(const DiagArgs& a) {
  Stopwatch sw;
  const plank::PlankInstance inst = load_instance(a.in);
  const plank::CVector u = load_solution_vector(a.u_path);
  if (u.size() != inst.d) throw plank::ParseError("vector dimension does not match instance");
  if (a.j < 1 || a.j > inst.n) {
    std::cerr << "--j must be in 1.." << inst.n << "\n";
    return kExitInvalid;
  }
  const std::size_t j0 = a.j - 1;

  json payload;
  if (a.what == "circle") {
    const plank::CircleSpec spec = plank::circle_of(u, inst, j0);
    payload = json{{"center", spec.center}, {"radius", spec.radius}, {"j", a.j}};
  } else if (a.what == "pprime") {
    const plank::Complex raw = plank::p_prime_zero_raw(inst, u, j0);
    const plank::Complex closed = plank::p_prime_zero_stationary(inst, u, j0);
    payload = json{{"raw", raw},
                   {"stationary", closed},
                   {"abs_difference", std::abs(raw - closed)},
                   {"residual", plank::residual(inst, u)}};
  } else if (a.what == "probe") {
    plank::RngState rng(a.seed);
    const plank::ProbeKind kind =
        a.kind == "holomorphic" ? plank::ProbeKind::Holomorphic : plank::ProbeKind::Weighted;
    payload = plank::max_modulus_probe(inst, u, j0, a.boundary_samples, a.interior_samples, rng,
                                       kind);
  } else {
    std::cerr << "unknown --what: " << a.what << "\n";
    return kExitInvalid;
  }
  std::cout << payload.dump(2) << "\n";
  emit_manifest("diag",
                json{{"in", a.in},
                     {"u", a.u_path},
                     {"j", a.j},
                     {"what", a.what},
                     {"boundary_samples", a.boundary_samples},
                     {"interior_samples", a.interior_samples},
                     {"seed", a.seed},
                     {"kind", a.kind}},
                inst, sw, /*to_stdout=*/false);
  return kExitPass;
}

struct OracleArgs {
  std::string in;
  std::size_t grid = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

int cmd_oracle(const OracleArgs& a) {
  Stopwatch sw;
  const plank::PlankInstance inst = load_instance(a.in);
  if ((a.grid == 0) == (a.samples == 0)) {
    std::cerr << "exactly one of --grid or --samples is required\n";
    return kExitInvalid;
  }
  plank::OracleResult res;
  if (a.grid > 0) {
    if (inst.d != 2) {
      std::cerr << "--grid mode requires a d=2 instance\n";
      return kExitInvalid;
    }
    res = plank::brute_force_d2(inst, a.grid);
  } else {
    res = plank::random_restart_oracle(inst, a.samples, a.seed);
  }
  const json j = res;
  std::cout << j.dump(2) << "\n";
  emit_manifest("oracle",
                json{{"in", a.in}, {"grid", a.grid}, {"samples", a.samples}, {"seed", a.seed}},
                inst, sw, /*to_stdout=*/false);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plank: product-of-functionals maximization on the complex unit sphere"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* cgen = app.add_subcommand("generate", "write a problem instance to JSON");
  cgen->add_option("--d", gen.d, "ambient dimension")->required()->check(CLI::PositiveNumber);
  cgen->add_option("--n", gen.n, "number of planks (ignored by --mode tight)")
      ->check(CLI::PositiveNumber);
  cgen->add_option("--seed", gen.seed, "generator seed");
  cgen->add_option("--mode", gen.mode, "equal|random|tight|repeated")
      ->check(CLI::IsMember({"equal", "random", "tight", "repeated"}));
  cgen->add_option("--out", gen.out, "output path")->required();

  SolveArgs sol;
  CLI::App* csol = app.add_subcommand("solve", "solve an instance");
  csol->add_option("--in", sol.in, "instance JSON")->required();
  csol->add_option("--out", sol.out, "result JSON path")->required();
  csol->add_option("--multistart", sol.cfg.multistart, "random starts")->check(CLI::PositiveNumber);
  csol->add_option("--seed", sol.cfg.seed, "solver seed");
  csol->add_option("--residual-tol", sol.cfg.residual_tol, "stationarity tolerance");
  csol->add_option("--margin-tol", sol.cfg.margin_tol, "margin tolerance");
  csol->add_option("--max-iters", sol.cfg.max_iters, "iteration cap per ascent")
      ->check(CLI::PositiveNumber);
  csol->add_option("--threads", sol.cfg.threads, "multistart threads (default 1)")
      ->check(CLI::PositiveNumber);

  VerifyArgs ver;
  CLI::App* cver = app.add_subcommand("verify", "check a claimed solution");
  cver->add_option("--in", ver.in, "instance JSON")->required();
  cver->add_option("--solution", ver.solution, "solution JSON")->required();
  cver->add_option("--tol-margin", ver.tol_margin, "margin tolerance");
  cver->add_option("--tol-norm", ver.tol_norm, "unit-norm tolerance");

  DiagArgs dia;
  CLI::App* cdia = app.add_subcommand("diag", "escape-construction diagnostics");
  cdia->add_option("--in", dia.in, "instance JSON")->required();
  cdia->add_option("--u", dia.u_path, "vector JSON (SolveResult or bare array)")->required();
  cdia->add_option("--j", dia.j, "plank index, 1-based");
  cdia->add_option("--what", dia.what, "pprime|probe|circle")
      ->check(CLI::IsMember({"pprime", "probe", "circle"}));
  cdia->add_option("--boundary-samples", dia.boundary_samples, "probe boundary samples")
      ->check(CLI::PositiveNumber);
  cdia->add_option("--interior-samples", dia.interior_samples, "probe interior samples")
      ->check(CLI::PositiveNumber);
  cdia->add_option("--seed", dia.seed, "probe interior sampling seed");
  cdia->add_option("--kind", dia.kind, "probe evaluator: weighted|holomorphic")
      ->check(CLI::IsMember({"weighted", "holomorphic"}));

  OracleArgs ora;
  CLI::App* cora = app.add_subcommand("oracle", "independent brute-force maximizer");
  cora->add_option("--in", ora.in, "instance JSON")->required();
  cora->add_option("--grid", ora.grid, "d=2 grid resolution");
  cora->add_option("--samples", ora.samples, "random-restart sample count");
  cora->add_option("--seed", ora.seed, "restart seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (cgen->parsed()) {
      if (gen.mode != "tight" && gen.n == 0) {
        std::cerr << "--n is required for mode " << gen.mode << "\n";
        return kExitInvalid;
      }
      return cmd_generate(gen);
    }
    if (csol->parsed()) return cmd_solve(sol);
    if (cver->parsed()) return cmd_verify(ver);
    if (cdia->parsed()) return cmd_diag(dia);
    if (cora->parsed()) return cmd_oracle(ora);
  } catch (const plank::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const plank::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
