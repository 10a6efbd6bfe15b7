#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "plank/instance.hpp"
#include "plank/solver.hpp"

using namespace plank;
using Catch::Matchers::WithinAbs;

TEST_CASE("validate accepts a tight basis instance") {
  const PlankInstance inst = gen_tight(2);
  const ValidationReport rep = validate(inst, 1e-12);
  CHECK(rep.valid());
}

TEST_CASE("validate reports weight and norm defects") {
  PlankInstance inst = gen_tight(2);
  inst.weights = {1.0, 1.0};  // sum of squares 2
  ValidationReport rep = validate(inst);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].check == "weight_sum_sq");
  CHECK_THAT(rep.violations[0].defect, WithinAbs(1.0, 1e-12));

  PlankInstance inst2 = gen_tight(2);
  for (Complex& c : inst2.vectors[0]) c *= 0.9;
  rep = validate(inst2);
  REQUIRE_FALSE(rep.valid());
  CHECK(rep.violations[0].check == "unit_norm[0]");
  CHECK_THAT(rep.violations[0].defect, WithinAbs(0.1, 1e-12));
}

TEST_CASE("gen_random equal mode gives t_k = 1/sqrt(n)") {
  const PlankInstance inst = gen_random(3, 4, 1, WeightMode::Equal);
  for (double w : inst.weights) CHECK(w == 0.5);
}

TEST_CASE("generator outputs validate at 1e-12") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 1 + seed % 6;
    const std::size_t n = 1 + (3 * seed) % 12;
    for (WeightMode mode : {WeightMode::Equal, WeightMode::Random}) {
      const PlankInstance inst = gen_random(d, n, seed, mode);
      CHECK(validate(inst, 1e-12).valid());
    }
  }
  CHECK(validate(gen_tight(5), 1e-12).valid());
  CHECK(validate(gen_repeated(3, 7), 1e-12).valid());
}

TEST_CASE("gen_random is deterministic in the seed") {
  const PlankInstance a = gen_random(4, 6, 7, WeightMode::Random);
  const PlankInstance b = gen_random(4, 6, 7, WeightMode::Random);
  CHECK(a.vectors == b.vectors);
  CHECK(a.weights == b.weights);
}

TEST_CASE("gen_tight fields") {
  const PlankInstance inst = gen_tight(2);
  CHECK(inst.d == 2);
  CHECK(inst.n == 2);
  CHECK(inst.vectors[0] == CVector{Complex(1, 0), Complex(0, 0)});
  CHECK(inst.vectors[1] == CVector{Complex(0, 0), Complex(1, 0)});
  for (double w : inst.weights) CHECK(w == std::sqrt(0.5));

  const PlankInstance one = gen_tight(1);
  CHECK(one.n == 1);
  CHECK(one.vectors[0] == CVector{Complex(1, 0)});
  CHECK(one.weights[0] == 1.0);
}

TEST_CASE("tight d=3 optimum value confirmed by constrained brute force") {
  // On gen_tight(3), F depends only on the moduli m_k = |u_k|:
  // maximize (1/3) sum ln m_k subject to sum m_k^2 = 1. Scan the simplex of
  // (m_1^2, m_2^2) directly as an oracle independent of any solver code.
  const double expected = -std::log(3.0) / 2.0;
  double best = -1e300;
  const int g = 400;
  for (int i = 1; i < g; ++i) {
    for (int j = 1; j < g - i; ++j) {
      const double a = static_cast<double>(i) / g;
      const double b = static_cast<double>(j) / g;
      const double c = 1.0 - a - b;
      const double f = (std::log(a) + std::log(b) + std::log(c)) / 6.0;
      best = std::max(best, f);
    }
  }
  CHECK_THAT(best, WithinAbs(expected, 1e-4));
  CHECK_THAT(expected, WithinAbs(-0.5493061443340548, 1e-12));
}

TEST_CASE("gen_repeated margins at the known optimum") {
  const PlankInstance one = gen_repeated(2, 1);
  CVector e1{Complex(1, 0), Complex(0, 0)};
  CHECK_THAT(std::abs(inner(one.vectors[0], e1)) - one.weights[0], WithinAbs(0.0, 1e-15));

  const PlankInstance four = gen_repeated(2, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double margin = std::abs(inner(four.vectors[k], e1)) - four.weights[k];
    CHECK_THAT(margin, WithinAbs(0.5, 1e-15));
  }
}

TEST_CASE("instance JSON round trip is bit exact") {
  const PlankInstance inst = gen_random(3, 5, 99, WeightMode::Random);
  const std::string text = instance_to_json(inst);
  const PlankInstance back = instance_from_json(text);
  CHECK(back.d == inst.d);
  CHECK(back.n == inst.n);
  CHECK(back.vectors == inst.vectors);  // exact double equality
  CHECK(back.weights == inst.weights);
  CHECK(instance_to_json(back) == text);
}

TEST_CASE("tight d=2 serialization shape") {
  const std::string text = instance_to_json(gen_tight(2));
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["d"] == 2);
  CHECK(j["n"] == 2);
  CHECK(j["vectors"][0][0][0] == 1.0);
  CHECK(j["vectors"][0][1][0] == 0.0);
  CHECK(j["vectors"][1][1][0] == 1.0);
  CHECK(j["weights"][0] == 0.7071067811865476);
  CHECK(j["weights"][1] == 0.7071067811865476);
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(instance_from_json("not json"), ParseError);
  CHECK_THROWS_AS(instance_from_json("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(instance_from_json(R"({"d":2,"n":1,"vectors":[[[1,0],[0,0]]]})"), ParseError);
  // weights array of the wrong arity
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"d":2,"n":1,"vectors":[[[1,0],[0,0]]],"weights":[0.5,0.5]})"),
      ParseError);
  // complex entry that is not a [re,im] pair
  CHECK_THROWS_AS(
      instance_from_json(R"({"d":2,"n":1,"vectors":[[[1,0],"x"]],"weights":[1.0]})"), ParseError);
}

TEST_CASE("loader drops zero-weight planks with a note") {
  const std::string text = R"({
    "d": 2, "n": 2,
    "vectors": [[[1,0],[0,0]],[[0,0],[1,0]]],
    "weights": [1.0, 0.0]
  })";
  ValidationReport rep;
  const PlankInstance inst = instance_from_json(text, &rep);
  CHECK(inst.n == 1);
  CHECK(inst.weights == std::vector<double>{1.0});
  REQUIRE(rep.notes.size() == 1);
  CHECK(rep.notes[0].find("dropped zero-weight plank 1") != std::string::npos);
}

TEST_CASE("loader repairs small defects and rejects large ones") {
  // norm defect 5e-11: renormalized with a note
  const std::string near_unit = R"({
    "d": 1, "n": 1, "vectors": [[[1.00000000005, 0]]], "weights": [1.0]
  })";
  ValidationReport rep;
  const PlankInstance ok = instance_from_json(near_unit, &rep);
  CHECK_THAT(norm(ok.vectors[0]), WithinAbs(1.0, 1e-14));
  CHECK_FALSE(rep.notes.empty());

  // norm defect 1e-3: rejected
  const std::string far = R"({
    "d": 1, "n": 1, "vectors": [[[1.001, 0]]], "weights": [1.0]
  })";
  CHECK_THROWS_AS(instance_from_json(far), ValidationError);

  // weight-sum defect 1e-11: rescaled
  const std::string near_sum = R"({
    "d": 1, "n": 2,
    "vectors": [[[1,0]],[[1,0]]],
    "weights": [0.70710678118, 0.70710678119]
  })";
  ValidationReport rep2;
  const PlankInstance ok2 = instance_from_json(near_sum, &rep2);
  double s = 0.0;
  for (double w : ok2.weights) s += w * w;
  CHECK_THAT(s, WithinAbs(1.0, 1e-14));

  // weight-sum defect well beyond tolerance: rejected
  const std::string bad_sum = R"({
    "d": 1, "n": 2, "vectors": [[[1,0]],[[1,0]]], "weights": [1.0, 1.0]
  })";
  CHECK_THROWS_AS(instance_from_json(bad_sum), ValidationError);

  // negative weight: rejected
  const std::string neg = R"({
    "d": 1, "n": 1, "vectors": [[[1,0]]], "weights": [-1.0]
  })";
  CHECK_THROWS_AS(instance_from_json(neg), ValidationError);
}

TEST_CASE("independent-pair overlap statistics match 1/d") {
  // mean of |<v_1,v_2>|^2 over 1e4 seeds at d=5 is 1/5 +- 0.01
  double acc = 0.0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    const PlankInstance inst = gen_random(5, 2, 50000 + s, WeightMode::Equal);
    acc += std::norm(inner(inst.vectors[0], inst.vectors[1]));
  }
  CHECK_THAT(acc / trials, WithinAbs(0.2, 0.01));
}
