#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "plank/complex_ops.hpp"
#include "plank/rng.hpp"

using namespace plank;
using Catch::Matchers::WithinAbs;

namespace {
CVector e(std::size_t d, std::size_t i) {
  CVector v(d, Complex(0.0, 0.0));
  v[i] = Complex(1.0, 0.0);
  return v;
}
}  // namespace

TEST_CASE("inner product follows the first-slot-linear convention") {
  CHECK(inner(e(2, 0), e(2, 0)) == Complex(1.0, 0.0));
  CHECK(inner(e(2, 0), e(2, 1)) == Complex(0.0, 0.0));
  // conjugation acts on the second slot only
  CHECK(inner(CVector{Complex(0, 1), Complex(0, 0)}, CVector{Complex(1, 0), Complex(0, 0)}) ==
        Complex(0.0, 1.0));
  CHECK_THROWS_AS(inner(e(2, 0), e(3, 0)), DimensionMismatch);
}

TEST_CASE("inner product conjugate symmetry on random vectors") {
  RngState rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 6;
    const CVector x = rand_unit_vector(d, rng);
    const CVector y = rand_unit_vector(d, rng);
    const Complex a = inner(x, y);
    const Complex b = std::conj(inner(y, x));
    CHECK_THAT(a.real(), WithinAbs(b.real(), 1e-15));
    CHECK_THAT(a.imag(), WithinAbs(b.imag(), 1e-15));
  }
}

TEST_CASE("norm") {
  CHECK(norm(e(3, 0)) == 1.0);
  CHECK(norm(CVector{Complex(3.0, 4.0), Complex(0.0, 0.0)}) == 5.0);
  CHECK(norm(CVector(4, Complex(0.0, 0.0))) == 0.0);
}

TEST_CASE("norm squared equals the self inner product") {
  RngState rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    CVector x = rand_unit_vector(3, rng);
    for (Complex& c : x) c *= 2.5;  // not unit
    const Complex self = inner(x, x);
    CHECK_THAT(norm(x) * norm(x), WithinAbs(self.real(), 1e-14));
    CHECK_THAT(self.imag(), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("normalize") {
  const CVector a = normalize(CVector{Complex(2.0, 0.0), Complex(0.0, 0.0)});
  CHECK(a[0] == Complex(1.0, 0.0));
  CHECK(a[1] == Complex(0.0, 0.0));

  const CVector b = normalize(CVector{Complex(1.0, 0.0), Complex(1.0, 0.0)});
  CHECK_THAT(b[0].real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(b[1].real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(norm(b), WithinAbs(1.0, 1e-14));

  CHECK_THROWS_AS(normalize(CVector(2, Complex(0.0, 0.0))), ZeroVector);
}

TEST_CASE("axpy") {
  RngState rng(13);
  const CVector x = rand_unit_vector(3, rng);
  const CVector y = rand_unit_vector(3, rng);
  CHECK(axpy(Complex(0.0, 0.0), x, y) == y);
  CHECK(axpy(Complex(1.0, 0.0), x, CVector(3, Complex(0.0, 0.0))) == x);

  const CVector r = axpy(Complex(0.0, 1.0), e(2, 0), e(2, 1));
  CHECK(r[0] == Complex(0.0, 1.0));
  CHECK(r[1] == Complex(1.0, 0.0));
}

TEST_CASE("axpy norm expansion identity") {
  // ||z v + u||^2 = |z|^2 + 2 Re(z <v,u>) + 1 for unit u, v
  RngState rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const CVector v = rand_unit_vector(d, rng);
    const CVector u = rand_unit_vector(d, rng);
    const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const double lhs = std::pow(norm(axpy(z, v, u)), 2);
    const double rhs = std::norm(z) + 2.0 * (z * inner(v, u)).real() + 1.0;
    CHECK_THAT(lhs, WithinAbs(rhs, 1e-12));
  }
}

TEST_CASE("gauge_fix canonical examples") {
  const CVector a = gauge_fix(CVector{Complex(0.0, 1.0), Complex(0.0, 0.0)});
  CHECK_THAT(a[0].real(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(a[0].imag(), WithinAbs(0.0, 1e-15));

  const CVector b = gauge_fix(CVector{Complex(1.0, 0.0), Complex(0.0, 0.0)});
  CHECK(b[0] == Complex(1.0, 0.0));

  const CVector c = gauge_fix(CVector{Complex(0.0, 0.0), Complex(-1.0, 0.0)});
  CHECK_THAT(c[1].real(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(c[1].imag(), WithinAbs(0.0, 1e-15));

  CHECK_THROWS_AS(gauge_fix(CVector(3, Complex(0.0, 0.0))), ZeroVector);
}

TEST_CASE("gauge_fix is phase invariant and idempotent") {
  RngState rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 5;
    const CVector u = rand_unit_vector(d, rng);
    const double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    CVector rotated = u;
    for (Complex& c : rotated) c *= std::polar(1.0, phi);

    const CVector g1 = gauge_fix(u);
    const CVector g2 = gauge_fix(rotated);
    const CVector g3 = gauge_fix(g1);
    for (std::size_t i = 0; i < d; ++i) {
      CHECK_THAT(std::abs(g1[i] - g2[i]), WithinAbs(0.0, 1e-12));
      CHECK_THAT(std::abs(g1[i] - g3[i]), WithinAbs(0.0, 1e-12));
    }
  }
}
