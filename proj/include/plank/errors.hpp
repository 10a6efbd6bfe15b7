// errors.hpp - exception types shared by all plank modules
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plank {

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct WrongDimension : std::invalid_argument {
  explicit WrongDimension(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroVector : std::domain_error {
  ZeroVector() : std::domain_error("operation undefined on a (near-)zero vector") {}
};

// |<v_k, v>| fell to or below the factor floor; the caller should jitter the
// iterate and retry.
struct NearZeroFactor : std::domain_error {
  std::size_t k;
  explicit NearZeroFactor(std::size_t k_)
      : std::domain_error("plank factor |<v_k,v>| at floor, k=" + std::to_string(k_)), k(k_) {}
};

struct ZeroDenominator : std::domain_error {
  std::size_t k;
  explicit ZeroDenominator(std::size_t k_)
      : std::domain_error("zero denominator <u,v_k>, k=" + std::to_string(k_)), k(k_) {}
};

// Structurally malformed input document.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error("parse error: " + what) {}
};

// Well-formed document whose content violates an instance invariant beyond
// the load tolerances.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what)
      : std::runtime_error("validation error: " + what) {}
};

}  // namespace plank
