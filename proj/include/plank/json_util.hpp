// json_util.hpp - JSON encoding of complex scalars and vectors
//
// A complex number serializes as the two-element array [re, im] in every file
// format this project reads or writes.
#pragma once

#include <complex>

#include <json.hpp>

#include "plank/errors.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) {
    j = json::array({z.real(), z.imag()});
  }
  static void from_json(const json& j, std::complex<double>& z) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      throw plank::ParseError("complex value must be a [re, im] number pair, got " + j.dump());
    z = {j[0].get<double>(), j[1].get<double>()};
  }
};

}  // namespace nlohmann
