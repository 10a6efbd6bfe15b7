// manifest.hpp - run manifest emitted by every CLI command: the command name,
// a full echo of the effective configuration, a digest of the instance, wall
// time, and the artifact version. Wall time lives only here, never in payload
// files, so payloads stay byte-reproducible.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "plank/instance.hpp"
#include "plank/json_util.hpp"

namespace plank {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a, 64-bit: offset basis 14695981039346656037, prime 1099511628211.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

// Digest of the canonical (compact) JSON encoding of the instance.
inline std::string instance_digest(const PlankInstance& inst) {
  const nlohmann::json j = inst;
  return hex64(fnv1a64(j.dump()));
}

struct RunManifest {
  std::string command;
  nlohmann::json config;  // full flag echo
  std::string instance_digest;
  double wall_ms = 0.0;
  std::string version = kVersion;
};

inline void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"command", m.command},
                     {"config", m.config},
                     {"instance_digest", m.instance_digest},
                     {"wall_ms", m.wall_ms},
                     {"version", m.version}};
}

}  // namespace plank
