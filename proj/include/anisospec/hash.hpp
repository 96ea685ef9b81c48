#pragma once

#include <cstdint>
#include <string_view>

namespace anisospec {

// FNV-1a 64-bit hash; used to derive deterministic solver seeds and the
// run-manifest config fingerprint.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

} // namespace anisospec
