#pragma once

#include <cstdint>
#include <cstring>
#include <string_view>

// FNV-1a, used for instance and checkpoint fingerprints.  Not cryptographic;
// just stable across runs and platforms with IEEE doubles.

namespace wgs {

class Fnv1a {
 public:
  Fnv1a& add_bytes(const void* p, size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < len; ++i) {
      h_ ^= b[i];
      h_ *= 0x100000001b3ull;
    }
    return *this;
  }
  Fnv1a& add(int v) { return add_bytes(&v, sizeof v); }
  Fnv1a& add(uint64_t v) { return add_bytes(&v, sizeof v); }
  Fnv1a& add(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return add(bits);
  }
  Fnv1a& add(std::string_view s) { return add_bytes(s.data(), s.size()); }
  uint64_t value() const { return h_; }

 private:
  uint64_t h_ = 0xcbf29ce484222325ull;
};

inline uint64_t fnv1a64(std::string_view s) { return Fnv1a().add(s).value(); }

}  // namespace wgs
