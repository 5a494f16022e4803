#include "sectionlab/hash.hpp"

#include <cstdio>

namespace sectionlab {

void ContentHash::add_bytes(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    state_ ^= p[i];
    state_ *= 0x100000001b3ULL;
  }
}

void ContentHash::add(std::string_view s) { add_bytes(s.data(), s.size()); }

void ContentHash::add(double x) {
  // -0.0 and 0.0 hash identically
  if (x == 0.0) x = 0.0;
  add_bytes(&x, sizeof x);
}

void ContentHash::add(std::int64_t x) { add_bytes(&x, sizeof x); }

void ContentHash::add(std::span<const double> xs) {
  for (double x : xs) add(x);
}

std::string ContentHash::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

std::string hash_hex(std::string_view text) {
  ContentHash h;
  h.add(text);
  return h.hex();
}

}  // namespace sectionlab
