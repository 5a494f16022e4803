#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace sectionlab {

/// Incremental 64-bit FNV-1a. Used to pin grid, basis and report identity in files.
class ContentHash {
 public:
  void add_bytes(const void* data, std::size_t size);
  void add(std::string_view s);
  void add(double x);
  void add(std::int64_t x);
  void add(std::span<const double> xs);

  std::uint64_t value() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string hash_hex(std::string_view text);

}  // namespace sectionlab
