#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace noma {

// Locale-independent decimal rendering with 17 significant digits, enough to
// round-trip any double exactly. All CSV output goes through this.
inline std::string fmt_g17(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string fmt_hex16(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

// FNV-1a over bytes; used to fingerprint resolved scenario configs.
inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace noma
