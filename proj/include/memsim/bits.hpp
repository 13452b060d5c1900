#pragma once

#include <bit>
#include <cstdint>

namespace memsim {

// ceil(log2(v)) with ceil_log2(0) == ceil_log2(1) == 0.
inline std::uint32_t ceil_log2(std::uint64_t v) {
  if (v <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(v - 1));
}

inline std::uint64_t zigzag(std::int64_t p) {
  return (static_cast<std::uint64_t>(p) << 1) ^ static_cast<std::uint64_t>(p >> 63);
}

}  // namespace memsim
