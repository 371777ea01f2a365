#pragma once

#include <cstdint>
#include <random>

#include "hullcoh/matrix.hpp"

namespace hullcoh {

/// Small random rational combinations for seeded probes. The raw engine output
/// is reduced by hand so results do not depend on the standard library's
/// distribution implementations.
class ProbeRng {
 public:
  explicit ProbeRng(std::uint64_t seed) : engine_(seed) {}
  long small_int(long radius) { return static_cast<long>(engine_() % static_cast<std::uint64_t>(2 * radius + 1)) - radius; }
  Vec combination(std::size_t n, long radius) {
    Vec v(n);
    for (auto& x : v) x = small_int(radius);
    return v;
  }
  Matrix matrix(std::size_t rows, std::size_t cols, long radius) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = small_int(radius);
    return m;
  }
  Vec nonzero_combination(std::size_t n, long radius) {
    if (n == 0) return {};
    while (true) {
      Vec v = combination(n, radius);
      if (!is_zero(v)) return v;
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

}  // namespace hullcoh
