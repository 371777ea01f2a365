#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hullcoh/linalg.hpp"

namespace hullcoh {

/// Bit set of basis indices; bit i set means e_i is present.
using Mask = std::uint32_t;

inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

inline std::vector<std::size_t> mask_indices(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Sorted index tuples of a fixed ambient size, grouped by length and listed in
/// lexicographic order. Position within a degree is the canonical layout of
/// every exterior-power matrix in the library.
class ExteriorIndex {
 public:
  ExteriorIndex() = default;
  explicit ExteriorIndex(std::size_t n) : n_(n), by_degree_(n + 1) {
    if (n > 30) throw validation_error("exterior index supports at most 30 generators");
    for (std::size_t k = 0; k <= n; ++k) enumerate(0, k, 0, by_degree_[k]);
    for (auto& masks : by_degree_)
      for (std::size_t i = 0; i < masks.size(); ++i) position_[masks[i]] = i;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t count(std::size_t k) const { return k <= n_ ? by_degree_[k].size() : 0; }
  const std::vector<Mask>& masks(std::size_t k) const { return by_degree_.at(k); }
  std::size_t position(Mask m) const { return position_.at(m); }

 private:
  void enumerate(std::size_t start, std::size_t k, Mask acc, std::vector<Mask>& out) {
    if (k == 0) {
      out.push_back(acc);
      return;
    }
    for (std::size_t i = start; i + k <= n_; ++i) enumerate(i + 1, k - 1, acc | (Mask{1} << i), out);
  }

  std::size_t n_ = 0;
  std::vector<std::vector<Mask>> by_degree_;
  std::unordered_map<Mask, std::size_t> position_;
};

/// Sign of the permutation sorting `seq`, and the resulting mask; nullopt when
/// an index repeats (the wedge vanishes).
struct SortedWedge {
  int sign;
  Mask mask;
};
inline std::optional<SortedWedge> sort_wedge(std::vector<std::size_t> seq) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i)
    for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
      if (seq[j - 1] == seq[j]) return std::nullopt;
      std::swap(seq[j - 1], seq[j]);
      sign = -sign;
    }
  Mask m = 0;
  for (auto s : seq) m |= Mask{1} << s;
  return SortedWedge{sign, m};
}

/// k-th exterior power of a linear map (columns = images of basis vectors),
/// in the lexicographic basis: entry (I, J) is the minor rows I, columns J.
inline Matrix exterior_power(const Matrix& a, std::size_t k, const ExteriorIndex& idx) {
  const auto& masks = idx.masks(k);
  Matrix out(masks.size(), masks.size());
  for (std::size_t r = 0; r < masks.size(); ++r) {
    auto rows = mask_indices(masks[r]);
    for (std::size_t c = 0; c < masks.size(); ++c) {
      auto cols = mask_indices(masks[c]);
      out(r, c) = k == 0 ? Rat(1) : determinant(a.select_rows(rows).select_columns(cols));
    }
  }
  return out;
}

}  // namespace hullcoh
