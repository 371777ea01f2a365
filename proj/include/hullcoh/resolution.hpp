#pragma once

#include <bit>
#include <compare>
#include <map>
#include <utility>

#include "hullcoh/exterior.hpp"
#include "hullcoh/polycyclic.hpp"

namespace hullcoh {

/// Basis element g * b_S of the free Q[Gamma]-module.
struct Cell {
  Mask mask;
  GroupElem g;
  auto operator<=>(const Cell&) const = default;
};

/// Finite Q-linear combination of cells.
using Chain = std::map<Cell, Rat>;

inline void add_to(Chain& c, const Cell& cell, const Rat& v) {
  if (sgn(v) == 0) return;
  auto [it, inserted] = c.try_emplace(cell, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) c.erase(it);
  }
}

inline void add_scaled(Chain& dst, const Chain& src, const Rat& s) {
  for (const auto& [cell, v] : src) add_to(dst, cell, v * s);
}

/// Free resolution of Q over Q[Gamma] for a poly-Z group, with one generator
/// b_S per subset S of {0..n-1} in degree |S|.
///
/// With j = min S and M = S \ {j}, the differential is
///   d b_S = t_j tau_j(b_M) - b_M - (d b_M with j added to every mask),
/// the mapping cone of t_j tau_j - 1 on the resolution of Gamma_{j+1}. Here
/// tau_j is a chain map of that resolution, semilinear over g -> t_j^{-1} g t_j,
/// built with the contracting homotopy of level j+1. The contracting homotopy
/// of level j comes from the perturbation lemma: the "vertical" part without
/// t_j tau_j retracts onto Q[t^{+-1}] e_0 + Q[t^{+-1}] e_1, whose perturbed
/// differential e_1 -> (t - 1) e_0 is contracted explicitly.
class Resolution {
 public:
  explicit Resolution(const PolyZPresentation& p) : collector_(p), n_(p.n) {}

  const Collector& collector() const noexcept { return collector_; }
  std::size_t rank() const noexcept { return n_; }

  Chain cell(Mask s, GroupElem g, const Rat& c = 1) const {
    Chain out;
    add_to(out, Cell{s, std::move(g)}, c);
    return out;
  }
  Chain generator(Mask s) const { return cell(s, collector_.identity()); }

  /// h * x
  Chain act(const GroupElem& h, const Chain& x) const {
    Chain out;
    for (const auto& [c, v] : x) add_to(out, Cell{c.mask, collector_.multiply(h, c.g)}, v);
    return out;
  }

  const Chain& boundary(Mask s) const {
    if (auto it = boundary_cache_.find(s); it != boundary_cache_.end()) return it->second;
    Chain out;
    if (s != 0) {
      const std::size_t j = static_cast<std::size_t>(std::countr_zero(s));
      const Mask m = s & ~(Mask{1} << j);
      out = act(collector_.generator(j), tau(j, m));
      add_to(out, Cell{m, collector_.identity()}, -1);
      for (const auto& [c, v] : boundary(m)) add_to(out, Cell{c.mask | (Mask{1} << j), c.g}, -v);
    }
    return boundary_cache_.emplace(s, std::move(out)).first->second;
  }

  Chain boundary(const Chain& x) const {
    Chain out;
    for (const auto& [c, v] : x) add_scaled(out, act(c.g, boundary(c.mask)), v);
    return out;
  }

  Rat augmentation(const Chain& x) const {
    Rat e = 0;
    for (const auto& [c, v] : x)
      if (c.mask == 0) e += v;
    return e;
  }

  /// tau_j(b_m) for m a subset of {j+1..}.
  const Chain& tau(std::size_t j, Mask m) const {
    auto key = std::make_pair(j, m);
    if (auto it = tau_cache_.find(key); it != tau_cache_.end()) return it->second;
    Chain out = m == 0 ? generator(0) : homotopy(j + 1, tau(j, boundary(m)));
    return tau_cache_.emplace(key, std::move(out)).first->second;
  }

  /// Semilinear extension: tau_j(g x) = (t_j^{-1} g t_j) tau_j(x).
  Chain tau(std::size_t j, const Chain& x) const {
    Chain out;
    for (const auto& [c, v] : x) add_scaled(out, act(collector_.conjugate_by_inverse(j, c.g), tau(j, c.mask)), v);
    return out;
  }

  /// Contracting homotopy H of the level-i resolution (masks in {i..}, group
  /// elements in Gamma_i): dH + Hd = 1 - b_0 * augmentation.
  Chain homotopy(std::size_t level, const Chain& x) const {
    Chain out;
    for (const auto& [c, v] : x) add_scaled(out, homotopy_cell(level, c), v);
    return out;
  }

 private:
  using Reduced = std::map<std::pair<int, std::int64_t>, Rat>;  // (0 or 1, power of t) -> coefficient

  const Chain& homotopy_cell(std::size_t i, const Cell& cell) const {
    auto key = std::make_pair(i, cell);
    if (auto it = homotopy_cache_.find(key); it != homotopy_cache_.end()) return it->second;
    Chain out;
    if (i < n_) {
      Chain x;
      add_to(x, cell, 1);
      Chain a = vertical_homotopy(i, x);
      Chain d = perturbation(i, a);
      out = a;
      add_scaled(out, vertical_homotopy(i, d), -1);

      Reduced r = project(i, x);
      for (const auto& [k, v] : project(i, d)) add_reduced(r, k, -v);
      Chain lifted = include(i, reduced_homotopy(r));
      add_scaled(out, lifted, 1);
      add_scaled(out, vertical_homotopy(i, perturbation(i, lifted)), -1);
    }
    return homotopy_cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  static void add_reduced(Reduced& r, std::pair<int, std::int64_t> k, const Rat& v) {
    if (sgn(v) == 0) return;
    auto [it, inserted] = r.try_emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (sgn(it->second) == 0) r.erase(it);
    }
  }

  /// Level i+1 homotopy applied sector by sector t_i^m Gamma_{i+1}; on cells
  /// containing i it is conjugated by the relabelling and negated.
  Chain vertical_homotopy(std::size_t i, const Chain& x) const {
    const Mask bit = Mask{1} << i;
    Chain out;
    for (const auto& [c, v] : x) {
      GroupElem g = c.g;
      const std::int64_t m = g[i];
      g[i] = 0;
      const bool upper = c.mask & bit;
      for (const auto& [c2, v2] : homotopy_cell(i + 1, Cell{c.mask & ~bit, std::move(g)})) {
        GroupElem g2 = c2.g;
        g2[i] = m;
        add_to(out, Cell{upper ? (c2.mask | bit) : c2.mask, std::move(g2)}, upper ? Rat(-v * v2) : Rat(v * v2));
      }
    }
    return out;
  }

  /// The t_i tau_i part of the differential: g b_{M+i} -> g t_i tau_i(b_M) - g b_M.
  Chain perturbation(std::size_t i, const Chain& x) const {
    const Mask bit = Mask{1} << i;
    Chain out;
    for (const auto& [c, v] : x) {
      if (!(c.mask & bit)) continue;
      const Mask m = c.mask & ~bit;
      add_scaled(out, act(collector_.mul_gen(c.g, i, 1), tau(i, m)), v);
      add_to(out, Cell{m, c.g}, -v);
    }
    return out;
  }

  Reduced project(std::size_t i, const Chain& x) const {
    const Mask bit = Mask{1} << i;
    Reduced r;
    for (const auto& [c, v] : x) {
      if (c.mask == 0) add_reduced(r, {0, c.g[i]}, v);
      else if (c.mask == bit) add_reduced(r, {1, c.g[i]}, v);
    }
    return r;
  }

  Chain include(std::size_t i, const Reduced& r) const {
    Chain out;
    for (const auto& [k, v] : r) add_to(out, Cell{k.first == 0 ? Mask{0} : Mask{1} << i, collector_.generator(i, k.second)}, v);
    return out;
  }

  /// Contraction of Q[t^{+-1}] e_1 -> Q[t^{+-1}] e_0, e_1 -> (t - 1) e_0.
  static Reduced reduced_homotopy(const Reduced& r) {
    Reduced out;
    for (const auto& [k, v] : r) {
      if (k.first != 0) continue;
      const std::int64_t m = k.second;
      for (std::int64_t j = 0; j < m; ++j) add_reduced(out, {1, j}, v);
      for (std::int64_t j = m; j < 0; ++j) add_reduced(out, {1, j}, -v);
    }
    return out;
  }

  Collector collector_;
  std::size_t n_;
  mutable std::map<Mask, Chain> boundary_cache_;
  mutable std::map<std::pair<std::size_t, Mask>, Chain> tau_cache_;
  mutable std::map<std::pair<std::size_t, Cell>, Chain> homotopy_cache_;
};

}  // namespace hullcoh
