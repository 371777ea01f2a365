#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "hullcoh/matrix.hpp"

namespace hullcoh {

struct RrefResult {
  Matrix reduced;                    ///< reduced row echelon form R
  std::vector<std::size_t> pivots;   ///< strictly increasing pivot columns
  Matrix transform;                  ///< invertible T with T * M = R (empty unless requested)
};

/// Gauss-Jordan elimination. The transform is only accumulated when asked for.
inline RrefResult rref(const Matrix& m, bool with_transform = true) {
  RrefResult out{m, {}, with_transform ? Matrix::identity(m.rows()) : Matrix()};
  Matrix& r = out.reduced;
  Matrix& t = out.transform;
  const std::size_t rows = r.rows();
  const std::size_t cols = r.cols();
  std::size_t lead = 0;
  Rat factor;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t p = lead;
    while (p < rows && sgn(r(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != lead) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(r(p, j), r(lead, j));
      if (with_transform)
        for (std::size_t j = 0; j < rows; ++j) std::swap(t(p, j), t(lead, j));
    }
    Rat inv = 1 / r(lead, c);
    for (std::size_t j = c; j < cols; ++j) r(lead, j) *= inv;
    if (with_transform)
      for (std::size_t j = 0; j < rows; ++j) t(lead, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead || sgn(r(i, c)) == 0) continue;
      factor = r(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(r(lead, j)) != 0) r(i, j) -= factor * r(lead, j);
      if (with_transform)
        for (std::size_t j = 0; j < rows; ++j)
          if (sgn(t(lead, j)) != 0) t(i, j) -= factor * t(lead, j);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m, false).pivots.size(); }

/// Columns form a basis of {v : m v = 0}, one per free column of the RREF.
inline Matrix kernel_matrix(const Matrix& m) {
  auto rr = rref(m, false);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(n, basis);
}

/// Indices of a maximal independent prefix-greedy set of columns.
inline std::vector<std::size_t> independent_columns(const Matrix& m) { return rref(m, false).pivots; }

inline std::optional<Matrix> try_inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  auto rr = rref(m, true);
  if (rr.pivots.size() != m.rows()) return std::nullopt;
  return rr.transform;
}

inline Matrix inverse(const Matrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw validation_error("matrix is singular");
  return *inv;
}

inline Rat determinant(Matrix m) {
  if (!m.is_square()) throw validation_error("determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rat f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Some X with a X = b, if one exists.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw validation_error("solve: row mismatch");
  auto rr = rref(Matrix::hstack(a, b), false);
  const std::size_t n = a.cols();
  for (auto p : rr.pivots)
    if (p >= n) return std::nullopt;
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(rr.pivots[i], j) = rr.reduced(i, n + j);
  return x;
}

inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  auto x = solve(a, Matrix::column_vector(b));
  if (!x) return std::nullopt;
  return x->column(0);
}

/// A linear subspace of Q^ambient, stored as a full-column-rank basis matrix.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

  /// Span of arbitrary columns; dependent columns are dropped (greedy, left to right).
  static Subspace span(const Matrix& cols) {
    Subspace s(cols.rows());
    if (cols.cols() > 0) s.basis_ = cols.select_columns(independent_columns(cols));
    return s;
  }
  static Subspace span(std::size_t ambient, const std::vector<Vec>& vecs) {
    return span(Matrix::from_columns(ambient, vecs));
  }
  static Subspace full(std::size_t n) {
    Subspace s(n);
    s.basis_ = Matrix::identity(n);
    return s;
  }
  static Subspace zero(std::size_t n) { return Subspace(n); }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }
  Vec vector(std::size_t i) const { return basis_.column(i); }

  bool contains(const Vec& v) const { return dim() == 0 ? is_zero(v) : solve(basis_, v).has_value(); }
  bool contains(const Subspace& other) const {
    if (other.dim() == 0) return true;
    if (dim() == 0) return false;
    return solve(basis_, other.basis_).has_value();
  }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.contains(b);
  }

  /// Coordinates of v (which must lie in the subspace) in the stored basis.
  Vec coordinates(const Vec& v) const {
    auto c = solve(basis_, v);
    if (!c) throw validation_error("vector is not in the subspace");
    return *c;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.dim() == 0) return b;
    if (b.dim() == 0) return a;
    return span(Matrix::hstack(a.basis_, b.basis_));
  }

  static Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_);
    Matrix k = kernel_matrix(Matrix::hstack(a.basis_, -b.basis_));
    if (k.cols() == 0) return Subspace(a.ambient_);
    return span(a.basis_ * k.block(0, 0, a.dim(), k.cols()));
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
};

inline Subspace kernel_basis(const Matrix& m) {
  return Subspace::span(kernel_matrix(m));
}

inline Subspace column_space(const Matrix& m) { return Subspace::span(m); }

/// Standard basis vectors that complete the columns of `b` (full column rank)
/// to a basis of the ambient space.
inline Matrix complete_basis(const Matrix& b) {
  const std::size_t n = b.rows();
  auto piv = independent_columns(Matrix::hstack(b, Matrix::identity(n)));
  std::vector<std::size_t> extra;
  for (auto p : piv)
    if (p >= b.cols()) extra.push_back(p - b.cols());
  return Matrix::identity(n).select_columns(extra);
}

struct QuotientBasis {
  Matrix lifts;       ///< ambient x q: representatives of a basis of W/U
  Matrix projection;  ///< q x ambient: kills U, projection * lifts = identity
};

/// Basis of W/U with lifts chosen as the pivot columns of [U | W]. The
/// projection is defined on the whole ambient space and is exact on W.
inline QuotientBasis quotient_basis(const Subspace& w, const Subspace& u) {
  if (w.ambient_dim() != u.ambient_dim() || !w.contains(u)) throw validation_error("not a subspace pair");
  const std::size_t n = w.ambient_dim();
  const std::size_t du = u.dim();
  Matrix joined = Matrix::hstack(u.basis(), w.basis());
  auto piv = independent_columns(joined);
  std::vector<std::size_t> lift_cols;
  for (auto p : piv)
    if (p >= du) lift_cols.push_back(p);
  QuotientBasis out;
  out.lifts = joined.select_columns(lift_cols);
  if (out.lifts.cols() == 0) {
    out.lifts = Matrix(n, 0);
    out.projection = Matrix(0, n);
    return out;
  }
  Matrix b = Matrix::hstack(u.basis(), out.lifts);
  Matrix full = Matrix::hstack(b, complete_basis(b));
  Matrix inv = inverse(full);
  out.projection = inv.block(du, 0, out.lifts.cols(), n);
  return out;
}

/// Intersection of ker(op - id) over all operators; the full space for an empty list.
inline Subspace joint_fixed_subspace(std::span<const Matrix> ops, std::size_t n) {
  if (ops.empty()) return Subspace::full(n);
  Matrix stacked(0, n);
  for (const auto& op : ops) {
    if (op.rows() != n || op.cols() != n) throw validation_error("joint_fixed_subspace: dimension mismatch");
    stacked = Matrix::vstack(stacked, op - Matrix::identity(n));
  }
  return kernel_basis(stacked);
}

inline Subspace joint_kernel(std::span<const Matrix> ops, std::size_t n) {
  Matrix stacked(0, n);
  for (const auto& op : ops) {
    if (op.cols() != n) throw validation_error("joint_kernel: dimension mismatch");
    stacked = Matrix::vstack(stacked, op);
  }
  return kernel_basis(stacked);
}

}  // namespace hullcoh
