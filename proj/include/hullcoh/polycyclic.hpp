#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hullcoh/linalg.hpp"

namespace hullcoh {

/// t_gen^exp
struct Letter {
  std::size_t gen;
  std::int64_t exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Exponent vector of the normal form t_0^{a_0} t_1^{a_1} ... t_{n-1}^{a_{n-1}}.
using GroupElem = std::vector<std::int64_t>;

/// Poly-Z presentation Gamma = Gamma_0 > Gamma_1 > ... > Gamma_n = 1 with
/// Gamma_i = <t_i, ..., t_{n-1}> and each Gamma_i = Gamma_{i+1} x| <t_i>.
///
/// conj[i][j] (j > i) is a word in t_{i+1}.. for t_i t_j t_i^{-1};
/// inv[i][j] is a word for t_i^{-1} t_j t_i. Entries with j <= i are unused.
struct PolyZPresentation {
  std::size_t n = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<Word>> conj;
  std::vector<std::vector<Word>> inv;

  explicit PolyZPresentation(std::size_t rank = 0)
      : n(rank), conj(rank, std::vector<Word>(rank)), inv(rank, std::vector<Word>(rank)) {
    for (std::size_t i = 0; i < rank; ++i) labels.push_back("t" + std::to_string(i));
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j) {
        conj[i][j] = {{j, 1}};
        inv[i][j] = {{j, 1}};
      }
  }

  static PolyZPresentation free_abelian(std::size_t rank) { return PolyZPresentation(rank); }

  /// Z^n x|_A Z with generator order t, e_1, ..., e_n and t e_j t^{-1} = A e_j.
  static PolyZPresentation semidirect(const Matrix& a);
};

/// Integer matrix with determinant +-1.
inline bool is_unimodular_integer(const Matrix& a) {
  if (!a.is_square()) return false;
  for (const auto& x : a.data())
    if (x.get_den() != 1) return false;
  Rat d = determinant(a);
  return d == 1 || d == -1;
}

inline std::int64_t to_int64(const Rat& x, const char* what) {
  if (x.get_den() != 1 || !x.get_num().fits_slong_p()) throw validation_error(std::string(what) + " must be a machine integer");
  return x.get_num().get_si();
}

inline PolyZPresentation PolyZPresentation::semidirect(const Matrix& a) {
  if (!is_unimodular_integer(a)) throw validation_error("semidirect product needs an integer matrix with determinant +-1");
  const std::size_t m = a.rows();
  Matrix ainv = inverse(a);
  PolyZPresentation p(m + 1);
  p.labels[0] = "t";
  for (std::size_t j = 0; j < m; ++j) p.labels[j + 1] = "e" + std::to_string(j + 1);
  for (std::size_t j = 0; j < m; ++j) {
    Word w, wi;
    for (std::size_t k = 0; k < m; ++k) {
      if (sgn(a(k, j)) != 0) w.push_back({k + 1, to_int64(a(k, j), "matrix entry")});
      if (sgn(ainv(k, j)) != 0) wi.push_back({k + 1, to_int64(ainv(k, j), "matrix entry")});
    }
    p.conj[0][j + 1] = w;
    p.inv[0][j + 1] = wi;
  }
  return p;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw validation_error("group exponent overflow");
  return r;
}

/// Normal-form multiplication by collection. Moving t_k^e to the left past a
/// suffix s in Gamma_{k+1} uses s t_k = t_k (t_k^{-1} s t_k), so the suffix is
/// rewritten by the automorphism given by the inverse words (or the
/// conjugation words for e < 0). Recursion only descends the tower.
class Collector {
 public:
  explicit Collector(PolyZPresentation p) : p_(std::move(p)) {
    const std::size_t n = p_.n;
    images_.assign(2, std::vector<std::vector<GroupElem>>(n, std::vector<GroupElem>(n)));
    image_inverses_ = images_;
    for (int dir = 0; dir < 2; ++dir)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const Word& w = dir == 0 ? p_.inv[i][j] : p_.conj[i][j];
          for (const auto& l : w)
            if (l.gen <= i || l.gen >= n) throw validation_error("presentation word for generator pair (" + std::to_string(i) + "," + std::to_string(j) + ") uses a generator outside the subgroup below " + p_.labels[i]);
        }
    for (std::size_t i = n; i-- > 0;)
      for (int dir = 0; dir < 2; ++dir)
        for (std::size_t j = i + 1; j < n; ++j) {
          images_[dir][i][j] = evaluate(dir == 0 ? p_.inv[i][j] : p_.conj[i][j]);
          image_inverses_[dir][i][j] = inverse(images_[dir][i][j]);
        }
  }

  const PolyZPresentation& presentation() const noexcept { return p_; }
  std::size_t rank() const noexcept { return p_.n; }

  GroupElem identity() const { return GroupElem(p_.n, 0); }
  GroupElem generator(std::size_t i, std::int64_t e = 1) const {
    GroupElem g = identity();
    g.at(i) = e;
    return g;
  }

  /// g * t_k^e
  GroupElem mul_gen(GroupElem g, std::size_t k, std::int64_t e) const {
    if (e == 0) return g;
    GroupElem suffix = identity();
    bool trivial = true;
    for (std::size_t j = k + 1; j < p_.n; ++j) {
      suffix[j] = g[j];
      trivial = trivial && g[j] == 0;
    }
    g[k] = checked_add(g[k], e);
    if (trivial) return g;
    GroupElem s = suffix;
    const int dir = e > 0 ? 0 : 1;
    for (std::int64_t step = 0; step < (e > 0 ? e : -e); ++step) s = apply(k, dir, s);
    for (std::size_t j = k + 1; j < p_.n; ++j) g[j] = s[j];
    return g;
  }

  GroupElem multiply(GroupElem a, const GroupElem& b) const {
    for (std::size_t j = 0; j < p_.n; ++j)
      if (b[j] != 0) a = mul_gen(std::move(a), j, b[j]);
    return a;
  }

  GroupElem inverse(const GroupElem& g) const {
    GroupElem r = identity();
    for (std::size_t j = p_.n; j-- > 0;)
      if (g[j] != 0) r = mul_gen(std::move(r), j, -g[j]);
    return r;
  }

  GroupElem evaluate(const Word& w) const {
    GroupElem r = identity();
    for (const auto& l : w) r = mul_gen(std::move(r), l.gen, l.exp);
    return r;
  }

  /// t_k^{-1} s t_k (dir 0) or t_k s t_k^{-1} (dir 1) for s in Gamma_{k+1}.
  GroupElem apply(std::size_t k, int dir, const GroupElem& s) const {
    auto key = std::make_tuple(k, dir, s);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    GroupElem r = identity();
    for (std::size_t j = k + 1; j < p_.n; ++j) {
      const std::int64_t e = s[j];
      const GroupElem& img = e > 0 ? images_[dir][k][j] : image_inverses_[dir][k][j];
      for (std::int64_t step = 0; step < (e > 0 ? e : -e); ++step) r = multiply(std::move(r), img);
    }
    cache_.emplace(std::move(key), r);
    return r;
  }

  /// t_k^{-1} g t_k for g in Gamma_{k+1}.
  GroupElem conjugate_by_inverse(std::size_t k, const GroupElem& g) const { return apply(k, 0, g); }

 private:
  PolyZPresentation p_;
  std::vector<std::vector<std::vector<GroupElem>>> images_, image_inverses_;
  mutable std::map<std::tuple<std::size_t, int, GroupElem>, GroupElem> cache_;
};

inline std::string word_to_string(const PolyZPresentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += " ";
    s += p.labels[l.gen] + "^" + std::to_string(l.exp);
  }
  return s;
}

/// Checks that the words define mutually inverse automorphisms of each
/// subgroup Gamma_{i+1}: psi_i(phi_i(t_j)) = t_j = phi_i(psi_i(t_j)), and that
/// phi_i, psi_i respect the relations t_j t_k t_j^{-1} = conj[j][k] of Gamma_{i+1}.
inline void validate_presentation(const PolyZPresentation& p) {
  if (p.labels.size() != p.n || p.conj.size() != p.n || p.inv.size() != p.n)
    throw validation_error("presentation data does not match its rank");
  Collector c(p);
  const std::size_t n = p.n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      GroupElem tj = c.generator(j);
      if (c.apply(i, 0, c.apply(i, 1, tj)) != tj || c.apply(i, 1, c.apply(i, 0, tj)) != tj)
        throw validation_error("inverse word for " + p.labels[i] + " on " + p.labels[j] + " does not invert the conjugation word");
    }
    for (int dir = 0; dir < 2; ++dir)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          GroupElem lhs = c.apply(i, dir, c.evaluate(p.conj[j][k]));
          GroupElem fj = c.apply(i, dir, c.generator(j));
          GroupElem fk = c.apply(i, dir, c.generator(k));
          GroupElem rhs = c.multiply(c.multiply(fj, fk), c.inverse(fj));
          if (lhs != rhs)
            throw validation_error("conjugation by " + p.labels[i] + " does not respect the relation " + p.labels[j] + " " +
                                   p.labels[k] + " " + p.labels[j] + "^-1 = " + word_to_string(p, p.conj[j][k]));
        }
  }
}

/// Finite-dimensional rational representation given by generator matrices.
struct GammaModule {
  std::size_t dim = 0;
  std::vector<Matrix> rho;

  static GammaModule trivial(std::size_t rank, std::size_t dim = 1) {
    return {dim, std::vector<Matrix>(rank, Matrix::identity(dim))};
  }
};

/// rho on arbitrary normal-form elements, with cached generator inverses.
class ModuleEvaluator {
 public:
  ModuleEvaluator(const Collector& c, const GammaModule& m) : collector_(&c), module_(&m) {
    for (std::size_t i = 0; i < m.rho.size(); ++i) {
      auto inv = try_inverse(m.rho[i]);
      if (!inv) throw validation_error("module matrix for generator " + std::to_string(i) + " is not invertible");
      inverses_.push_back(*inv);
    }
  }

  const Matrix& generator(std::size_t i, bool inverse) const { return inverse ? inverses_[i] : module_->rho[i]; }

  Matrix rho(const GroupElem& g) const {
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
    Matrix r = Matrix::identity(module_->dim);
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g[j] != 0) r = r * power(generator(j, g[j] < 0), static_cast<unsigned>(g[j] < 0 ? -g[j] : g[j]));
    cache_.emplace(g, r);
    return r;
  }

  Matrix rho(const Word& w) const { return rho(collector_->evaluate(w)); }
  std::size_t dim() const { return module_->dim; }

 private:
  const Collector* collector_;
  const GammaModule* module_;
  std::vector<Matrix> inverses_;
  mutable std::map<GroupElem, Matrix> cache_;
};

/// Generator matrices are invertible and satisfy every conjugation relation.
inline void validate_module(const PolyZPresentation& p, const GammaModule& m) {
  if (m.rho.size() != p.n) throw validation_error("module needs one matrix per generator");
  for (const auto& r : m.rho)
    if (r.rows() != m.dim || r.cols() != m.dim) throw validation_error("module matrix has the wrong size");
  Collector c(p);
  ModuleEvaluator ev(c, m);
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = i + 1; j < p.n; ++j) {
      const Matrix& ti = m.rho[i];
      const Matrix& tinv = ev.generator(i, true);
      if (ti * m.rho[j] * tinv != ev.rho(p.conj[i][j]))
        throw validation_error("module violates the relation " + p.labels[i] + " " + p.labels[j] + " " + p.labels[i] +
                               "^-1 = " + word_to_string(p, p.conj[i][j]));
      if (tinv * m.rho[j] * ti != ev.rho(p.inv[i][j]))
        throw validation_error("module violates the relation " + p.labels[i] + "^-1 " + p.labels[j] + " " + p.labels[i] +
                               " = " + word_to_string(p, p.inv[i][j]));
    }
}

}  // namespace hullcoh
