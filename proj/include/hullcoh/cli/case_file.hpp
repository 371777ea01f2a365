#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "hullcoh/hull.hpp"
#include "json.hpp"

namespace hullcoh::cli {

using nlohmann::json;

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Error tied to a place in the case file.
class CaseError : public Error {
 public:
  CaseError(ErrorKind kind, const std::string& what, SourceLocation loc) : Error(kind, what), loc_(loc) {}
  const SourceLocation& location() const noexcept { return loc_; }

 private:
  SourceLocation loc_;
};

inline const std::vector<std::string>& case_kinds() {
  static const std::vector<std::string> kinds{"lie_algebra",   "polyz_group",   "crystallographic", "hull",
                                              "verify_iso",    "verify_nomizu", "verify_mostow",    "vanishing_probe"};
  return kinds;
}

struct Case {
  std::string kind;
  std::string name;
  std::optional<std::uint64_t> seed;
  std::optional<LieAlgebra> lie;
  std::optional<LieModule> lie_module;
  std::optional<Subspace> complement;
  std::optional<PolyZPresentation> presentation;
  std::optional<GammaModule> module;
  std::optional<CrystallographicGroup> crystallographic;
  std::optional<HullData> hull;
  unsigned d_start = 0;
  unsigned d_max = 4;
};

namespace detail {

/// Byte offset of every value in a syntactically valid JSON text, keyed by JSON pointer.
class PositionIndex {
 public:
  explicit PositionIndex(const std::string& text) : text_(text) {
    skip_ws();
    value("");
  }

  SourceLocation locate(const std::string& pointer) const {
    std::string p = pointer;
    auto it = offsets_.find(p);
    while (it == offsets_.end() && !p.empty()) {
      p.erase(p.rfind('/'));
      it = offsets_.find(p);
    }
    return location_of(text_, it == offsets_.end() ? 0 : it->second);
  }

  static SourceLocation location_of(const std::string& text, std::size_t off) {
    SourceLocation loc{1, 1};
    for (std::size_t i = 0; i < off && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
    return loc;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void value(const std::string& pointer) {
    offsets_[pointer] = pos_;
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        std::string key = string_token();
        skip_ws();
        ++pos_;  // colon
        skip_ws();
        value(pointer + "/" + escape(key));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (std::size_t i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i) {
        value(pointer + "/" + std::to_string(i));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos) ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> offsets_;
};

/// Typed access to the parsed document with located errors.
class Reader {
 public:
  Reader(const json& root, const PositionIndex& index) : root_(root), index_(index) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& msg, ErrorKind kind = ErrorKind::Parse) const {
    throw CaseError(kind, msg, index_.locate(pointer));
  }

  const json& at(const std::string& pointer) const {
    if (!has(pointer)) fail(pointer, "missing \"" + pointer.substr(pointer.rfind('/') + 1) + "\"");
    return root_.at(json::json_pointer(pointer));
  }
  bool has(const std::string& pointer) const { return root_.contains(json::json_pointer(pointer)); }

  const json& object(const std::string& p) const {
    if (!at(p).is_object()) fail(p, "expected an object");
    return at(p);
  }
  const json& array(const std::string& p) const {
    if (!at(p).is_array()) fail(p, "expected an array");
    return at(p);
  }

  std::string string(const std::string& p) const {
    if (!at(p).is_string()) fail(p, "expected a string");
    return at(p).get<std::string>();
  }

  std::int64_t integer(const std::string& p) const {
    const json& v = at(p);
    if (!v.is_number_integer()) fail(p, "expected an integer");
    return v.get<std::int64_t>();
  }

  std::size_t count(const std::string& p) const {
    auto v = integer(p);
    if (v < 0) fail(p, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  Rat rational(const std::string& p) const {
    const json& v = at(p);
    if (v.is_number_integer()) return Rat(v.dump());
    if (!v.is_string()) fail(p, "expected a rational as \"p\" or \"p/q\"");
    auto r = try_parse_rational(v.get<std::string>());
    if (!r) fail(p, "malformed rational \"" + v.get<std::string>() + "\"");
    return *r;
  }

  Vec vector(const std::string& p) const {
    Vec out;
    for (std::size_t i = 0; i < array(p).size(); ++i) out.push_back(rational(p + "/" + std::to_string(i)));
    return out;
  }

  /// Rows of rationals; an empty array is the 0 x 0 matrix.
  Matrix matrix(const std::string& p, std::optional<std::size_t> size = std::nullopt) const {
    const json& rows = array(p);
    const std::size_t r = rows.size();
    std::size_t c = 0;
    std::vector<Vec> data;
    for (std::size_t i = 0; i < r; ++i) {
      const std::string rp = p + "/" + std::to_string(i);
      data.push_back(vector(rp));
      if (i == 0) c = data[0].size();
      else if (data[i].size() != c) fail(rp, "matrix rows have different lengths");
    }
    if (size && (r != *size || c != *size))
      fail(p, "expected a " + std::to_string(*size) + "x" + std::to_string(*size) + " matrix");
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = data[i][j];
    return m;
  }

  std::vector<Matrix> matrices(const std::string& p, std::size_t size) const {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < array(p).size(); ++i) out.push_back(matrix(p + "/" + std::to_string(i), size));
    return out;
  }

  void only_keys(const std::string& p, std::initializer_list<const char*> keys) const {
    for (const auto& [k, v] : object(p).items()) {
      bool known = false;
      for (const char* key : keys) known = known || k == key;
      if (!known) fail(p + "/" + k, "unknown key \"" + k + "\"");
    }
  }

 private:
  const json& root_;
  const PositionIndex& index_;
};

inline LieAlgebra read_lie_algebra(const Reader& r, const std::string& p) {
  r.only_keys(p, {"dim", "labels", "brackets"});
  const std::size_t n = r.count(p + "/dim");
  LieAlgebra g(n);
  if (r.has(p + "/labels")) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < r.array(p + "/labels").size(); ++i) labels.push_back(r.string(p + "/labels/" + std::to_string(i)));
    if (labels.size() != n) r.fail(p + "/labels", "expected " + std::to_string(n) + " labels");
    g.set_labels(labels);
  }
  if (r.has(p + "/brackets")) {
    for (std::size_t b = 0; b < r.array(p + "/brackets").size(); ++b) {
      const std::string bp = p + "/brackets/" + std::to_string(b);
      r.only_keys(bp, {"pair", "value"});
      const std::size_t i = r.count(bp + "/pair/0"), j = r.count(bp + "/pair/1");
      if (r.array(bp + "/pair").size() != 2 || i >= n || j >= n || i == j) r.fail(bp + "/pair", "bracket pair must be two distinct basis indices");
      Vec v = r.vector(bp + "/value");
      if (v.size() != n) r.fail(bp + "/value", "bracket value has the wrong length");
      g.set_bracket(i, j, v);
    }
  }
  if (auto v = find_violation(g)) r.fail(p, "not a Lie algebra: " + v->message(), ErrorKind::Validation);
  return g;
}

inline LieModule read_lie_module(const Reader& r, const std::string& p, const LieAlgebra& g) {
  r.only_keys(p, {"dim", "matrices"});
  LieModule m;
  m.dim = r.count(p + "/dim");
  m.action = r.matrices(p + "/matrices", m.dim);
  if (m.action.size() != g.dim()) r.fail(p + "/matrices", "expected one matrix per basis element of the Lie algebra");
  try {
    validate_module(g, m);
  } catch (const Error& e) {
    r.fail(p, e.what(), ErrorKind::Validation);
  }
  return m;
}

inline Word read_word(const Reader& r, const std::string& p) {
  Word w;
  for (std::size_t i = 0; i < r.array(p).size(); ++i) {
    const std::string lp = p + "/" + std::to_string(i);
    if (r.array(lp).size() != 2) r.fail(lp, "a letter is [generator index, exponent]");
    w.push_back({r.count(lp + "/0"), r.integer(lp + "/1")});
  }
  return w;
}

inline PolyZPresentation read_presentation(const Reader& r, const std::string& p) {
  r.only_keys(p, {"free_abelian", "semidirect", "generators", "relations"});
  PolyZPresentation out(0);
  try {
    if (r.has(p + "/free_abelian")) return PolyZPresentation::free_abelian(r.count(p + "/free_abelian"));
    if (r.has(p + "/semidirect")) {
      Matrix a = r.matrix(p + "/semidirect");
      if (!a.is_square()) r.fail(p + "/semidirect", "semidirect matrix must be square");
      return PolyZPresentation::semidirect(a);
    }
  } catch (const CaseError&) {
    throw;
  } catch (const Error& e) {
    r.fail(p, e.what(), ErrorKind::Validation);
  }
  const std::size_t n = r.array(p + "/generators").size();
  out = PolyZPresentation(n);
  for (std::size_t i = 0; i < n; ++i) out.labels[i] = r.string(p + "/generators/" + std::to_string(i));
  if (r.has(p + "/relations")) {
    for (std::size_t k = 0; k < r.array(p + "/relations").size(); ++k) {
      const std::string rp = p + "/relations/" + std::to_string(k);
      r.only_keys(rp, {"pair", "conj", "inv"});
      const std::size_t i = r.count(rp + "/pair/0"), j = r.count(rp + "/pair/1");
      if (r.array(rp + "/pair").size() != 2 || i >= j || j >= n) r.fail(rp + "/pair", "relation pair must be [i, j] with i < j < n");
      out.conj[i][j] = read_word(r, rp + "/conj");
      out.inv[i][j] = read_word(r, rp + "/inv");
    }
  }
  try {
    validate_presentation(out);
  } catch (const Error& e) {
    r.fail(p, e.what(), ErrorKind::Validation);
  }
  return out;
}

inline GammaModule read_module(const Reader& r, const std::string& p, std::size_t generators) {
  r.only_keys(p, {"dim", "matrices"});
  GammaModule m;
  m.dim = r.count(p + "/dim");
  m.rho = r.matrices(p + "/matrices", m.dim);
  if (m.rho.size() != generators)
    r.fail(p + "/matrices", "expected " + std::to_string(generators) + " module matrices, one per generator");
  return m;
}

inline CrystallographicGroup read_crystallographic(const Reader& r, const std::string& p) {
  r.only_keys(p, {"rank", "module_dim", "lattice_module", "point_group"});
  CrystallographicGroup g;
  g.rank = r.count(p + "/rank");
  g.module_dim = r.has(p + "/module_dim") ? r.count(p + "/module_dim") : 1;
  if (r.has(p + "/lattice_module")) {
    g.lattice_rho = r.matrices(p + "/lattice_module", g.module_dim);
    if (g.lattice_rho.size() != g.rank) r.fail(p + "/lattice_module", "expected one matrix per lattice generator");
  } else {
    g.lattice_rho.assign(g.rank, Matrix::identity(g.module_dim));
  }
  for (std::size_t i = 0; r.has(p + "/point_group") && i < r.array(p + "/point_group").size(); ++i) {
    const std::string gp = p + "/point_group/" + std::to_string(i);
    r.only_keys(gp, {"alpha", "module_op"});
    g.point_group.push_back({r.matrix(gp + "/alpha", g.rank),
                             r.has(gp + "/module_op") ? r.matrix(gp + "/module_op", g.module_dim)
                                                      : Matrix::identity(g.module_dim)});
  }
  try {
    validate_crystallographic(g);
  } catch (const Error& e) {
    r.fail(p, e.what(), ErrorKind::Validation);
  }
  return g;
}

inline HullData read_hull(const Reader& r, const std::string& p, const Case& c) {
  const std::string ctor = r.has(p + "/constructor") ? r.string(p + "/constructor") : "explicit";
  try {
    if (ctor == "abelian") {
      r.only_keys(p, {"constructor", "n"});
      const std::size_t n = r.count(p + "/n");
      if (c.module && c.module->rho.size() != n) r.fail("/module", "module needs one matrix per generator of Z^n");
      return hull_abelian(n, c.module);
    }
    if (ctor == "semidirect") {
      r.only_keys(p, {"constructor", "A"});
      Matrix a = r.matrix(p + "/A");
      if (!a.is_square()) r.fail(p + "/A", "A must be square");
      if (c.module && c.module->rho.size() != a.rows() + 1) r.fail("/module", "module needs one matrix per generator t, e1..en");
      return hull_semidirect_ZnZ(a, c.module);
    }
    if (ctor == "unitriangular") {
      r.only_keys(p, {"constructor", "matrices"});
      if (!c.presentation) r.fail(p, "unitriangular hull needs a presentation");
      const json& ms = r.array(p + "/matrices");
      if (ms.empty()) r.fail(p + "/matrices", "at least one generator matrix is required");
      const std::size_t size = r.array(p + "/matrices/0").size();
      return hull_nilpotent_unitriangular(*c.presentation, r.matrices(p + "/matrices", size), c.module);
    }
    if (ctor == "crystallographic") {
      r.only_keys(p, {"constructor"});
      if (!c.crystallographic) r.fail(p, "crystallographic hull needs a crystallographic section");
      return hull_crystallographic(*c.crystallographic);
    }
    if (ctor != "explicit") r.fail(p + "/constructor", "unknown hull constructor \"" + ctor + "\"");

    r.only_keys(p, {"constructor", "u", "u_module", "generators"});
    HullData h;
    h.u = read_lie_algebra(r, p + "/u");
    h.module = r.has(p + "/u_module") ? read_lie_module(r, p + "/u_module", h.u) : LieModule::trivial(h.u);
    const std::size_t n = h.u.dim();
    for (std::size_t i = 0; i < r.array(p + "/generators").size(); ++i) {
      const std::string gp = p + "/generators/" + std::to_string(i);
      r.only_keys(gp, {"automorphism", "module_op", "translation", "torus"});
      HullGenerator g;
      g.automorphism = r.matrix(gp + "/automorphism", n);
      g.module_op = r.has(gp + "/module_op") ? r.matrix(gp + "/module_op", h.module.dim) : Matrix::identity(h.module.dim);
      if (r.has(gp + "/translation")) {
        g.translation = r.vector(gp + "/translation");
        if (g.translation.size() != n) r.fail(gp + "/translation", "translation has the wrong length");
      }
      if (r.has(gp + "/torus")) g.torus = r.matrix(gp + "/torus", n);
      else if (g.translation.empty()) g.torus = g.automorphism;
      else if (is_nilpotent(h.u)) g.torus = unipotent_exp(h.u.ad(g.translation) * Rat(-1)) * g.automorphism;
      else g.torus = Matrix::identity(n);
      h.generators.push_back(std::move(g));
    }
    h.presentation = c.presentation;
    h.crystallographic = c.crystallographic;
    if (!h.presentation && !h.crystallographic) r.fail(p, "explicit hull needs a presentation or a crystallographic section");
    if (auto v = find_hull_violation(h)) r.fail(p, "hull: " + *v, ErrorKind::Validation);
    return h;
  } catch (const CaseError&) {
    throw;
  } catch (const Error& e) {
    r.fail(p, e.what(), e.kind() == ErrorKind::Audit ? ErrorKind::Audit : ErrorKind::Validation);
  }
}

}  // namespace detail

/// Parses and validates a case document.
inline Case parse_case_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto loc = detail::PositionIndex::location_of(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (auto cut = msg.find("parse error"); cut != std::string::npos) msg = msg.substr(cut);
    throw CaseError(ErrorKind::Parse, "invalid JSON: " + msg, loc);
  }
  detail::PositionIndex index(text);
  detail::Reader r(root, index);
  if (!root.is_object()) r.fail("", "a case file is a JSON object");
  r.only_keys("", {"kind", "name", "seed", "lie_algebra", "lie_module", "complement", "presentation", "module",
                   "crystallographic", "hull", "probe"});

  Case c;
  if (!r.has("/kind")) r.fail("", "missing \"kind\"");
  c.kind = r.string("/kind");
  bool known = false;
  for (const auto& k : case_kinds()) known = known || k == c.kind;
  if (!known) r.fail("/kind", "unknown kind \"" + c.kind + "\"");
  if (r.has("/name")) c.name = r.string("/name");
  if (r.has("/seed")) {
    if (!root["seed"].is_number_unsigned()) r.fail("/seed", "seed must be a non-negative integer");
    c.seed = root["seed"].get<std::uint64_t>();
  }

  if (r.has("/lie_algebra")) c.lie = detail::read_lie_algebra(r, "/lie_algebra");
  if (r.has("/lie_module")) {
    if (!c.lie) r.fail("/lie_module", "lie_module needs a lie_algebra");
    c.lie_module = detail::read_lie_module(r, "/lie_module", *c.lie);
  }
  if (r.has("/complement")) {
    if (!c.lie) r.fail("/complement", "complement needs a lie_algebra");
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < r.array("/complement").size(); ++i) {
      vs.push_back(r.vector("/complement/" + std::to_string(i)));
      if (vs.back().size() != c.lie->dim()) r.fail("/complement/" + std::to_string(i), "complement vector has the wrong length");
    }
    c.complement = Subspace::span(c.lie->dim(), vs);
  }
  if (r.has("/presentation")) c.presentation = detail::read_presentation(r, "/presentation");
  if (r.has("/module")) {
    std::size_t gens = 0;
    if (c.presentation) gens = c.presentation->n;
    else if (r.has("/hull/n")) gens = r.count("/hull/n");
    else if (r.has("/hull/A")) gens = r.array("/hull/A").size() + 1;
    else r.fail("/module", "module needs a presentation or a hull constructor to count generators");
    c.module = detail::read_module(r, "/module", gens);
    if (c.presentation) {
      try {
        validate_module(*c.presentation, *c.module);
      } catch (const Error& e) {
        r.fail("/module", e.what(), ErrorKind::Validation);
      }
    }
  }
  if (r.has("/crystallographic")) c.crystallographic = detail::read_crystallographic(r, "/crystallographic");
  if (r.has("/hull")) c.hull = detail::read_hull(r, "/hull", c);
  if (r.has("/probe")) {
    r.only_keys("/probe", {"d_start", "d_max"});
    c.d_start = static_cast<unsigned>(r.count("/probe/d_start"));
    c.d_max = static_cast<unsigned>(r.count("/probe/d_max"));
    if (c.d_max < c.d_start) r.fail("/probe/d_max", "d_max must be at least d_start");
  }

  auto need = [&](bool ok, const char* what) {
    if (!ok) r.fail("/kind", "kind \"" + c.kind + "\" needs " + what);
  };
  if (c.kind == "lie_algebra") need(c.lie.has_value(), "a lie_algebra section");
  if (c.kind == "polyz_group") need(c.presentation.has_value(), "a presentation");
  if (c.kind == "crystallographic") need(c.crystallographic.has_value(), "a crystallographic section");
  if (c.kind == "hull" || c.kind == "verify_iso" || c.kind == "verify_nomizu" || c.kind == "vanishing_probe")
    need(c.hull.has_value(), "a hull section");
  if (c.kind == "verify_mostow") need(c.lie && c.presentation, "a lie_algebra and a presentation");
  if (c.kind == "vanishing_probe") need(r.has("/probe"), "a probe section");
  return c;
}

inline Case parse_case(const std::string& path, std::string* text_out = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CaseError(ErrorKind::Parse, "cannot read " + path, {});
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  Case c = parse_case_text(text);
  if (text_out) *text_out = std::move(text);
  return c;
}

}  // namespace hullcoh::cli
