#pragma once

#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <iomanip>
#include <sstream>

#include "hullcoh/cli/case_file.hpp"
#include "hullcoh/verify.hpp"

namespace hullcoh::cli {

inline constexpr const char* kVersion = "hullcoh 1.0.0";

enum ExitCode : int { kOk = 0, kInputError = 1, kAuditFailure = 2, kInconclusive = 3 };

inline int exit_code_for(ErrorKind k) { return k == ErrorKind::Audit ? kAuditFailure : kInputError; }

struct Options {
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> max_degree;
  bool timing = false;
};

struct Outcome {
  json report;
  std::string table;
  int exit_code = kOk;
};

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw audit_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

/// Commands accepting each case kind.
inline bool command_accepts(const std::string& command, const std::string& kind) {
  if (command == "lie") return kind == "lie_algebra" || kind == "hull";
  if (command == "nilshadow") return kind == "lie_algebra";
  if (command == "group") return kind == "polyz_group" || kind == "crystallographic";
  if (command == "verify") return kind == "hull" || kind == "verify_iso" || kind == "verify_nomizu" || kind == "verify_mostow";
  if (command == "probe") return kind == "vanishing_probe";
  return false;
}

namespace detail {

inline json rat_json(const Rat& r) { return to_string(r); }

inline json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json brackets_json(const LieAlgebra& g) {
  json out = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      Vec v = g.bracket_basis(i, j);
      if (is_zero(v)) continue;
      json val = json::array();
      for (const auto& x : v) val.push_back(rat_json(x));
      out.push_back({{"pair", {i, j}}, {"value", val}});
    }
  return out;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string render() const {
    std::vector<std::size_t> w(header_.size());
    for (std::size_t c = 0; c < w.size(); ++c) {
      w[c] = header_[c].size();
      for (const auto& r : rows_) w[c] = std::max(w[c], r[c].size());
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "  " : "") << std::setw(static_cast<int>(w[c])) << r[c];
      os << "\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::vector<std::size_t> truncate(std::vector<std::size_t> d, const Options& o) {
  if (o.max_degree && d.size() > *o.max_degree + 1) d.resize(*o.max_degree + 1);
  return d;
}

inline std::string dims_table(const std::vector<std::size_t>& d, const std::string& label) {
  Table t({"k", label});
  for (std::size_t k = 0; k < d.size(); ++k) t.add({std::to_string(k), std::to_string(d[k])});
  return t.render();
}

inline json audits_json(const std::vector<Audit>& audits) {
  json out = json::array();
  for (const auto& a : audits) {
    json e{{"name", a.name}, {"ok", a.ok}};
    if (!a.detail.empty()) e["detail"] = a.detail;
    out.push_back(std::move(e));
  }
  return out;
}

inline void run_lie_algebra(const Case& c, const Options& o, Outcome& out) {
  const LieAlgebra& g = *c.lie;
  LieModule v = c.lie_module ? *c.lie_module : LieModule::trivial(g);
  auto dims = truncate(ce_cohomology_dims(g, v), o);
  json r{{"dim", g.dim()},
         {"labels", g.labels()},
         {"module_dim", v.dim},
         {"cohomology", dims},
         {"solvable", is_solvable(g)},
         {"nilpotent", is_nilpotent(g)}};
  if (auto cls = nilpotency_class(g)) r["nilpotency_class"] = *cls;
  if (is_solvable(g)) r["nilradical_dim"] = nilradical(g, o.seed).dim();
  out.report["result"] = r;
  out.table = dims_table(dims, "dim H^k(g,V)");
}

inline void run_hull_lie_side(const Case& c, const Options& o, Outcome& out) {
  const HullData& h = *c.hull;
  auto lie = lie_side_invariant_cohomology(h);
  json r{{"dim_u", h.u.dim()},
         {"rank", h.rank()},
         {"module_dim", h.module_dim()},
         {"full_cohomology", truncate(lie.full_dims, o)},
         {"invariant_cohomology", truncate(lie.invariant_dims, o)},
         {"u_brackets", brackets_json(h.u)}};
  std::vector<Audit> audits{{"fullness", h.u.dim() == h.rank(), ""},
                            {"inner_autos_trivial", lie.inner_autos_trivial, ""}};
  out.report["result"] = r;
  out.report["audits"] = audits_json(audits);
  Table t({"k", "dim H^k(u,V)", "dim H^k(u,V)^inv"});
  auto full = truncate(lie.full_dims, o), inv = truncate(lie.invariant_dims, o);
  for (std::size_t k = 0; k < full.size(); ++k) t.add({std::to_string(k), std::to_string(full[k]), std::to_string(inv[k])});
  out.table = t.render();
  if (!lie.inner_autos_trivial) out.exit_code = kAuditFailure;
}

inline void run_nilshadow(const Case& c, const Options& o, Outcome& out) {
  const LieAlgebra& g = *c.lie;
  auto ns = nilshadow(g, c.complement, o.seed);
  auto gd = truncate(ce_cohomology_dims(g, LieModule::trivial(g)), o);
  auto ud = truncate(ce_cohomology_dims(ns.u, LieModule::trivial(ns.u)), o);
  json r{{"dim", g.dim()},
         {"nilradical_dim", ns.nilradical.dim()},
         {"complement_dim", ns.complement.dim()},
         {"complement_source", to_string(ns.complement_source)},
         {"u_brackets", brackets_json(ns.u)},
         {"u_nilpotency_class", *nilpotency_class(ns.u)},
         {"cohomology_g", gd},
         {"cohomology_u", ud}};
  json ads = json::array();
  for (const auto& m : ns.ads_generators) ads.push_back(matrix_json(m));
  r["ad_s_generators"] = ads;
  out.report["result"] = r;
  Table t({"k", "dim H^k(g)", "dim H^k(u)"});
  for (std::size_t k = 0; k < gd.size(); ++k) t.add({std::to_string(k), std::to_string(gd[k]), std::to_string(ud[k])});
  out.table = t.render();
}

inline void run_group(const Case& c, const Options& o, Outcome& out) {
  if (c.kind == "crystallographic") {
    auto cc = crystallographic_cohomology(*c.crystallographic);
    auto dims = truncate(cc.dims(), o);
    out.report["result"] = {{"rank", c.crystallographic->rank},
                            {"module_dim", c.crystallographic->module_dim},
                            {"cohomology", dims},
                            {"lattice_cohomology", truncate(cc.lattice.basis.dims(), o)},
                            {"point_group_orders", cc.invariants.group_orders}};
    out.report["notes"] = json::array({"finite extension handled as a crystallographic group"});
    out.table = dims_table(dims, "dim H^k(Gamma,V)");
    return;
  }
  const auto& p = *c.presentation;
  GammaModule m = c.module ? *c.module : GammaModule::trivial(p.n);
  auto g = group_cohomology(p, m);
  auto dims = truncate(g.dims, o);
  json wang = json::array();
  for (const auto& w : g.wang)
    wang.push_back({{"level", w.level}, {"degree", w.degree}, {"dim", w.dim}, {"coker", w.coker}, {"ker", w.ker}, {"ok", w.ok()}});
  long euler = 0;
  for (std::size_t k = 0; k < g.dims.size(); ++k) euler += (k % 2 ? -1 : 1) * static_cast<long>(g.dims[k]);
  out.report["result"] = {{"rank", p.n}, {"generators", p.labels}, {"module_dim", m.dim}, {"cohomology", dims}, {"euler_characteristic", euler}};
  out.report["audits"] = json::array({{{"name", "wang_exactness"}, {"ok", g.audits_pass()}, {"checks", wang}},
                                      {{"name", "h0_fixed_space"}, {"ok", g.h0_matches_fixed_space}}});
  out.table = dims_table(dims, "dim H^k(Gamma,V)");
  if (!g.audits_pass()) out.exit_code = kAuditFailure;
}

inline void run_verify(const Case& c, const Options& o, Outcome& out) {
  if (c.kind == "hull") {
    run_hull_lie_side(c, o, out);
    return;
  }
  VerificationReport v;
  if (c.kind == "verify_iso") v = verify_main_iso(*c.hull, c.module);
  else if (c.kind == "verify_nomizu") v = verify_nomizu(*c.hull, c.module);
  else {
    const LieAlgebra& g = *c.lie;
    LieModule gv = c.lie_module ? *c.lie_module : LieModule::trivial(g);
    GammaModule m = c.module ? *c.module : GammaModule::trivial(c.presentation->n, gv.dim);
    v = verify_mostow(g, gv, *c.presentation, m);
  }
  if (o.max_degree && v.rows.size() > *o.max_degree + 1) v.rows.resize(*o.max_degree + 1);
  const bool mostow = v.kind == "mostow";
  json rows = json::array();
  Table t({"k", mostow ? "dim H^k(Gamma)" : "dim H^k(Gamma)", mostow ? "dim H^k(g)" : "dim H^k(u)^inv", "verdict"});
  for (const auto& r : v.rows) {
    rows.push_back({{"degree", r.degree}, {"group", r.group_dim}, {"lie", r.lie_dim}, {"verdict", to_string(r.verdict)}});
    t.add({std::to_string(r.degree), std::to_string(r.group_dim), std::to_string(r.lie_dim), to_string(r.verdict)});
  }
  json r{{"comparison", v.kind}, {"table", rows}, {"all_equal", v.all_equal()}};
  if (mostow) {
    r["injection_holds"] = v.injection_holds();
    r["strict"] = v.strict_somewhere();
  }
  out.report["result"] = r;
  out.report["audits"] = audits_json(v.audits);
  out.report["notes"] = v.notes;
  out.table = t.render();
  // Strict Mostow rows are a finding, not a failure.
  if (!v.audits_ok() || (!mostow && !v.all_equal())) out.exit_code = kAuditFailure;
}

inline void run_probe(const Case& c, const Options&, Outcome& out) {
  auto p = vanishing_probe(*c.hull, c.d_start, c.d_max);
  json levels = json::array(), classes = json::array();
  for (const auto& l : p.levels) levels.push_back({{"d", l.d}, {"module_dim", l.module_dim}, {"cohomology", l.cohomology_dims}});
  Table t({"k", "class", "dies at d'"});
  for (const auto& cl : p.classes) {
    json e{{"degree", cl.degree}, {"index", cl.index}};
    e["death"] = cl.death ? json(*cl.death) : json(nullptr);
    classes.push_back(std::move(e));
    t.add({std::to_string(cl.degree), std::to_string(cl.index), cl.death ? std::to_string(*cl.death) : "-"});
  }
  out.report["result"] = {{"d_start", p.d_start}, {"d_max", p.d_max}, {"status", to_string(p.status)}, {"levels", levels}, {"classes", classes}};
  out.table = t.render() + "status: " + to_string(p.status) + "\n";
  if (p.status == ProbeStatus::Inconclusive) out.exit_code = kInconclusive;
}

}  // namespace detail

/// Runs one case; the case seed, when present, overrides Options::seed. Errors propagate as exceptions; the caller maps them to exit codes.
inline Outcome run(const Case& c, const Options& o, const std::string& input_text) {
  if (!command_accepts(o.command, c.kind))
    throw validation_error("command \"" + o.command + "\" does not accept case kind \"" + c.kind + "\"");
  Outcome out;
  const std::uint64_t seed = c.seed.value_or(o.seed);
  Options eff = o;
  eff.seed = seed;
  out.report = {{"command", o.command},
                {"kind", c.kind},
                {"name", c.name},
                {"input_sha256", sha256_hex(input_text)},
                {"seed", seed},
                {"version", kVersion}};
  if (o.max_degree) out.report["max_degree"] = *o.max_degree;
  auto start = std::chrono::steady_clock::now();
  if (o.command == "lie") {
    if (c.kind == "hull") detail::run_hull_lie_side(c, eff, out);
    else detail::run_lie_algebra(c, eff, out);
  } else if (o.command == "nilshadow") {
    detail::run_nilshadow(c, eff, out);
  } else if (o.command == "group") {
    detail::run_group(c, eff, out);
  } else if (o.command == "verify") {
    detail::run_verify(c, eff, out);
  } else {
    detail::run_probe(c, eff, out);
  }
  if (o.timing)
    out.report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.report["status"] = out.exit_code == kOk ? "ok" : out.exit_code == kInconclusive ? "inconclusive" : "audit_failure";
  return out;
}

/// Single-line error summary.
inline std::string error_line(const Error& e, const std::string& file) {
  json j{{"error", e.kind() == ErrorKind::Parse ? "parse" : e.kind() == ErrorKind::Validation ? "validation" : "audit"},
         {"message", e.what()},
         {"file", file}};
  if (auto* ce = dynamic_cast<const CaseError*>(&e); ce && ce->location().line > 0) {
    j["line"] = ce->location().line;
    j["column"] = ce->location().column;
  }
  return j.dump();
}

/// Report path: --out when given, else <stem>.report.json beside the input.
inline std::string report_path(const std::string& input, const std::string& out) {
  if (!out.empty()) return out;
  std::filesystem::path p(input);
  return (p.parent_path() / (p.stem().string() + ".report.json")).string();
}

struct Invocation {
  std::string command;
  std::string input;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_degree;
  bool json_only = false;
  bool timing = false;
};

/// Parses, runs and writes one case; returns the exit status.
inline int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    Case c = parse_case(inv.input, &text);
    Options o;
    o.command = inv.command;
    o.max_degree = inv.max_degree;
    o.timing = inv.timing;
    if (inv.seed) c.seed = inv.seed;
    Outcome res = run(c, o, text);
    const std::string body = res.report.dump(2) + "\n";
    const std::string path = report_path(inv.input, inv.out);
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << body)) throw validation_error("cannot write report to " + path);
    if (inv.json_only) {
      out << body;
    } else {
      out << (c.name.empty() ? c.kind : c.name) << "\n" << res.table;
      if (res.report.contains("notes"))
        for (const auto& n : res.report["notes"]) out << "note: " << n.get<std::string>() << "\n";
      if (res.report.contains("audits"))
        for (const auto& a : res.report["audits"])
          if (!a["ok"].get<bool>()) out << "audit failed: " << a["name"].get<std::string>() << "\n";
      out << "report: " << path << "\n";
    }
    return res.exit_code;
  } catch (const Error& e) {
    err << error_line(e, inv.input) << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << error_line(validation_error(e.what()), inv.input) << "\n";
    return kInputError;
  }
}

}  // namespace hullcoh::cli
