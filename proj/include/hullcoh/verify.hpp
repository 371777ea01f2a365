#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "hullcoh/hull.hpp"

namespace hullcoh {

enum class Verdict { Equal, GroupLarger, LieLarger };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "EQUAL";
    case Verdict::GroupLarger: return "GROUP_LARGER";
    case Verdict::LieLarger: return "LIE_LARGER";
  }
  return "?";
}

struct DegreeRow {
  std::size_t degree = 0;
  std::size_t group_dim = 0;
  std::size_t lie_dim = 0;
  Verdict verdict = Verdict::Equal;
};

struct Audit {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct VerificationReport {
  std::string kind;  ///< main_iso, nomizu or mostow
  std::vector<DegreeRow> rows;
  std::vector<Audit> audits;
  std::vector<std::string> notes;

  bool all_equal() const {
    return std::all_of(rows.begin(), rows.end(), [](const DegreeRow& r) { return r.verdict == Verdict::Equal; });
  }
  bool audits_ok() const {
    return std::all_of(audits.begin(), audits.end(), [](const Audit& a) { return a.ok; });
  }
  /// dim H^k(g) <= dim H^k(Gamma) in every degree.
  bool injection_holds() const {
    return std::none_of(rows.begin(), rows.end(), [](const DegreeRow& r) { return r.verdict == Verdict::LieLarger; });
  }
  bool strict_somewhere() const {
    return std::any_of(rows.begin(), rows.end(), [](const DegreeRow& r) { return r.verdict == Verdict::GroupLarger; });
  }
};

namespace detail {

inline std::vector<DegreeRow> compare_dims(const std::vector<std::size_t>& group, const std::vector<std::size_t>& lie) {
  std::vector<DegreeRow> rows;
  const std::size_t top = std::max(group.size(), lie.size());
  for (std::size_t k = 0; k < top; ++k) {
    DegreeRow r{k, k < group.size() ? group[k] : 0, k < lie.size() ? lie[k] : 0, Verdict::Equal};
    if (r.group_dim > r.lie_dim) r.verdict = Verdict::GroupLarger;
    if (r.group_dim < r.lie_dim) r.verdict = Verdict::LieLarger;
    rows.push_back(r);
  }
  return rows;
}

inline std::string dims_text(const std::vector<std::size_t>& d) {
  std::string s;
  for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
  return s;
}

inline void push_group_audits(VerificationReport& r, const GroupCohomology& g) {
  std::string failed;
  for (const auto& w : g.wang)
    if (!w.ok()) failed += " level " + std::to_string(w.level) + " degree " + std::to_string(w.degree);
  r.audits.push_back({"wang_exactness", failed.empty(), failed.empty() ? std::to_string(g.wang.size()) + " checks" : "fails at" + failed});
  r.audits.push_back({"h0_fixed_space", g.h0_matches_fixed_space, ""});
  r.audits.push_back({"d_squared", true, "checked while building every complex"});
}

inline void check_same_module(const HullData& h, const GammaModule& v) {
  GammaModule mine = h.gamma_module();
  if (mine.dim != v.dim || mine.rho.size() != v.rho.size())
    throw validation_error("module does not match the hull's generator records");
  for (std::size_t i = 0; i < v.rho.size(); ++i)
    if (mine.rho[i] != v.rho[i])
      throw validation_error("module matrix of generator " + std::to_string(i) + " differs from the hull's module operator");
}

struct GroupSide {
  std::vector<std::size_t> dims;
  std::optional<GroupCohomology> tower;
};

inline GroupSide group_side(const HullData& h) {
  if (h.presentation) {
    auto g = group_cohomology(*h.presentation, h.gamma_module());
    return {g.dims, std::move(g)};
  }
  return {crystallographic_cohomology(*h.crystallographic).dims(), std::nullopt};
}

}  // namespace detail

/// H*(Gamma, V) against H*(u, V)^{generators}; any difference is a defect.
inline VerificationReport verify_main_iso(const HullData& h, const std::optional<GammaModule>& v = std::nullopt) {
  validate_hull(h);
  if (v) detail::check_same_module(h, *v);
  VerificationReport r;
  r.kind = "main_iso";
  auto group = detail::group_side(h);
  auto lie = lie_side_invariant_cohomology(h);
  r.rows = detail::compare_dims(group.dims, lie.invariant_dims);
  if (group.tower) {
    detail::push_group_audits(r, *group.tower);
  } else {
    r.audits.push_back({"d_squared", true, "checked while building every complex"});
    r.notes.push_back("finite extension handled as a crystallographic group: lattice Koszul model plus point-group invariants");
  }
  r.audits.push_back({"fullness", h.u.dim() == h.rank(),
                      "dim u = " + std::to_string(h.u.dim()) + ", rank = " + std::to_string(h.rank())});
  r.audits.push_back({"inner_autos_trivial", lie.inner_autos_trivial, ""});
  if (!r.all_equal()) r.notes.push_back("pipelines disagree: the hull data is not a genuine full hull of this group");
  return r;
}

/// Nilpotent case: H*(Gamma, V) against the full H*(u, V).
inline VerificationReport verify_nomizu(const HullData& h, const std::optional<GammaModule>& v = std::nullopt) {
  validate_hull(h);
  if (!h.presentation) throw validation_error("nomizu comparison needs a poly-Z presentation");
  if (v) detail::check_same_module(h, *v);
  VerificationReport r;
  r.kind = "nomizu";
  auto group = detail::group_side(h);
  auto lie = lie_side_invariant_cohomology(h);
  r.rows = detail::compare_dims(group.dims, lie.full_dims);
  detail::push_group_audits(r, *group.tower);
  r.audits.push_back({"fullness", h.u.dim() == h.rank(), ""});
  r.audits.push_back({"inner_autos_trivial", lie.inner_autos_trivial, ""});
  r.audits.push_back({"generators_trivial_on_cohomology", lie.generators_trivial,
                      lie.generators_trivial ? "" : "invariants " + detail::dims_text(lie.invariant_dims)});
  return r;
}

/// H*(g, V) against H*(Gamma, V) for a lattice Gamma of the group of g.
inline VerificationReport verify_mostow(const LieAlgebra& g, const LieModule& gv, const PolyZPresentation& p,
                                        const GammaModule& v) {
  validate(g);
  if (g.dim() != p.n)
    throw validation_error("lattice rank " + std::to_string(p.n) + " differs from dim g = " + std::to_string(g.dim()));
  if (gv.dim != v.dim) throw validation_error("Lie and group modules have different dimensions");
  VerificationReport r;
  r.kind = "mostow";
  auto group = group_cohomology(p, v);
  r.rows = detail::compare_dims(group.dims, ce_cohomology_dims(g, gv));
  detail::push_group_audits(r, group);
  r.audits.push_back({"injection_inequality", r.injection_holds(), ""});
  if (r.strict_somewhere()) r.notes.push_back("strict inequality: the representation is not admissible");
  return r;
}

// ---------------------------------------------------------------------------
// Vanishing probe

enum class ProbeStatus { Pass, Inconclusive };

inline const char* to_string(ProbeStatus s) { return s == ProbeStatus::Pass ? "PASS" : "INCONCLUSIVE"; }

struct ClassDeath {
  std::size_t degree = 0;
  std::size_t index = 0;
  std::optional<unsigned> death;  ///< least d' whose M_{d'} kills the class
};

struct ProbeLevel {
  unsigned d = 0;
  std::size_t module_dim = 0;
  std::vector<std::size_t> cohomology_dims;
};

struct ProbeReport {
  unsigned d_start = 0;
  unsigned d_max = 0;
  std::vector<ProbeLevel> levels;
  std::vector<ClassDeath> classes;
  ProbeStatus status = ProbeStatus::Pass;
};

/// Pushes every class of H^{>0}(Gamma, M_{d_start}) into M_{d'} for growing d'.
inline ProbeReport vanishing_probe(const HullData& h, unsigned d_start, unsigned d_max) {
  if (d_max < d_start) throw validation_error("probe needs d_max >= d_start");
  if (!h.presentation) throw validation_error("probe needs a poly-Z presentation");
  const auto& p = *h.presentation;
  ProbeReport r;
  r.d_start = d_start;
  r.d_max = d_max;
  auto ms = polynomial_action_module(h, d_start);
  auto hs = group_cohomology(p, ms.action);
  r.levels.push_back({d_start, ms.dim(), hs.dims});
  for (std::size_t k = 1; k < hs.dims.size(); ++k)
    for (std::size_t i = 0; i < hs.dims[k]; ++i) r.classes.push_back({k, i, std::nullopt});

  auto alive = [&] {
    return std::any_of(r.classes.begin(), r.classes.end(), [](const ClassDeath& c) { return !c.death; });
  };
  for (unsigned d = d_start + 1; d <= d_max && alive(); ++d) {
    auto md = polynomial_action_module(h, d);
    auto hd = group_cohomology(p, md.action);
    r.levels.push_back({d, md.dim(), hd.dims});
    auto f = induced_by_module_map(p, ms.action, md.action, inclusion_map(ms, md), hs, hd);
    for (auto& c : r.classes)
      if (!c.death && is_zero(f[c.degree].column(c.index))) c.death = d;
  }
  r.status = alive() ? ProbeStatus::Inconclusive : ProbeStatus::Pass;
  return r;
}

}  // namespace hullcoh
