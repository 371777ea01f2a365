// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hullcoh/cli/run.hpp"
#include "support/random_instances.hpp"

using namespace hullcoh;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Dims = std::vector<std::size_t>;

struct Check {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::string text(const Dims& d) {
  std::string s;
  for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
  return s;
}

Dims column(const VerificationReport& r, bool group) {
  Dims d;
  for (const auto& row : r.rows) d.push_back(group ? row.group_dim : row.lie_dim);
  return d;
}

std::size_t choose(std::size_t n, std::size_t k) {
  std::size_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

LieAlgebra heisenberg_algebra() {
  LieAlgebra g(3);
  g.set_bracket(0, 1, {0, 0, 1});
  return g;
}

LieAlgebra sol_algebra() {
  LieAlgebra g(3);
  g.set_bracket(2, 0, {1, 0, 0});
  g.set_bracket(2, 1, {0, -1, 0});
  return g;
}

LieAlgebra e2_algebra() {
  LieAlgebra g(3);
  g.set_bracket(0, 1, {0, 0, 1});
  g.set_bracket(0, 2, {0, -1, 0});
  return g;
}

const Matrix kSolA{{2, 1}, {1, 1}};

std::vector<std::string> commands_for(const std::string& kind) {
  if (kind == "lie_algebra") return {"lie", "nilshadow"};
  if (kind == "polyz_group" || kind == "crystallographic") return {"group"};
  if (kind == "vanishing_probe") return {"probe"};
  return {"verify"};
}

struct CaseRun {
  std::string name, command;
  int code;
  std::string report;
};

std::vector<CaseRun> run_bundled(const fs::path& scratch) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(HULLCOH_CASES_DIR))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CaseRun> out;
  for (const auto& f : files) {
    auto kind = cli::parse_case(f.string()).kind;
    for (const auto& command : commands_for(kind)) {
      cli::Invocation inv;
      inv.command = command;
      inv.input = f.string();
      inv.out = (scratch / (f.stem().string() + "." + command + ".json")).string();
      std::ostringstream o, e;
      int code = cli::execute(inv, o, e);
      std::ifstream in(inv.out, std::ios::binary);
      std::ostringstream body;
      body << in.rdbuf();
      out.push_back({f.stem().string(), command, code, body.str()});
    }
  }
  return out;
}

Check criterion1() {
  Check c;
  for (std::size_t n = 1; n <= 5; ++n) {
    Dims expected;
    for (std::size_t k = 0; k <= n; ++k) expected.push_back(choose(n, k));
    auto tower = group_cohomology(PolyZPresentation::free_abelian(n), GammaModule::trivial(n)).dims;
    auto koszul = koszul_cohomology_Zn(GammaModule::trivial(n).rho, 1).basis.dims();
    auto v = verify_main_iso(hull_abelian(n));
    c.expect(tower == expected, "Z^" + std::to_string(n) + " tower " + text(tower));
    c.expect(koszul == expected, "Z^" + std::to_string(n) + " Koszul " + text(koszul));
    c.expect(v.all_equal() && v.audits_ok() && column(v, false) == expected, "Z^" + std::to_string(n) + " abelian hull");
  }
  return c;
}

Check criterion2() {
  Check c;
  const Dims expected{1, 2, 2, 1};
  auto h = heisenberg_algebra();
  auto group = group_cohomology(PolyZPresentation::semidirect(Matrix{{1, 1}, {0, 1}}), GammaModule::trivial(3)).dims;
  c.expect(group == expected, "group pipeline " + text(group));
  auto ce = ce_cohomology_dims(h, LieModule::trivial(h));
  c.expect(ce == expected, "CE of the Heisenberg algebra " + text(ce));
  auto v = verify_nomizu(hull_semidirect_ZnZ(Matrix{{1, 1}, {0, 1}}));
  c.expect(v.all_equal() && v.audits_ok() && column(v, false) == expected, "verify_nomizu");
  return c;
}

Check criterion3() {
  Check c;
  const Dims expected{1, 1, 1, 1};
  auto group = group_cohomology(PolyZPresentation::semidirect(kSolA), GammaModule::trivial(3)).dims;
  c.expect(group == expected, "group pipeline " + text(group));
  auto hull = hull_semidirect_ZnZ(kSolA);
  c.expect(hull.u.is_abelian() && hull.u.dim() == 3, "u is not Q^3");
  auto lie = lie_side_invariant_cohomology(hull).invariant_dims;
  c.expect(lie == expected, "Lie pipeline " + text(lie));
  auto v = verify_main_iso(hull);
  c.expect(v.all_equal() && v.audits_ok(), "verify_main_iso");
  auto g = sol_algebra();
  auto m = verify_mostow(g, LieModule::trivial(g), PolyZPresentation::semidirect(kSolA), GammaModule::trivial(3));
  c.expect(m.all_equal() && m.audits_ok(), "verify_mostow against sol");
  return c;
}

Check criterion4() {
  Check c;
  const Dims expected{1, 1, 0};
  auto group = group_cohomology(PolyZPresentation::semidirect(Matrix{{-1}}), GammaModule::trivial(2)).dims;
  c.expect(group == expected, "group pipeline " + text(group));
  auto hull = hull_semidirect_ZnZ(Matrix{{-1}});
  auto lie = lie_side_invariant_cohomology(hull).invariant_dims;
  c.expect(lie == expected, "hull invariants " + text(lie));
  c.expect(verify_main_iso(hull).all_equal(), "verify_main_iso");
  CrystallographicGroup klein{2, 1, {Matrix::identity(1), Matrix::identity(1)}, {{Matrix::diagonal({-1, 1}), Matrix::identity(1)}}};
  auto cv = verify_main_iso(hull_crystallographic(klein));
  c.expect(cv.all_equal() && column(cv, true) == expected, "crystallographic presentation");
  return c;
}

Check criterion5(const std::vector<CaseRun>& runs) {
  Check c;
  auto g = e2_algebra();
  auto r = verify_mostow(g, LieModule::trivial(g), PolyZPresentation::free_abelian(3), GammaModule::trivial(3));
  c.expect(r.rows.size() == 4 && r.rows[1].lie_dim == 1 && r.rows[1].group_dim == 3, "H^1 dimensions");
  c.expect(r.injection_holds(), "injection inequality");
  c.expect(r.strict_somewhere() && !r.notes.empty(), "strict inequality not flagged");
  bool seen = false;
  for (const auto& run : runs)
    if (run.name == "e2_mostow") {
      seen = true;
      auto j = json::parse(run.report);
      c.expect(run.code == 0 && j["result"]["strict"] == true && j["result"]["injection_holds"] == true, "bundled report");
    }
  c.expect(seen, "bundled e2 case missing");
  return c;
}

Check criterion6() {
  Check c;
  GammaModule v{2, {kSolA, Matrix::identity(2), Matrix::identity(2)}};
  auto tower = group_cohomology(PolyZPresentation::semidirect(kSolA), v);
  c.expect(tower.audits_pass(), "Wang audit");
  auto r = verify_main_iso(hull_semidirect_ZnZ(kSolA, v), v);
  c.expect(column(r, true) == tower.dims, "group column differs from the tower");
  c.expect(r.all_equal() && r.audits_ok(), "group " + text(column(r, true)) + " vs hull " + text(column(r, false)));
  return c;
}

Check criterion7() {
  Check c;
  for (unsigned d = 0; d <= 2; ++d) {
    auto z = vanishing_probe(hull_abelian(1), d, d + 4);
    c.expect(z.status == ProbeStatus::Pass, "Z probe d_start " + std::to_string(d));
    for (const auto& cl : z.classes) c.expect(cl.death && *cl.death <= d + 1, "Z class survives past d_start + 1");
    c.expect(vanishing_probe(hull_semidirect_ZnZ(Matrix{{-1}}), d, d + 4).status == ProbeStatus::Pass,
             "Klein probe d_start " + std::to_string(d));
    c.expect(vanishing_probe(hull_semidirect_ZnZ(Matrix{{1, 1}, {0, 1}}), d, d + 4).status == ProbeStatus::Pass,
             "Heisenberg probe d_start " + std::to_string(d));
  }
  return c;
}

Check criterion8(const std::vector<CaseRun>& runs) {
  Check c;
  auto t = randomized::all_families();
  c.expect(t.instances == 500, std::to_string(t.instances) + " randomized instances");
  for (const auto& f : t.failures) c.expect(false, f);
  for (const auto& run : runs) {
    auto j = json::parse(run.report);
    c.expect(run.code == 0, run.name + " (" + run.command + ") exit " + std::to_string(run.code));
    if (j.contains("audits"))
      for (const auto& a : j["audits"]) c.expect(a["ok"].get<bool>(), run.name + ": audit " + a["name"].get<std::string>());
  }
  for (const auto& g : {heisenberg_algebra(), sol_algebra(), e2_algebra()}) {
    c.expect(randomized::jacobi_oracle(g), "corpus Jacobi");
    auto ce = build_ce_complex(g, LieModule::trivial(g));
    auto dims = cohomology(ce).dims();
    c.expect(randomized::d_squared_oracle(ce.complex) && randomized::euler(dims) == 0, "corpus d^2 or Euler");
    if (is_nilpotent(g)) c.expect(randomized::palindromic(dims), "corpus Poincare duality");
  }
  return c;
}

Check criterion9(const std::vector<CaseRun>& first, const std::vector<CaseRun>& second) {
  Check c;
  c.expect(first.size() == second.size() && !first.empty(), "run counts differ");
  for (std::size_t i = 0; i < std::min(first.size(), second.size()); ++i)
    c.expect(!first[i].report.empty() && first[i].report == second[i].report, first[i].name + " (" + first[i].command + ")");
  return c;
}

}  // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / "hullcoh_acceptance";
  fs::remove_all(scratch);
  fs::create_directories(scratch / "a");
  fs::create_directories(scratch / "b");
  auto first = run_bundled(scratch / "a");
  auto second = run_bundled(scratch / "b");

  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"binomial dimensions of Z^n, n <= 5", criterion1},
      {"Heisenberg nilmanifold", criterion2},
      {"Sol lattice A = [[2,1],[1,1]]", criterion3},
      {"Klein bottle", criterion4},
      {"Mostow failure for E(2)", [&] { return criterion5(first); }},
      {"Sol lattice on Q^2 through A", criterion6},
      {"vanishing probes", criterion7},
      {"algebra audits, corpus and 500 random instances", [&] { return criterion8(first); }},
      {"byte-identical reports", [&] { return criterion9(first, second); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.problems.empty() ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << "\n";
    for (const auto& p : c.problems) std::cout << "    " << p << "\n";
    failed += !c.problems.empty();
  }
  fs::remove_all(scratch);
  return failed == 0 ? 0 : 1;
}
