#include <iostream>

#include "CLI11.hpp"
#include "hullcoh/cli/run.hpp"

int main(int argc, char** argv) {
  using namespace hullcoh::cli;
  CLI::App app{"Group and Lie-algebra cohomology of polycyclic groups and their hulls"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Invocation inv;
  std::uint64_t seed = 0;
  std::size_t max_degree = 0;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"lie", "Chevalley-Eilenberg cohomology of a Lie algebra or of a hull's u"},
      {"group", "cohomology of a poly-Z or crystallographic group"},
      {"nilshadow", "nilshadow of a solvable Lie algebra"},
      {"verify", "compare the group and Lie pipelines"},
      {"probe", "vanishing probe on truncated polynomial modules"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", inv.input, "case file")->required();
    sub->add_option("--out", inv.out, "report path (default: <stem>.report.json beside the input)");
    sub->add_option("--seed", seed, "seed for randomized choices");
    sub->add_option("--max-degree", max_degree, "truncate tables above this degree");
    sub->add_flag("--json-only", inv.json_only, "print the report instead of the table");
    sub->add_flag("--timing", inv.timing, "add wall-clock timing to the report");
    sub->callback([&inv, name = name] { inv.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << nlohmann::json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return kInputError;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed")) inv.seed = seed;
    if (sub->count("--max-degree")) inv.max_degree = max_degree;
  }
  return execute(inv, std::cout, std::cerr);
}
