#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "alcove/engine.hpp"
#include "alcove/serialize.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace alcove;

  CLI::App app{"exact invariants of crystallographic and affine Coxeter groups"};
  app.require_subcommand(1);
  unsigned long long seed = 0;
  app.add_option("--seed", seed,
                 "accepted for interface compatibility; every computation here "
                 "is deterministic");
  bool pretty = false;
  app.add_flag("--pretty", pretty,
               "indent JSON output (feit-scan: print a table instead)");

  std::string file_a, file_b;
  std::size_t budget = kDefaultEngineBudget;
  bool force_cf = false;
  std::string feit_type;
  std::size_t feit_rank = 0, bc_rank = 0;
  std::size_t search_budget = kDefaultEngineBudget;

  auto* classify =
      app.add_subcommand("classify", "name the components of a Coxeter graph");
  classify->add_option("graph", file_a, "graph document")->required();

  auto* fp = app.add_subcommand("fingerprint",
                                "invariant fingerprint of a group or graph");
  fp->add_option("input", file_a, "graph or group document")->required();
  fp->add_option("--budget", budget, "tick budget for searches");
  fp->add_flag("--cf", force_cf,
               "classify finite subgroups even past the size cut");

  auto* dist = app.add_subcommand(
      "distinguish", "first invariant separating two groups, with transcript");
  dist->add_option("a", file_a, "graph or group document")->required();
  dist->add_option("b", file_b, "graph or group document")->required();
  dist->add_option("--budget", budget, "tick budget for searches");

  auto* feit = app.add_subcommand(
      "feit-scan",
      "semidirect abelianizations over the stable lattices of a simply laced type");
  feit->add_option("--type", feit_type, "A, D or E")->required();
  feit->add_option("--rank", feit_rank, "rank of the finite type")->required();

  auto* bc = app.add_subcommand("bc-report",
                                "replay the rank-n chain separation argument");
  bc->add_option("--rank", bc_rank, "rank, 2 through 6")->required();
  bc->add_option("--search-budget", search_budget,
                 "tick budget for the quotient searches");

  auto* mp = app.add_subcommand("match-products",
                                "match the affine factors of two product graphs");
  mp->add_option("a", file_a, "graph document")->required();
  mp->add_option("b", file_b, "graph document")->required();

  // let --seed / --pretty appear after the subcommand name too
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  (void)seed;

  try {
    if (*classify) {
      auto comps = components(parse_graph(slurp(file_a)));
      std::cout << classification_to_json(comps, pretty) << "\n";
      for (const auto& c : comps)
        if (!classify_component(c).is_affine()) return 2;
      return 0;
    }
    if (*fp) {
      auto in = group_input_from_text(slurp(file_a), file_a);
      FingerprintOptions opts;
      opts.budget = budget;
      opts.force_cf = force_cf;
      std::cout << fingerprint_to_json(fingerprint(in, opts), pretty) << "\n";
      return 0;
    }
    if (*dist) {
      auto a = group_input_from_text(slurp(file_a), file_a);
      auto b = group_input_from_text(slurp(file_b), file_b);
      auto rep = distinguish(a, b, budget);
      std::cout << distinguish_report_to_json(rep, pretty) << "\n";
      return rep.distinguished ? 0 : 3;
    }
    if (*feit) {
      SeriesKind kind;
      if (feit_type == "A") {
        kind = SeriesKind::A;
      } else if (feit_type == "D") {
        kind = SeriesKind::D;
      } else if (feit_type == "E") {
        if (feit_rank == 6)
          kind = SeriesKind::E6;
        else if (feit_rank == 7)
          kind = SeriesKind::E7;
        else if (feit_rank == 8)
          kind = SeriesKind::E8;
        else
          throw std::invalid_argument("type E has ranks 6, 7 and 8");
      } else {
        throw std::invalid_argument("--type must be A, D or E");
      }
      auto scan = feit_scan(kind, feit_rank);
      if (pretty)
        std::cout << feit_scan_to_text(scan);
      else
        std::cout << feit_scan_to_json(scan, false) << "\n";
      return 0;
    }
    if (*bc) {
      auto rep = bc_case_report(bc_rank, search_budget);
      std::cout << bc_report_to_json(rep, pretty) << "\n";
      return rep.failed == 0 ? 0 : 4;
    }
    if (*mp) {
      auto da = decompose_product(parse_graph(slurp(file_a)));
      auto db = decompose_product(parse_graph(slurp(file_b)));
      auto sigma = match_factors(da, db, budget);
      std::cout << matching_to_json(sigma, pretty) << "\n";
      return sigma ? 0 : 3;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
