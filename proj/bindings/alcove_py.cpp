// Python bindings. Documents cross the boundary as JSON text; the alcove
// package turns them into dicts so callers never touch the wire format.
#include <pybind11/pybind11.h>

#include <stdexcept>
#include <string>

#include "alcove/engine.hpp"
#include "alcove/fingerprint.hpp"
#include "alcove/serialize.hpp"

namespace py = pybind11;
using namespace alcove;

namespace {

SeriesKind named_kind(const std::string& type, std::size_t rank) {
  if (type == "A") return SeriesKind::A;
  if (type == "B") return SeriesKind::B;
  if (type == "C") return SeriesKind::C;
  if (type == "D") return SeriesKind::D;
  if (type == "G2") return SeriesKind::G2;
  if (type == "F4") return SeriesKind::F4;
  if (type == "I1") return SeriesKind::I1;
  if (type == "E") {
    if (rank == 6) return SeriesKind::E6;
    if (rank == 7) return SeriesKind::E7;
    if (rank == 8) return SeriesKind::E8;
    throw std::invalid_argument("type E has ranks 6, 7 and 8");
  }
  if (type == "E6") return SeriesKind::E6;
  if (type == "E7") return SeriesKind::E7;
  if (type == "E8") return SeriesKind::E8;
  throw std::invalid_argument("unknown type " + type);
}

}  // namespace

PYBIND11_MODULE(_alcove, m) {
  m.doc() = "exact invariants of crystallographic and affine Coxeter groups";

  m.def(
      "classify_json",
      [](const std::string& graph) {
        return classification_to_json(components(parse_graph(graph)));
      },
      py::arg("graph"),
      "Component types of a Coxeter graph document, as JSON text.");

  m.def(
      "fingerprint_json",
      [](const std::string& document, std::size_t budget, bool force_cf) {
        auto in = group_input_from_text(document, "input");
        FingerprintOptions opts;
        opts.budget = budget;
        opts.force_cf = force_cf;
        return fingerprint_to_json(fingerprint(in, opts));
      },
      py::arg("document"), py::arg("budget") = kDefaultEngineBudget,
      py::arg("force_cf") = false,
      "Invariant fingerprint of a graph or group document, as JSON text.");

  m.def(
      "distinguish_json",
      [](const std::string& a, const std::string& b, std::size_t budget) {
        auto left = group_input_from_text(a, "a");
        auto right = group_input_from_text(b, "b");
        return distinguish_report_to_json(distinguish(left, right, budget));
      },
      py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultEngineBudget,
      "First invariant separating two documents, with transcript.");

  m.def(
      "feit_scan_json",
      [](const std::string& type, std::size_t rank) {
        return feit_scan_to_json(feit_scan(named_kind(type, rank), rank));
      },
      py::arg("type"), py::arg("rank"),
      "Semidirect abelianizations over the stable lattices of a simply "
      "laced type, as JSON text.");

  m.def(
      "bc_report_json",
      [](std::size_t rank, std::size_t search_budget) {
        return bc_report_to_json(bc_case_report(rank, search_budget));
      },
      py::arg("rank"), py::arg("search_budget") = kDefaultEngineBudget,
      "Checked chain-of-lattices claims at one rank, as JSON text.");

  m.def(
      "match_products_json",
      [](const std::string& a, const std::string& b, std::size_t budget) {
        auto da = decompose_product(parse_graph(a));
        auto db = decompose_product(parse_graph(b));
        return matching_to_json(match_factors(da, db, budget));
      },
      py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultEngineBudget,
      "Fingerprint matching between the factors of two product graphs.");

  m.def(
      "affine_graph_json",
      [](const std::string& type, std::size_t rank) {
        return graph_to_json(affine_graph(named_kind(type, rank), rank));
      },
      py::arg("type"), py::arg("rank"),
      "Canonical affine Coxeter graph of the given finite type.");

  m.def(
      "affine_group_json",
      [](const std::string& type, std::size_t rank) {
        auto model = build_affine_coxeter(named_kind(type, rank), rank);
        return group_to_json(model.group, model.graph);
      },
      py::arg("type"), py::arg("rank"),
      "Group document for the affine Coxeter group of the given finite "
      "type.");
}
