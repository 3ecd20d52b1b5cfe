#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alcove/engine.hpp"

namespace alcove {

/// Writes a group document: rank, lattice basis, designated point
/// generators with their translation parts, and the provenance graph when
/// one is attached.
std::string group_to_json(const CrystalGroup& g,
                          const std::optional<CoxeterGraph>& provenance = {},
                          bool pretty = false);

/// Rebuilds a group from a group document. The lattice basis must be
/// unimodular (the group is stored in lattice coordinates); translation
/// generators are implicit. A graph recorded in the provenance block is
/// re-attached.
GroupInput group_from_json(const std::string& text);

/// Accepts either document shape: a graph document is classified and
/// realized as the product of its affine components, a group document is
/// rebuilt directly.
GroupInput group_input_from_text(const std::string& text, const std::string& name);

std::string fingerprint_to_json(const Fingerprint& f, bool pretty = false);
std::string distinguish_report_to_json(const DistinguishReport& r, bool pretty = false);
std::string feit_scan_to_json(const FeitScan& s, bool pretty = false);
std::string feit_scan_to_text(const FeitScan& s);
std::string bc_report_to_json(const BcReport& r, bool pretty = false);
std::string classification_to_json(const std::vector<CoxeterGraph>& comps,
                                   bool pretty = false);
std::string matching_to_json(const std::optional<std::vector<std::size_t>>& sigma,
                             bool pretty = false);

}  // namespace alcove
