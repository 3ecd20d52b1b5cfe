#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "alcove/coxeter_graph.hpp"
#include "alcove/root_datum.hpp"
#include "alcove/serialize.hpp"

namespace alcove {

using nlohmann::json;
using nlohmann::ordered_json;

// Matrices serialize as arrays of arrays of decimal strings so that entries
// of any magnitude survive a round trip.
ordered_json matrix_to_json(const IntegerMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(m.at(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

IntegerMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array()) throw std::invalid_argument("matrix: expected an array");
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c)
      throw std::invalid_argument("matrix: ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      const json& cell = rows[i][j];
      if (cell.is_string())
        m.at(i, j) = Int(cell.get<std::string>());
      else if (cell.is_number_integer())
        m.at(i, j) = Int(cell.get<long>());
      else
        throw std::invalid_argument("matrix: entries are decimal strings");
    }
  }
  return m;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

CoxLabel parse_label(const json& m, const std::string& where) {
  if (m.is_string()) {
    if (m.get<std::string>() == "inf") return CoxLabel::unbounded();
    fail(where, "label must be an integer >= 3 or \"inf\"");
  }
  if (!m.is_number_integer())
    fail(where, "label must be an integer >= 3 or \"inf\"");
  long long v = m.get<long long>();
  if (v < 3)
    fail(where, "label " + std::to_string(v) +
                    " is out of range (2 means no edge; labels start at 3)");
  return CoxLabel::order(static_cast<unsigned>(v));
}

}  // namespace

CoxeterGraph parse_graph(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("graph document: ") + e.what());
  }
  if (!doc.is_object()) fail("graph document", "top level must be an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    fail("graph document", "missing \"vertices\" array");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
    const json& v = doc["vertices"][i];
    std::string where = "vertices[" + std::to_string(i) + "]";
    if (!v.is_string()) fail(where, "vertex name must be a string");
    std::string name = v.get<std::string>();
    if (std::find(names.begin(), names.end(), name) != names.end())
      fail(where, "duplicate vertex name \"" + name + "\"");
    names.push_back(std::move(name));
  }
  CoxeterGraph g(names);

  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) fail("graph document", "\"edges\" must be an array");
    for (std::size_t k = 0; k < doc["edges"].size(); ++k) {
      const json& e = doc["edges"][k];
      std::string where = "edges[" + std::to_string(k) + "]";
      if (!e.is_object() || !e.contains("u") || !e.contains("v") ||
          !e.contains("m") || !e["u"].is_string() || !e["v"].is_string())
        fail(where, "edge must be {\"u\": name, \"v\": name, \"m\": label}");
      CoxLabel m = parse_label(e["m"], where);
      try {
        g.add_edge(e["u"].get<std::string>(), e["v"].get<std::string>(), m);
      } catch (const std::invalid_argument& err) {
        fail(where, err.what());
      }
    }
  }
  return g;
}

std::string graph_to_json(const CoxeterGraph& g) {
  ordered_json doc;
  doc["vertices"] = g.vertices();
  doc["edges"] = ordered_json::array();
  for (const auto& [e, m] : g.edges()) {
    ordered_json edge;
    edge["u"] = g.vertices()[e.first];
    edge["v"] = g.vertices()[e.second];
    if (m.finite())
      edge["m"] = m.order_value();
    else
      edge["m"] = "inf";
    doc["edges"].push_back(edge);
  }
  return doc.dump(2);
}

std::string root_datum_to_json(const RootDatum& rd) {
  ordered_json out;
  out["type"] = rd.type.to_string();
  out["rank"] = rd.rank();
  out["coordinates"] =
      rd.basis == AmbientBasis::weight ? "weight" : "scaled_orthonormal";
  out["ambient_scale"] = rd.ambient_scale.get_str();
  out["cartan"] = matrix_to_json(rd.cartan);
  ordered_json gens = ordered_json::array();
  for (const auto& m : rd.weyl_gens) gens.push_back(matrix_to_json(m));
  out["generators"] = std::move(gens);
  ordered_json roots = ordered_json::array();
  for (const auto& r : rd.simple_roots) {
    ordered_json row = ordered_json::array();
    for (const auto& x : r) row.push_back(x.get_str());
    roots.push_back(std::move(row));
  }
  out["simple_roots"] = std::move(roots);
  out["gram"] = matrix_to_json(rd.gram);
  out["gram_denominator"] = rd.gram_den.get_str();
  out["root_lattice"] = matrix_to_json(rd.q.basis());
  out["coroot_lattice"] = matrix_to_json(rd.qv.basis());
  out["weight_lattice"] = matrix_to_json(rd.p.basis());
  return out.dump(2);
}

namespace {

std::string dump(const ordered_json& doc, bool pretty) {
  return pretty ? doc.dump(2) : doc.dump();
}

ordered_json graph_node(const CoxeterGraph& g) {
  ordered_json doc;
  doc["vertices"] = g.vertices();
  doc["edges"] = ordered_json::array();
  for (const auto& [e, m] : g.edges()) {
    ordered_json edge;
    edge["u"] = g.vertices()[e.first];
    edge["v"] = g.vertices()[e.second];
    if (m.finite())
      edge["m"] = m.order_value();
    else
      edge["m"] = "inf";
    doc["edges"].push_back(std::move(edge));
  }
  return doc;
}

ordered_json abelian_json(const AbelianInvariants& a) {
  ordered_json out;
  out["free_rank"] = a.free_rank;
  ordered_json torsion = ordered_json::array();
  for (const auto& t : a.torsion) torsion.push_back(t.get_str());
  out["torsion"] = std::move(torsion);
  return out;
}

Rat parse_rat(const json& cell, const std::string& where) {
  try {
    if (cell.is_string()) {
      Rat r(cell.get<std::string>());
      r.canonicalize();
      return r;
    }
    if (cell.is_number_integer()) return Rat(cell.get<long>());
  } catch (const std::invalid_argument&) {
  }
  fail(where, "entries are rational strings like \"1/2\"");
}

}  // namespace

std::string group_to_json(const CrystalGroup& g,
                          const std::optional<CoxeterGraph>& provenance,
                          bool pretty) {
  ordered_json doc;
  doc["rank"] = g.dim();
  doc["lattice_basis"] = matrix_to_json(IntegerMatrix::identity(g.dim()));
  ordered_json gens = ordered_json::array();
  ordered_json shifts = ordered_json::array();
  for (std::size_t idx : g.point_generator_indices()) {
    AffineElement e = g.element(idx);
    gens.push_back(matrix_to_json(e.point));
    ordered_json sh = ordered_json::array();
    for (const auto& x : e.shift) sh.push_back(x.get_str());
    shifts.push_back(std::move(sh));
  }
  doc["point_generators"] = std::move(gens);
  doc["vector_system"] = std::move(shifts);
  ordered_json prov;
  if (provenance) {
    prov["kind"] = "graph";
    prov["graph"] = graph_node(*provenance);
  } else {
    prov["kind"] = "manual";
  }
  doc["provenance"] = std::move(prov);
  return dump(doc, pretty);
}

GroupInput group_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("group document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rank") || !doc["rank"].is_number_integer())
    fail("group document", "missing integer \"rank\"");
  long rank = doc["rank"].get<long>();
  if (rank < 1) fail("group document", "rank must be positive");
  std::size_t n = static_cast<std::size_t>(rank);

  IntegerMatrix basis = IntegerMatrix::identity(n);
  if (doc.contains("lattice_basis")) basis = matrix_from_json(doc["lattice_basis"]);
  if (basis.rows() != n || basis.cols() != n)
    fail("group document", "lattice basis must be rank x rank");
  Int det = basis.det();
  if (det != 1 && det != -1)
    fail("group document",
         "lattice basis must be unimodular; the group is stored in lattice "
         "coordinates");
  IntegerMatrix binv = basis.inverse_unimodular();

  if (!doc.contains("point_generators") || !doc["point_generators"].is_array())
    fail("group document", "missing \"point_generators\" array");
  const json& pg = doc["point_generators"];
  json vs = json::array();
  if (doc.contains("vector_system")) {
    vs = doc["vector_system"];
    if (!vs.is_array() || vs.size() != pg.size())
      fail("group document",
           "\"vector_system\" needs one entry per point generator");
  }

  std::vector<AffineElement> gens;
  for (std::size_t i = 0; i < pg.size(); ++i) {
    std::string where = "point_generators[" + std::to_string(i) + "]";
    IntegerMatrix a = matrix_from_json(pg[i]);
    if (a.rows() != n || a.cols() != n) fail(where, "must be rank x rank");
    RatVec shift(n, Rat(0));
    if (i < vs.size()) {
      const json& row = vs[i];
      if (!row.is_array() || row.size() != n)
        fail("vector_system[" + std::to_string(i) + "]", "needs rank entries");
      for (std::size_t j = 0; j < n; ++j)
        shift[j] = parse_rat(row[j], "vector_system[" + std::to_string(i) + "]");
    }
    IntegerMatrix ap = binv * a * basis;
    RatVec sp(n, Rat(0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) sp[r] += Rat(binv.at(r, c)) * shift[c];
    gens.push_back(AffineElement{std::move(ap), std::move(sp)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    gens.push_back(AffineElement::translation(e));
  }

  GroupInput in{CrystalGroup::from_generators(gens), std::nullopt, {}};
  if (doc.contains("provenance") && doc["provenance"].is_object() &&
      doc["provenance"].value("kind", "") == "graph" &&
      doc["provenance"].contains("graph"))
    in.graph = parse_graph(doc["provenance"]["graph"].dump());
  return in;
}

GroupInput group_input_from_text(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("input document: ") + e.what());
  }
  if (doc.is_object() && doc.contains("vertices")) {
    CoxeterGraph g = parse_graph(text);
    if (g.size() == 0) fail("graph document", "graph has no vertices");
    auto dec = decompose_product(g);
    CrystalGroup prod = dec.factors[0].group;
    for (std::size_t i = 1; i < dec.factors.size(); ++i)
      prod = direct_product(prod, dec.factors[i].group);
    return GroupInput{std::move(prod), std::move(g), name};
  }
  if (doc.is_object() && doc.contains("rank")) {
    GroupInput in = group_from_json(text);
    in.name = name;
    return in;
  }
  throw std::invalid_argument(
      "input document: expected a graph ({\"vertices\": ...}) or a group "
      "({\"rank\": ...})");
}

std::string fingerprint_to_json(const Fingerprint& f, bool pretty) {
  ordered_json doc;
  doc["dimension"] = f.dimension;
  doc["abelianization"] = abelian_json(f.abelianization);
  doc["centre_rank"] = f.centre_rank;
  doc["torsion_free"] = f.torsion_free;
  doc["symmorphic"] = f.symmorphic;
  doc["just_infinite"] = f.just_infinite;
  doc["point_group_order"] = f.point_group_order;
  ordered_json chars = ordered_json::array();
  for (const auto& t : f.point_character_data) {
    ordered_json c;
    c["order"] = t.order.get_str();
    c["trace"] = t.trace.get_str();
    c["count"] = t.count;
    chars.push_back(std::move(c));
  }
  doc["point_character_data"] = std::move(chars);
  ordered_json cf;
  if (f.cf_summary.computed) {
    cf["status"] = "computed";
    ordered_json cls = ordered_json::array();
    for (const auto& c : f.cf_summary.classes) {
      ordered_json e;
      e["order"] = c.order;
      e["label"] = c.label;
      cls.push_back(std::move(e));
    }
    cf["classes"] = std::move(cls);
    cf["relation_count"] = f.cf_summary.relation_count;
  } else {
    cf["status"] = "skipped";
  }
  doc["cf_summary"] = std::move(cf);
  ordered_json qt;
  if (f.quotient_tests.attempted) {
    qt["status"] = "computed";
    ordered_json tests = ordered_json::array();
    for (const auto& t : f.quotient_tests.tests) {
      ordered_json e;
      e["target"] = t.target;
      e["outcome"] = outcome_name(t.outcome);
      e["budget"] = t.budget;
      tests.push_back(std::move(e));
    }
    qt["tests"] = std::move(tests);
  } else {
    qt["status"] = "skipped";
  }
  doc["quotient_tests"] = std::move(qt);
  return dump(doc, pretty);
}

std::string distinguish_report_to_json(const DistinguishReport& r, bool pretty) {
  ordered_json doc;
  doc["inputs"] = ordered_json::array({r.left_name, r.right_name});
  ordered_json v;
  if (r.distinguished) {
    v["kind"] = "distinguished";
    v["field"] = r.field;
    v["left"] = r.left_value;
    v["right"] = r.right_value;
  } else {
    v["kind"] = "indistinguishable_at_budget";
    v["budget"] = r.budget;
  }
  doc["verdict"] = std::move(v);
  ordered_json ts = ordered_json::array();
  for (const auto& f : r.transcript) {
    ordered_json e;
    e["field"] = f.field;
    e["left"] = f.left;
    e["right"] = f.right;
    e["equal"] = f.equal;
    e["conclusive"] = f.conclusive;
    ts.push_back(std::move(e));
  }
  doc["transcript"] = std::move(ts);
  return dump(doc, pretty);
}

std::string feit_scan_to_json(const FeitScan& s, bool pretty) {
  ordered_json doc;
  doc["kind"] = kind_name(s.kind);
  doc["rank"] = s.rank;
  ordered_json rows = ordered_json::array();
  for (const auto& r : s.rows) {
    ordered_json e;
    e["lattice"] = r.label;
    e["index_over_root_lattice"] = r.index_over_root.get_str();
    e["abelianization"] = abelian_json(r.abelianization);
    e["is_root_lattice"] = r.is_root_lattice;
    rows.push_back(std::move(e));
  }
  doc["rows"] = std::move(rows);
  return dump(doc, pretty);
}

std::string feit_scan_to_text(const FeitScan& s) {
  std::string out = "stable lattices of " + kind_name(s.kind) +
                    std::to_string(s.rank) + " between root and weight\n";
  std::size_t wl = 7, wi = 5, wa = 14;
  for (const auto& r : s.rows) {
    wl = std::max(wl, r.label.size());
    wi = std::max(wi, r.index_over_root.get_str().size());
    wa = std::max(wa, r.abelianization.to_string().size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  out += "  " + pad("lattice", wl) + "  " + pad("index", wi) + "  " +
         pad("abelianization", wa) + "  root?\n";
  for (const auto& r : s.rows)
    out += "  " + pad(r.label, wl) + "  " + pad(r.index_over_root.get_str(), wi) +
           "  " + pad(r.abelianization.to_string(), wa) + "  " +
           (r.is_root_lattice ? "yes" : "no") + "\n";
  return out;
}

std::string bc_report_to_json(const BcReport& r, bool pretty) {
  ordered_json doc;
  doc["rank"] = r.rank;
  ordered_json claims = ordered_json::array();
  for (const auto& c : r.claims) {
    ordered_json e;
    e["claim"] = c.claim;
    e["status"] = claim_status_name(c.status);
    e["witness"] = c.witness;
    claims.push_back(std::move(e));
  }
  doc["claims"] = std::move(claims);
  doc["failed"] = r.failed;
  doc["inconclusive"] = r.inconclusive;
  return dump(doc, pretty);
}

std::string classification_to_json(const std::vector<CoxeterGraph>& comps,
                                   bool pretty) {
  ordered_json doc;
  ordered_json rows = ordered_json::array();
  bool all_affine = true;
  for (const auto& c : comps) {
    auto type = classify_component(c);
    all_affine = all_affine && type.is_affine();
    ordered_json e;
    e["vertices"] = c.vertices();
    e["type"] = type.to_string();
    rows.push_back(std::move(e));
  }
  doc["components"] = std::move(rows);
  doc["all_affine"] = all_affine;
  return dump(doc, pretty);
}

std::string matching_to_json(const std::optional<std::vector<std::size_t>>& sigma,
                             bool pretty) {
  ordered_json doc;
  if (sigma) {
    ordered_json m = ordered_json::array();
    for (auto j : *sigma) m.push_back(j);
    doc["matching"] = std::move(m);
  } else {
    doc["matching"] = nullptr;
  }
  return dump(doc, pretty);
}

}  // namespace alcove
