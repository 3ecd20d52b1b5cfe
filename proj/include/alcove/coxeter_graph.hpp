#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace alcove {

/// Bond order between two Coxeter generators: a positive integer or
/// unbounded. The unbounded value carries no integer, so it cannot leak
/// into exponent arithmetic.
class CoxLabel {
 public:
  static constexpr CoxLabel unbounded() { return CoxLabel(kUnbounded); }
  static CoxLabel order(unsigned m);

  bool finite() const { return value_ != kUnbounded; }
  unsigned order_value() const;

  friend bool operator==(CoxLabel a, CoxLabel b) { return a.value_ == b.value_; }
  friend bool operator!=(CoxLabel a, CoxLabel b) { return a.value_ != b.value_; }
  /// Finite labels ascending, unbounded after every finite label.
  friend bool operator<(CoxLabel a, CoxLabel b);

  std::string to_string() const;

 private:
  explicit constexpr CoxLabel(unsigned v) : value_(v) {}
  static constexpr unsigned kUnbounded = 0;
  unsigned value_;
};

/// Edge-labeled graph on named vertices. Labels are >= 3 or unbounded; a
/// missing edge means bond order 2, the diagonal has order 1.
class CoxeterGraph {
 public:
  CoxeterGraph() = default;
  explicit CoxeterGraph(std::vector<std::string> vertices);

  void add_edge(const std::string& u, const std::string& v, CoxLabel m);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  std::size_t index_of(const std::string& name) const;

  CoxLabel bond(std::size_t i, std::size_t j) const;
  const std::map<std::pair<std::size_t, std::size_t>, CoxLabel>& edges() const {
    return edges_;
  }

  bool connected() const;

 private:
  std::vector<std::string> vertices_;  // sorted; fixes all downstream orders
  std::map<std::pair<std::size_t, std::size_t>, CoxLabel> edges_;  // keys i < j
};

struct CoxeterMatrix {
  std::size_t size = 0;
  std::vector<CoxLabel> entries;  // row-major

  CoxLabel at(std::size_t i, std::size_t j) const {
    return entries.at(i * size + j);
  }
};

CoxeterMatrix coxeter_matrix(const CoxeterGraph& g);

enum class GraphFamily { affine, finite_crystallographic, other };

enum class SeriesKind { A, B, C, D, E6, E7, E8, F4, G2, I1 };

std::string kind_name(SeriesKind k);

struct ComponentType {
  GraphFamily family = GraphFamily::other;
  SeriesKind kind = SeriesKind::A;  // meaningful unless family is other
  std::size_t rank = 0;

  static ComponentType affine(SeriesKind k, std::size_t rank);
  static ComponentType finite(SeriesKind k, std::size_t rank);
  static ComponentType other() { return ComponentType{}; }

  bool is_affine() const { return family == GraphFamily::affine; }
  std::string to_string() const;

  friend bool operator==(const ComponentType&, const ComponentType&) = default;
};

/// Template graph of the affine series; rank is the subscript, so the graph
/// has rank + 1 vertices. Vertex names are s0, s1, ... with s0 the added
/// node.
CoxeterGraph affine_graph(SeriesKind kind, std::size_t rank);

/// Template graph of the finite crystallographic series, vertices s1..sn.
CoxeterGraph finite_graph(SeriesKind kind, std::size_t rank);

/// Connected components ordered by least vertex name, names preserved.
std::vector<CoxeterGraph> components(const CoxeterGraph& g);

/// Label-preserving isomorphism a -> b as an index map, if one exists.
std::optional<std::vector<std::size_t>> graph_isomorphism(
    const CoxeterGraph& a, const CoxeterGraph& b);

bool labeled_isomorphic(const CoxeterGraph& a, const CoxeterGraph& b);

/// Matches a connected graph against the affine and finite crystallographic
/// template families.
ComponentType classify_component(const CoxeterGraph& g);

/// Reads the JSON graph document format:
/// {"vertices": ["s0", ...], "edges": [{"u": "s0", "v": "s1", "m": 4}, ...]}
/// where m is an integer >= 3 or the string "inf". Errors carry the
/// offending location.
CoxeterGraph parse_graph(const std::string& text);

std::string graph_to_json(const CoxeterGraph& g);

}  // namespace alcove
