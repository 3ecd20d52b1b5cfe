#include "alcove/coxeter_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace alcove {

CoxLabel CoxLabel::order(unsigned m) {
  if (m == 0) throw std::invalid_argument("bond order must be positive");
  return CoxLabel(m);
}

unsigned CoxLabel::order_value() const {
  if (!finite())
    throw std::logic_error("unbounded bond order has no integer value");
  return value_;
}

bool operator<(CoxLabel a, CoxLabel b) {
  if (!a.finite()) return false;
  if (!b.finite()) return true;
  return a.value_ < b.value_;
}

std::string CoxLabel::to_string() const {
  return finite() ? std::to_string(value_) : "inf";
}

CoxeterGraph::CoxeterGraph(std::vector<std::string> vertices)
    : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  auto dup = std::adjacent_find(vertices_.begin(), vertices_.end());
  if (dup != vertices_.end())
    throw std::invalid_argument("duplicate vertex name \"" + *dup + "\"");
}

std::size_t CoxeterGraph::index_of(const std::string& name) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end() || *it != name)
    throw std::invalid_argument("unknown vertex \"" + name + "\"");
  return static_cast<std::size_t>(it - vertices_.begin());
}

void CoxeterGraph::add_edge(const std::string& u, const std::string& v,
                            CoxLabel m) {
  std::size_t i = index_of(u);
  std::size_t j = index_of(v);
  if (i == j) throw std::invalid_argument("self-loop on \"" + u + "\"");
  if (m.finite() && m.order_value() < 3)
    throw std::invalid_argument("edge label " +
                                std::to_string(m.order_value()) +
                                " is out of range (labels start at 3)");
  if (i > j) std::swap(i, j);
  if (!edges_.emplace(std::make_pair(i, j), m).second)
    throw std::invalid_argument("duplicate edge {" + u + ", " + v + "}");
}

CoxLabel CoxeterGraph::bond(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size())
    throw std::out_of_range("vertex index out of range");
  if (i == j) return CoxLabel::order(1);
  if (i > j) std::swap(i, j);
  auto it = edges_.find({i, j});
  return it == edges_.end() ? CoxLabel::order(2) : it->second;
}

bool CoxeterGraph::connected() const {
  if (size() == 0) return true;
  std::vector<char> seen(size(), 0);
  std::vector<std::size_t> stack = {0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& [e, m] : edges_) {
      (void)m;
      std::size_t w;
      if (e.first == v)
        w = e.second;
      else if (e.second == v)
        w = e.first;
      else
        continue;
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == size();
}

CoxeterMatrix coxeter_matrix(const CoxeterGraph& g) {
  CoxeterMatrix m;
  m.size = g.size();
  m.entries.assign(m.size * m.size, CoxLabel::order(2));
  for (std::size_t i = 0; i < m.size; ++i)
    for (std::size_t j = 0; j < m.size; ++j)
      m.entries[i * m.size + j] = g.bond(i, j);
  return m;
}

std::string kind_name(SeriesKind k) {
  switch (k) {
    case SeriesKind::A: return "A";
    case SeriesKind::B: return "B";
    case SeriesKind::C: return "C";
    case SeriesKind::D: return "D";
    case SeriesKind::E6: return "E6";
    case SeriesKind::E7: return "E7";
    case SeriesKind::E8: return "E8";
    case SeriesKind::F4: return "F4";
    case SeriesKind::G2: return "G2";
    case SeriesKind::I1: return "I1";
  }
  throw std::logic_error("unreachable");
}

ComponentType ComponentType::affine(SeriesKind k, std::size_t rank) {
  return ComponentType{GraphFamily::affine, k, rank};
}

ComponentType ComponentType::finite(SeriesKind k, std::size_t rank) {
  return ComponentType{GraphFamily::finite_crystallographic, k, rank};
}

std::string ComponentType::to_string() const {
  if (family == GraphFamily::other) return "Other";
  std::string name = kind_name(kind);
  bool parametric = name.size() == 1;  // A/B/C/D take the rank as subscript
  std::string out;
  if (family == GraphFamily::affine) {
    out = name.substr(0, 1) + "~";
    if (parametric)
      out += std::to_string(rank);
    else
      out += name.substr(1);
  } else {
    out = parametric ? name + std::to_string(rank) : name;
  }
  return out;
}

namespace {

std::vector<std::string> numbered_names(std::size_t first, std::size_t last) {
  std::size_t width = std::to_string(last).size();
  std::vector<std::string> names;
  for (std::size_t i = first; i <= last; ++i) {
    std::string digits = std::to_string(i);
    names.push_back("s" + std::string(width - digits.size(), '0') + digits);
  }
  return names;
}

// Path on the given vertex names with one label per edge.
CoxeterGraph path_graph(const std::vector<std::string>& names,
                        const std::vector<unsigned>& labels) {
  CoxeterGraph g(names);
  for (std::size_t i = 0; i + 1 < names.size(); ++i)
    g.add_edge(names[i], names[i + 1], CoxLabel::order(labels.at(i)));
  return g;
}

// Star of simple chains: one central vertex with arms of the given lengths,
// all labels 3. Used for the D/E shapes.
CoxeterGraph arm_graph(const std::vector<std::size_t>& arm_lengths) {
  std::size_t total = 1;
  for (std::size_t len : arm_lengths) total += len;
  std::vector<std::string> names = numbered_names(1, total);
  CoxeterGraph g(names);
  std::size_t next = 1;  // names[0] is the centre
  for (std::size_t len : arm_lengths) {
    std::string prev = names[0];
    for (std::size_t k = 0; k < len; ++k) {
      g.add_edge(prev, names[next], CoxLabel::order(3));
      prev = names[next];
      ++next;
    }
  }
  return g;
}

}  // namespace

CoxeterGraph affine_graph(SeriesKind kind, std::size_t rank) {
  auto require = [&](bool ok) {
    if (!ok)
      throw std::invalid_argument("no affine " + kind_name(kind) +
                                  " graph of rank " + std::to_string(rank));
  };
  std::vector<std::string> names;
  if (kind == SeriesKind::A || kind == SeriesKind::B || kind == SeriesKind::C ||
      kind == SeriesKind::D || kind == SeriesKind::I1)
    names = numbered_names(0, rank);

  switch (kind) {
    case SeriesKind::I1: {
      require(rank == 1);
      CoxeterGraph g(names);
      g.add_edge(names[0], names[1], CoxLabel::unbounded());
      return g;
    }
    case SeriesKind::A: {
      require(rank >= 2);
      CoxeterGraph g(names);
      for (std::size_t i = 0; i <= rank; ++i)
        g.add_edge(names[i], names[(i + 1) % (rank + 1)], CoxLabel::order(3));
      return g;
    }
    case SeriesKind::B: {
      require(rank >= 3);
      CoxeterGraph g(names);
      g.add_edge(names[0], names[2], CoxLabel::order(3));
      for (std::size_t i = 1; i + 1 <= rank; ++i)
        g.add_edge(names[i], names[i + 1],
                   CoxLabel::order(i + 1 == rank ? 4 : 3));
      return g;
    }
    case SeriesKind::C: {
      require(rank >= 2);
      std::vector<unsigned> labels(rank, 3);
      labels.front() = 4;
      labels.back() = 4;
      return path_graph(names, labels);
    }
    case SeriesKind::D: {
      require(rank >= 4);
      CoxeterGraph g(names);
      g.add_edge(names[0], names[2], CoxLabel::order(3));
      for (std::size_t i = 1; i + 2 <= rank; ++i)
        g.add_edge(names[i], names[i + 1], CoxLabel::order(3));
      g.add_edge(names[rank - 2], names[rank], CoxLabel::order(3));
      return g;
    }
    case SeriesKind::E6:
      require(rank == 6);
      return arm_graph({2, 2, 2});
    case SeriesKind::E7:
      require(rank == 7);
      return arm_graph({1, 3, 3});
    case SeriesKind::E8:
      require(rank == 8);
      return arm_graph({1, 2, 5});
    case SeriesKind::F4:
      require(rank == 4);
      return path_graph(numbered_names(0, 4), {3, 3, 4, 3});
    case SeriesKind::G2:
      require(rank == 2);
      return path_graph(numbered_names(0, 2), {3, 6});
  }
  throw std::logic_error("unreachable");
}

CoxeterGraph finite_graph(SeriesKind kind, std::size_t rank) {
  auto require = [&](bool ok) {
    if (!ok)
      throw std::invalid_argument("no finite " + kind_name(kind) +
                                  " graph of rank " + std::to_string(rank));
  };
  switch (kind) {
    case SeriesKind::A:
      require(rank >= 1);
      return path_graph(numbered_names(1, rank),
                        std::vector<unsigned>(rank - 1, 3));
    case SeriesKind::B: {
      require(rank >= 2);
      std::vector<unsigned> labels(rank - 1, 3);
      labels.back() = 4;
      return path_graph(numbered_names(1, rank), labels);
    }
    case SeriesKind::D: {
      require(rank >= 4);
      std::vector<std::string> names = numbered_names(1, rank);
      CoxeterGraph g(names);
      for (std::size_t i = 0; i + 2 < rank; ++i)
        g.add_edge(names[i], names[i + 1], CoxLabel::order(3));
      g.add_edge(names[rank - 3], names[rank - 1], CoxLabel::order(3));
      return g;
    }
    case SeriesKind::E6:
      require(rank == 6);
      return arm_graph({1, 2, 2});
    case SeriesKind::E7:
      require(rank == 7);
      return arm_graph({1, 2, 3});
    case SeriesKind::E8:
      require(rank == 8);
      return arm_graph({1, 2, 4});
    case SeriesKind::F4:
      require(rank == 4);
      return path_graph(numbered_names(1, 4), {3, 4, 3});
    case SeriesKind::G2:
      require(rank == 2);
      return path_graph(numbered_names(1, 2), {6});
    default:
      throw std::invalid_argument("no finite " + kind_name(kind) + " series");
  }
}

std::vector<CoxeterGraph> components(const CoxeterGraph& g) {
  std::vector<int> comp(g.size(), -1);
  int next = 0;
  for (std::size_t start = 0; start < g.size(); ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = next;
    std::vector<std::size_t> stack = {start};
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (const auto& [e, m] : g.edges()) {
        (void)m;
        std::size_t w;
        if (e.first == v)
          w = e.second;
        else if (e.second == v)
          w = e.first;
        else
          continue;
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  // Vertex names are sorted, so walking components by first occurrence
  // already orders them by least vertex name.
  std::vector<CoxeterGraph> out;
  for (int c = 0; c < next; ++c) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < g.size(); ++v)
      if (comp[v] == c) names.push_back(g.vertices()[v]);
    CoxeterGraph part(names);
    for (const auto& [e, m] : g.edges())
      if (comp[e.first] == c)
        part.add_edge(g.vertices()[e.first], g.vertices()[e.second], m);
    out.push_back(std::move(part));
  }
  return out;
}

namespace {

std::vector<CoxLabel> vertex_signature(const CoxeterGraph& g, std::size_t v) {
  std::vector<CoxLabel> sig;
  for (const auto& [e, m] : g.edges())
    if (e.first == v || e.second == v) sig.push_back(m);
  std::sort(sig.begin(), sig.end());
  return sig;
}

}  // namespace

std::optional<std::vector<std::size_t>> graph_isomorphism(
    const CoxeterGraph& a, const CoxeterGraph& b) {
  std::size_t n = a.size();
  if (n != b.size() || a.edges().size() != b.edges().size()) return {};
  std::vector<std::vector<CoxLabel>> siga(n), sigb(n);
  for (std::size_t v = 0; v < n; ++v) {
    siga[v] = vertex_signature(a, v);
    sigb[v] = vertex_signature(b, v);
  }

  std::vector<std::size_t> image(n, n);
  std::vector<char> used(n, 0);
  // Plain backtracking; the graphs under comparison stay tiny.
  auto extend = [&](auto&& self, std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || siga[v] != sigb[w]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u)
        ok = a.bond(v, u) == b.bond(w, image[u]);
      if (ok) {
        image[v] = w;
        used[w] = 1;
        if (self(self, v + 1)) return true;
        used[w] = 0;
      }
    }
    return false;
  };
  if (!extend(extend, 0)) return {};
  return image;
}

bool labeled_isomorphic(const CoxeterGraph& a, const CoxeterGraph& b) {
  return graph_isomorphism(a, b).has_value();
}

ComponentType classify_component(const CoxeterGraph& g) {
  if (g.size() == 0 || !g.connected())
    throw std::invalid_argument("classification needs a nonempty connected graph");
  std::size_t v = g.size();

  std::vector<ComponentType> candidates;
  auto add_affine = [&](SeriesKind k, std::size_t rank) {
    candidates.push_back(ComponentType::affine(k, rank));
  };
  auto add_finite = [&](SeriesKind k, std::size_t rank) {
    candidates.push_back(ComponentType::finite(k, rank));
  };
  if (v == 2) add_affine(SeriesKind::I1, 1);
  if (v >= 3) add_affine(SeriesKind::A, v - 1);
  if (v >= 4) add_affine(SeriesKind::B, v - 1);
  if (v >= 3) add_affine(SeriesKind::C, v - 1);
  if (v >= 5) add_affine(SeriesKind::D, v - 1);
  if (v == 7) add_affine(SeriesKind::E6, 6);
  if (v == 8) add_affine(SeriesKind::E7, 7);
  if (v == 9) add_affine(SeriesKind::E8, 8);
  if (v == 5) add_affine(SeriesKind::F4, 4);
  if (v == 3) add_affine(SeriesKind::G2, 2);
  add_finite(SeriesKind::A, v);
  if (v >= 2) add_finite(SeriesKind::B, v);
  if (v >= 4) add_finite(SeriesKind::D, v);
  if (v == 6) add_finite(SeriesKind::E6, 6);
  if (v == 7) add_finite(SeriesKind::E7, 7);
  if (v == 8) add_finite(SeriesKind::E8, 8);
  if (v == 4) add_finite(SeriesKind::F4, 4);
  if (v == 2) add_finite(SeriesKind::G2, 2);

  for (const ComponentType& t : candidates) {
    CoxeterGraph pattern = t.is_affine() ? affine_graph(t.kind, t.rank)
                                         : finite_graph(t.kind, t.rank);
    if (labeled_isomorphic(pattern, g)) return t;
  }
  return ComponentType::other();
}

}  // namespace alcove
