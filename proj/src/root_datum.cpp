#include "alcove/root_datum.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace alcove {

Int RootDatum::form_num(const IntVec& x, const IntVec& y) const {
  IntVec gy = gram * y;
  Int acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * gy[i];
  return acc;
}

namespace {

// Pairwise generator order encoded by a Cartan matrix: c_ij * c_ji is
// 0, 1, 2, 3 for bond orders 2, 3, 4, 6.
unsigned bond_order(const Int& prod) {
  if (prod == 0) return 2;
  if (prod == 1) return 3;
  if (prod == 2) return 4;
  if (prod == 3) return 6;
  throw std::logic_error("Cartan product outside the crystallographic range");
}

IntegerMatrix power(const IntegerMatrix& m, unsigned k) {
  IntegerMatrix acc = IntegerMatrix::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

void verify_datum(const RootDatum& rd) {
  std::size_t n = rd.rank();
  if (rd.gram != rd.gram.transpose())
    throw std::logic_error("invariant form is not symmetric");
  for (std::size_t i = 0; i < n; ++i) {
    const IntegerMatrix& m = rd.weyl_gens[i];
    if (!(m * m).is_identity())
      throw std::logic_error("Weyl generator is not an involution");
    if (m.transpose() * rd.gram * m != rd.gram)
      throw std::logic_error("Weyl generator does not preserve the form");
    for (std::size_t j = i + 1; j < n; ++j) {
      unsigned ord = bond_order(rd.cartan.at(i, j) * rd.cartan.at(j, i));
      if (!power(rd.weyl_gens[i] * rd.weyl_gens[j], ord).is_identity())
        throw std::logic_error("braid relation fails");
    }
    for (const Lattice* l : {&rd.q, &rd.qv, &rd.p})
      for (std::size_t c = 0; c < l->rank(); ++c)
        if (!l->contains(m * l->basis().column_vec(c)))
          throw std::logic_error("lattice is not generator-stable");
  }
  if (!rd.p.contains(rd.q)) throw std::logic_error("root lattice not in weight lattice");
}

// B/C/D share the doubled orthonormal ambient; these helpers build the
// standard generator matrices there.
IntegerMatrix swap_matrix(std::size_t n, std::size_t i) {
  IntegerMatrix m = IntegerMatrix::identity(n);
  m.at(i, i) = 0;
  m.at(i + 1, i + 1) = 0;
  m.at(i, i + 1) = 1;
  m.at(i + 1, i) = 1;
  return m;
}

IntegerMatrix flip_last(std::size_t n) {
  IntegerMatrix m = IntegerMatrix::identity(n);
  m.at(n - 1, n - 1) = -1;
  return m;
}

IntegerMatrix swap_and_negate_last_two(std::size_t n) {
  IntegerMatrix m = IntegerMatrix::identity(n);
  m.at(n - 2, n - 2) = 0;
  m.at(n - 1, n - 1) = 0;
  m.at(n - 2, n - 1) = -1;
  m.at(n - 1, n - 2) = -1;
  return m;
}

IntVec doubled_unit(std::size_t n, std::size_t i) {
  IntVec v(n, Int(0));
  v[i] = 2;
  return v;
}

IntVec doubled_diff(std::size_t n, std::size_t i) {  // 2(e_i - e_{i+1})
  IntVec v(n, Int(0));
  v[i] = 2;
  v[i + 1] = -2;
  return v;
}

Lattice doubled_standard(std::size_t n) {
  return Lattice::scaled_standard(n, 2);
}

// Doubled even-coordinate-sum lattice: basis 2(e_i - e_{i+1}), 2(e_{n-1}+e_n).
Lattice doubled_even_sum(std::size_t n) {
  std::vector<IntVec> cols;
  for (std::size_t i = 0; i + 1 < n; ++i) cols.push_back(doubled_diff(n, i));
  IntVec last(n, Int(0));
  if (n >= 2) {
    last[n - 2] = 2;
    last[n - 1] = 2;
  } else {
    last[0] = 4;  // rank 1 degenerates to 4Z
  }
  cols.push_back(last);
  return Lattice::span(n, IntegerMatrix::from_columns(cols, n));
}

// Doubled standard lattice extended by the all-ones vector (the half-sum
// weight before doubling).
Lattice doubled_with_halfsum(std::size_t n) {
  std::vector<IntVec> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(doubled_unit(n, i));
  cols.push_back(IntVec(n, Int(1)));
  return Lattice::span(n, IntegerMatrix::from_columns(cols, n));
}

IntegerMatrix cartan_tridiagonal(std::size_t n) {
  IntegerMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c.at(i, i) = 2;
    if (i + 1 < n) {
      c.at(i, i + 1) = -1;
      c.at(i + 1, i) = -1;
    }
  }
  return c;
}

// Cartan matrix read off a simply-laced graph in its canonical vertex order.
IntegerMatrix cartan_from_graph(const CoxeterGraph& g) {
  std::size_t n = g.size();
  IntegerMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c.at(i, i) = 2;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && g.bond(i, j) == CoxLabel::order(3)) c.at(i, j) = -1;
  }
  return c;
}

RootDatum build_weight_model(SeriesKind kind, std::size_t rank,
                             IntegerMatrix cartan, IntVec lengths) {
  std::size_t n = rank;
  RootDatum rd;
  rd.type = ComponentType::finite(kind, rank);
  rd.cartan = std::move(cartan);
  rd.ambient_scale = 1;
  rd.basis = AmbientBasis::weight;

  for (std::size_t i = 0; i < n; ++i) {
    IntegerMatrix m = IntegerMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k)
      m.at(k, i) = (k == i ? Int(1) : Int(0)) - rd.cartan.at(i, k);
    rd.weyl_gens.push_back(std::move(m));
    rd.simple_roots.push_back(rd.cartan.transpose().column_vec(i));
  }

  Int det = rd.cartan.det();
  IntegerMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d.at(i, i) = lengths[i];
  rd.gram = d * adjugate(rd.cartan).transpose();
  rd.gram_den = 2 * det;

  rd.p = Lattice::standard(n);
  rd.q = Lattice::span(n, rd.cartan.transpose());
  rd.qv = rd.q;  // self-dual realization; recorded in the export
  verify_datum(rd);
  return rd;
}

RootDatum build_epsilon_model(SeriesKind kind, std::size_t rank) {
  std::size_t n = rank;
  RootDatum rd;
  rd.type = ComponentType::finite(kind, rank);
  rd.ambient_scale = 2;
  rd.basis = AmbientBasis::scaled_orthonormal;
  rd.gram = IntegerMatrix::identity(n);
  rd.gram_den = 1;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    rd.weyl_gens.push_back(swap_matrix(n, i));
    rd.simple_roots.push_back(doubled_diff(n, i));
  }
  rd.cartan = cartan_tridiagonal(n);

  switch (kind) {
    case SeriesKind::B:
      rd.weyl_gens.push_back(flip_last(n));
      rd.simple_roots.push_back(doubled_unit(n, n - 1));
      rd.cartan.at(n - 2, n - 1) = -2;
      rd.q = doubled_standard(n);
      rd.qv = doubled_even_sum(n);
      rd.p = doubled_with_halfsum(n);
      break;
    case SeriesKind::C: {
      rd.weyl_gens.push_back(flip_last(n));
      IntVec v(n, Int(0));
      v[n - 1] = 4;
      rd.simple_roots.push_back(v);
      rd.cartan.at(n - 1, n - 2) = -2;
      rd.q = doubled_even_sum(n);
      rd.qv = doubled_standard(n);
      rd.p = doubled_standard(n);
      break;
    }
    case SeriesKind::D: {
      rd.weyl_gens.push_back(swap_and_negate_last_two(n));
      IntVec v(n, Int(0));
      v[n - 2] = 2;
      v[n - 1] = 2;
      rd.simple_roots.push_back(v);
      rd.cartan.at(n - 2, n - 1) = 0;
      rd.cartan.at(n - 1, n - 2) = 0;
      rd.cartan.at(n - 3, n - 1) = -1;
      rd.cartan.at(n - 1, n - 3) = -1;
      rd.q = doubled_even_sum(n);
      rd.qv = rd.q;
      rd.p = doubled_with_halfsum(n);
      break;
    }
    default:
      throw std::logic_error("epsilon model covers B, C, D only");
  }
  verify_datum(rd);
  return rd;
}

}  // namespace

RootDatum build_root_datum(SeriesKind kind, std::size_t rank) {
  auto require = [&](bool ok) {
    if (!ok)
      throw std::invalid_argument("no " + kind_name(kind) +
                                  " root datum of rank " +
                                  std::to_string(rank));
  };
  switch (kind) {
    case SeriesKind::A:
      require(rank >= 1);
      return build_weight_model(kind, rank, cartan_tridiagonal(rank),
                                IntVec(rank, Int(1)));
    case SeriesKind::B:
      require(rank >= 2);
      return build_epsilon_model(kind, rank);
    case SeriesKind::C:
      require(rank >= 2);
      return build_epsilon_model(kind, rank);
    case SeriesKind::D:
      require(rank >= 4);
      return build_epsilon_model(kind, rank);
    case SeriesKind::E6:
    case SeriesKind::E7:
    case SeriesKind::E8: {
      std::size_t want = kind == SeriesKind::E6 ? 6 : kind == SeriesKind::E7 ? 7 : 8;
      require(rank == want);
      return build_weight_model(kind, rank,
                                cartan_from_graph(finite_graph(kind, rank)),
                                IntVec(rank, Int(1)));
    }
    case SeriesKind::F4: {
      require(rank == 4);
      IntegerMatrix c = cartan_tridiagonal(4);
      c.at(1, 2) = -2;  // nodes 1, 2 long; 3, 4 short
      return build_weight_model(kind, 4, std::move(c),
                                int_vec({2, 2, 1, 1}));
    }
    case SeriesKind::G2: {
      require(rank == 2);
      IntegerMatrix c = IntegerMatrix::from_rows({{2, -1}, {-3, 2}});
      return build_weight_model(kind, 2, std::move(c), int_vec({1, 3}));
    }
    case SeriesKind::I1:
      throw std::invalid_argument("no finite I series root datum");
  }
  throw std::logic_error("unreachable");
}

AbelianInvariants fundamental_quotient(const RootDatum& rd) {
  return quotient_invariants(rd.q, rd.p);
}

std::vector<Lattice> intermediate_invariant_lattices(const RootDatum& rd) {
  std::size_t n = rd.rank();
  auto q_in_p = rd.p.coordinates(rd.q);
  if (!q_in_p) throw std::logic_error("Q not inside P");
  SmithResult s = snf(*q_in_p);

  // P/Q = direct sum of Z_{d_i}; generator i lifts to column i of
  // p_basis * u^{-1}.
  IntegerMatrix lifts = rd.p.basis() * s.u.inverse_unimodular();
  std::vector<Int> orders = s.diagonal();
  std::vector<std::size_t> live;  // coordinates with d_i > 1
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] > 1) live.push_back(i);

  // Elements of P/Q as coordinate tuples over the live positions.
  std::vector<std::vector<Int>> elements = {{}};
  for (std::size_t i : live) {
    std::vector<std::vector<Int>> next;
    for (const auto& e : elements)
      for (Int c = 0; c < orders[i]; ++c) {
        auto f = e;
        f.push_back(c);
        next.push_back(std::move(f));
      }
    elements = std::move(next);
  }
  std::size_t count = elements.size();
  auto add = [&](std::size_t a, std::size_t b) {
    std::vector<Int> sum(live.size());
    for (std::size_t k = 0; k < live.size(); ++k)
      sum[k] = (elements[a][k] + elements[b][k]) % orders[live[k]];
    return std::size_t(std::find(elements.begin(), elements.end(), sum) -
                       elements.begin());
  };

  // Subgroup closures of one or two generators; P/Q here never needs more.
  std::set<std::vector<char>> subgroups;
  auto closure = [&](std::vector<std::size_t> gens) {
    std::vector<char> in(count, 0);
    in[0] = 1;
    std::vector<std::size_t> frontier = {0};
    while (!frontier.empty()) {
      std::size_t x = frontier.back();
      frontier.pop_back();
      for (std::size_t gidx : gens) {
        std::size_t y = add(x, gidx);
        if (!in[y]) {
          in[y] = 1;
          frontier.push_back(y);
        }
      }
    }
    subgroups.insert(in);
  };
  closure({});
  for (std::size_t a = 0; a < count; ++a) {
    closure({a});
    for (std::size_t b = a + 1; b < count; ++b) closure({a, b});
  }

  // Whether the generators act trivially on P/Q; if so every intermediate
  // lattice is stable and the subgroup count is exact.
  bool trivial_action = true;
  for (const IntegerMatrix& m : rd.weyl_gens)
    for (std::size_t c = 0; c < rd.p.rank() && trivial_action; ++c) {
      IntVec pc = rd.p.basis().column_vec(c);
      IntVec moved = m * pc;
      for (std::size_t k = 0; k < n; ++k) moved[k] -= pc[k];
      trivial_action = rd.q.contains(moved);
    }

  std::vector<Lattice> out;
  for (const auto& in : subgroups) {
    std::vector<IntVec> gens;
    for (std::size_t c = 0; c < rd.q.rank(); ++c)
      gens.push_back(rd.q.basis().column_vec(c));
    for (std::size_t x = 0; x < count; ++x) {
      if (!in[x]) continue;
      IntVec amb(n, Int(0));
      for (std::size_t k = 0; k < live.size(); ++k) {
        IntVec lift = lifts.column_vec(live[k]);
        for (std::size_t r = 0; r < n; ++r) amb[r] += elements[x][k] * lift[r];
      }
      gens.push_back(std::move(amb));
    }
    Lattice l = Lattice::span(n, IntegerMatrix::from_columns(gens, n));
    bool stable = true;
    for (const IntegerMatrix& m : rd.weyl_gens)
      for (std::size_t c = 0; c < l.rank() && stable; ++c)
        stable = l.contains(m * l.basis().column_vec(c));
    if (stable) out.push_back(std::move(l));
  }
  std::sort(out.begin(), out.end(), [&](const Lattice& a, const Lattice& b) {
    Int ia = lattice_index(rd.q, a), ib = lattice_index(rd.q, b);
    if (ia != ib) return ia < ib;
    return a.basis() < b.basis();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());

  if (trivial_action && out.size() != subgroups.size())
    throw std::logic_error(
        "trivial action on P/Q must make every intermediate lattice stable");
  return out;
}

LatticeChain bc_chain(std::size_t n) {
  if (n < 2)
    throw std::invalid_argument("the B/C chain needs rank at least 2");
  RootDatum rd = build_root_datum(SeriesKind::B, n);
  LatticeChain chain;
  chain.lattices = {rd.qv, rd.q, rd.p};
  for (std::size_t i = 0; i + 1 < chain.lattices.size(); ++i) {
    if (!chain.lattices[i + 1].contains(chain.lattices[i]) ||
        chain.lattices[i] == chain.lattices[i + 1])
      throw std::logic_error("chain inclusions must be strict");
    chain.steps.push_back(
        quotient_invariants(chain.lattices[i], chain.lattices[i + 1]));
  }
  return chain;
}

bool simply_laced_coincidence(const RootDatum& rd) { return rd.q == rd.qv; }

std::vector<IntVec> all_roots(const RootDatum& rd) {
  std::set<IntVec> seen(rd.simple_roots.begin(), rd.simple_roots.end());
  std::vector<IntVec> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    IntVec r = std::move(frontier.back());
    frontier.pop_back();
    for (const IntegerMatrix& m : rd.weyl_gens) {
      IntVec image = m * r;
      if (seen.insert(image).second) frontier.push_back(std::move(image));
    }
  }
  return std::vector<IntVec>(seen.begin(), seen.end());
}

namespace {

IntVec coroot_of(const RootDatum& rd, const IntVec& r) {
  // In the doubled orthonormal coordinates the natural coroot of r is
  // 8 r / (r, r) after storage scaling.
  Int norm = rd.form_num(r, r);
  IntVec out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    Int num = 8 * r[i];
    if (num % norm != 0)
      throw std::logic_error("coroot is not integral in stored coordinates");
    out[i] = num / norm;
  }
  return out;
}

}  // namespace

IntVec affine_translation(const RootDatum& rd) {
  std::vector<IntVec> candidates = all_roots(rd);
  if (rd.basis == AmbientBasis::scaled_orthonormal)
    for (IntVec& r : candidates) r = coroot_of(rd, r);

  Int best_norm = 0;
  for (const IntVec& v : candidates) {
    Int norm = rd.form_num(v, v);
    if (best_norm == 0 || norm < best_norm) best_norm = norm;
  }
  std::vector<IntVec> dominant;
  for (const IntVec& v : candidates) {
    if (rd.form_num(v, v) != best_norm) continue;
    bool ok = true;
    for (const IntVec& alpha : rd.simple_roots)
      if (rd.form_num(v, alpha) < 0) {
        ok = false;
        break;
      }
    if (ok) dominant.push_back(v);
  }
  if (dominant.size() != 1)
    throw std::logic_error("expected a unique dominant translation vector");
  return dominant.front();
}

IntegerMatrix reflection_matrix(const RootDatum& rd, const IntVec& v) {
  std::size_t n = v.size();
  Int norm = rd.form_num(v, v);
  if (norm == 0) throw std::invalid_argument("reflection in a null vector");
  IntegerMatrix m = IntegerMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVec e(n, Int(0));
    e[j] = 1;
    Int num = 2 * rd.form_num(e, v);
    for (std::size_t i = 0; i < n; ++i) {
      Int t = num * v[i];
      if (t % norm != 0)
        throw std::invalid_argument("reflection is not integral");
      m.at(i, j) -= t / norm;
    }
  }
  return m;
}

}  // namespace alcove
