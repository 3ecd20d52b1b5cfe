#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>

#include "alcove/crystal_group.hpp"
#include "alcove/engine.hpp"
#include "alcove/quotients.hpp"
#include "alcove/root_datum.hpp"
#include "alcove/serialize.hpp"

using namespace alcove;

namespace {

GroupInput model_input(SeriesKind k, std::size_t rank, std::string name) {
  auto m = build_affine_coxeter(k, rank);
  return GroupInput{std::move(m.group), std::move(m.graph), std::move(name)};
}

const QuotientTest& test_for(const Fingerprint& f, const std::string& prefix) {
  for (const auto& t : f.quotient_tests.tests)
    if (t.target.rfind(prefix, 0) == 0) return t;
  REQUIRE(false);
  return f.quotient_tests.tests.front();
}

/// Graph that is the disjoint union of affine diagrams, vertex names made
/// unique per factor.
CoxeterGraph product_graph(std::vector<std::pair<SeriesKind, std::size_t>> parts) {
  std::vector<std::string> names;
  std::vector<CoxeterGraph> pieces;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    auto g = affine_graph(parts[p].first, parts[p].second);
    for (const auto& v : g.vertices())
      names.push_back("f" + std::to_string(p) + "." + v);
    pieces.push_back(std::move(g));
  }
  CoxeterGraph out(names);
  std::size_t base = 0;
  for (const auto& piece : pieces) {
    for (const auto& [e, m] : piece.edges())
      out.add_edge(names[base + e.first], names[base + e.second], m);
    base += piece.size();
  }
  return out;
}

}  // namespace

TEST_CASE("fingerprint of the rank three affine pair") {
  auto fb = fingerprint(model_input(SeriesKind::B, 3, "B~3"));
  CHECK(fb.dimension == 3);
  CHECK(fb.abelianization == AbelianInvariants::elementary(2, 2));
  CHECK(fb.centre_rank == 0);
  CHECK(!fb.torsion_free);
  CHECK(fb.symmorphic);
  CHECK(fb.just_infinite);
  CHECK(fb.point_group_order == 48);
  CHECK(!fb.point_character_data.empty());
  CHECK(fb.cf_summary.computed);
  CHECK(fb.cf_summary.classes.size() == 69);
  REQUIRE(fb.quotient_tests.attempted);
  REQUIRE(fb.quotient_tests.tests.size() == 3);
  CHECK(test_for(fb, "(L1").outcome == TestOutcome::exists);
  CHECK(test_for(fb, "(L2").outcome == TestOutcome::none);
  CHECK(test_for(fb, "(L3").outcome == TestOutcome::none);

  auto fc = fingerprint(model_input(SeriesKind::C, 3, "C~3"));
  CHECK(fc.abelianization == AbelianInvariants::elementary(2, 3));
  CHECK(fc.point_group_order == 48);
  CHECK(fc.cf_summary.computed);
  CHECK(fc.cf_summary.classes.size() == 92);
  REQUIRE(fc.quotient_tests.attempted);
  CHECK(test_for(fc, "(L1").outcome == TestOutcome::exists);
  CHECK(test_for(fc, "(L2").outcome == TestOutcome::exists);
  CHECK(test_for(fc, "(L3").outcome == TestOutcome::none);
  CHECK(!(fb == fc));
}

TEST_CASE("fingerprint of the free abelian group") {
  auto g = CrystalGroup::semidirect(3, {});
  auto f = fingerprint(g);
  CHECK(f.dimension == 3);
  CHECK(f.abelianization == AbelianInvariants::free_abelian(3));
  CHECK(f.centre_rank == 3);
  CHECK(f.torsion_free);
  CHECK(f.symmorphic);
  CHECK(!f.just_infinite);
  CHECK(f.point_group_order == 1);
  CHECK(f.cf_summary.computed);
  CHECK(f.cf_summary.classes.size() == 1);
  CHECK(!f.quotient_tests.attempted);
}

TEST_CASE("fingerprint is stable under a change of basis") {
  auto in = model_input(SeriesKind::B, 3, "B~3");
  auto u = IntegerMatrix::from_rows({{1, 2, 0}, {0, 1, 3}, {0, 0, 1}});
  // conjugated copies keep their graph: the presentation the battery uses
  // is coordinate free
  GroupInput moved{conjugate_group(in.group, u), in.graph, "B~3 moved"};
  CHECK(fingerprint(in) == fingerprint(moved));

  auto d = distinguish(in, moved);
  CHECK(!d.distinguished);
}

TEST_CASE("distinguish separates the affine pair at the abelianization") {
  auto b = model_input(SeriesKind::B, 3, "B~3");
  auto c = model_input(SeriesKind::C, 3, "C~3");
  auto d = distinguish(b, c);
  REQUIRE(d.distinguished);
  CHECK(d.field == "abelianization");
  CHECK(d.left_value == "Z_2 x Z_2");
  CHECK(d.right_value == "Z_2 x Z_2 x Z_2");
  CHECK(d.transcript.size() == 4);  // stops at the first difference
  for (std::size_t i = 0; i + 1 < d.transcript.size(); ++i)
    CHECK(d.transcript[i].equal);

  auto flipped = distinguish(c, b);
  REQUIRE(flipped.distinguished);
  CHECK(flipped.field == d.field);
  CHECK(flipped.left_value == d.right_value);
  CHECK(flipped.right_value == d.left_value);
}

TEST_CASE("distinguish separates rank two types at the point group order") {
  auto d = distinguish(model_input(SeriesKind::A, 2, "A~2"),
                       model_input(SeriesKind::G2, 2, "G~2"));
  REQUIRE(d.distinguished);
  CHECK(d.field == "point_group_order");
  CHECK(d.left_value == "6");
  CHECK(d.right_value == "12");
  CHECK(d.transcript.size() == 2);
}

TEST_CASE("distinguish reports a self pair as indistinguishable") {
  auto a = model_input(SeriesKind::C, 3, "C~3");
  auto d = distinguish(a, a);
  CHECK(!d.distinguished);
  CHECK(d.transcript.size() >= 9);
  for (const auto& f : d.transcript)
    CHECK((f.equal || !f.conclusive));
}

TEST_CASE("the subgroup poset separates the affine group from the chain group") {
  // W(C~3) and L3 x| W share dimension, point class, abelianization, centre,
  // torsion elements and symmorphism; the subgroup-class poset splits them
  // before any quotient search has to
  auto c = model_input(SeriesKind::C, 3, "C~3");
  auto rd = build_root_datum(SeriesKind::B, 3);
  auto chain = bc_chain(3);
  GroupInput l3w{lattice_semidirect(rd, chain.lattices[2]), std::nullopt, "L3xW"};

  auto d = distinguish(c, l3w);
  REQUIRE(d.distinguished);
  CHECK(d.field == "cf_poset");
  CHECK(d.left_value.find("92 classes") == 0);
  CHECK(d.right_value.find("58 classes") == 0);

  // the quotient battery separates them too: the third chain target is a
  // quotient of L3 x| W but not of W(C~3)
  auto targets = bc_battery_targets(3);
  REQUIRE(targets.size() == 3);
  CHECK(targets[2].second.order() == 192);
  auto fc = fingerprint(c);
  CHECK(test_for(fc, "(L3").outcome == TestOutcome::none);
  auto hom = epimorphism_exists(l3w.group.presentation(), targets[2].second);
  REQUIRE(hom.has_value());
  CHECK(is_epimorphism(l3w.group.presentation(), targets[2].second, *hom));
}

TEST_CASE("battery targets and the chain quotient sizes") {
  auto t3 = bc_battery_targets(3);
  CHECK(t3[0].second.order() == 48);
  CHECK(t3[1].second.order() == 96);
  CHECK(t3[2].second.order() == 192);
  CHECK(t3[0].second.abelianization() == AbelianInvariants::elementary(2, 2));
  CHECK(t3[1].second.abelianization() == AbelianInvariants::elementary(2, 3));
  CHECK(t3[2].second.abelianization() == AbelianInvariants::elementary(2, 3));
  auto t4 = bc_battery_targets(4);
  CHECK(t4[2].second.order() == 1536);
  CHECK_THROWS_AS(bc_battery_targets(1), std::invalid_argument);
  // rank 5 targets are past the table cap
  CHECK_THROWS_AS(bc_battery_targets(5), BudgetExceeded);
}

TEST_CASE("hyperoctahedral class detection") {
  CHECK(in_bc_qclass(build_affine_coxeter(SeriesKind::B, 3).group));
  CHECK(in_bc_qclass(build_affine_coxeter(SeriesKind::C, 3).group));
  CHECK(in_bc_qclass(build_affine_coxeter(SeriesKind::C, 2).group));
  CHECK(!in_bc_qclass(build_affine_coxeter(SeriesKind::A, 3).group));
  CHECK(!in_bc_qclass(build_affine_coxeter(SeriesKind::G2, 2).group));
  CHECK(!in_bc_qclass(CrystalGroup::semidirect(3, {})));
}

TEST_CASE("feit scan rows match the presentation based abelianization") {
  for (auto [kind, rank] : {std::pair{SeriesKind::A, std::size_t(2)},
                            {SeriesKind::A, 3},
                            {SeriesKind::D, 4}}) {
    auto rd = build_root_datum(kind, rank);
    auto scan = feit_scan(kind, rank);
    auto lattices = intermediate_invariant_lattices(rd);
    REQUIRE(scan.rows.size() == lattices.size());
    for (std::size_t i = 0; i < lattices.size(); ++i) {
      auto direct = lattice_semidirect(rd, lattices[i]).abelianize();
      CAPTURE(i);
      CHECK(scan.rows[i].abelianization == direct);
    }
  }
}

TEST_CASE("feit scan shapes across the simply laced range") {
  for (auto [kind, rank, rows] : {std::tuple{SeriesKind::A, std::size_t(2), std::size_t(2)},
                                  {SeriesKind::A, 3, 3},
                                  {SeriesKind::A, 4, 2},
                                  {SeriesKind::A, 5, 4},
                                  {SeriesKind::A, 6, 2},
                                  {SeriesKind::D, 4, 5},
                                  {SeriesKind::D, 5, 3},
                                  {SeriesKind::D, 6, 5},
                                  {SeriesKind::E6, 6, 2},
                                  {SeriesKind::E7, 7, 2},
                                  {SeriesKind::E8, 8, 1}}) {
    auto scan = feit_scan(kind, rank);
    CAPTURE(rank);
    CHECK(scan.rows.size() == rows);
    // the scan itself enforces the law; spot check the shape here
    CHECK(scan.rows.front().label == "Q");
    CHECK(scan.rows.front().is_root_lattice);
    CHECK(scan.rows.front().abelianization == AbelianInvariants::elementary(2, 1));
    for (std::size_t i = 1; i < scan.rows.size(); ++i) {
      CHECK(!scan.rows[i].is_root_lattice);
      CHECK(scan.rows[i].abelianization != AbelianInvariants::elementary(2, 1));
    }
  }
  CHECK_THROWS_AS(feit_scan(SeriesKind::A, 1), std::invalid_argument);
  CHECK_THROWS_AS(feit_scan(SeriesKind::D, 3), std::invalid_argument);
  CHECK_THROWS_AS(feit_scan(SeriesKind::E6, 7), std::invalid_argument);
  CHECK_THROWS_AS(feit_scan(SeriesKind::B, 3), std::invalid_argument);
}

TEST_CASE("chain report at rank three proves every claim") {
  auto rep = bc_case_report(3);
  CHECK(rep.rank == 3);
  CHECK(rep.claims.size() == 10);
  CHECK(rep.failed == 0);
  CHECK(rep.inconclusive == 0);
  for (const auto& c : rep.claims) {
    CAPTURE(c.claim);
    CHECK(c.status == ClaimStatus::pass);
  }
  bool saw_z4 = false;
  for (const auto& c : rep.claims)
    if (c.claim == "L3/L1 is Z_4") {
      saw_z4 = true;
      CHECK(c.witness == "Z_4");
    }
  CHECK(saw_z4);
}

TEST_CASE("chain report handles the degenerate and gated ranks") {
  auto rep2 = bc_case_report(2);
  CHECK(rep2.failed == 0);
  CHECK(rep2.inconclusive == 0);
  bool saw_degenerate = false;
  for (const auto& c : rep2.claims)
    saw_degenerate = saw_degenerate || c.claim.find("degenerate") != std::string::npos;
  CHECK(saw_degenerate);

  // tiny search budget: structural claims still pass, searches go
  // inconclusive rather than failing
  auto rep4 = bc_case_report(4, 1u << 14);
  CHECK(rep4.failed == 0);
  for (const auto& c : rep4.claims) {
    CAPTURE(c.claim);
    if (c.claim.find("no quotient map") != std::string::npos)
      CHECK(c.status == ClaimStatus::inconclusive);
    else
      CHECK(c.status == ClaimStatus::pass);
  }

  auto rep5 = bc_case_report(5);
  CHECK(rep5.failed == 0);
  CHECK(rep5.inconclusive == 1);  // searches skipped above the gate

  CHECK_THROWS_AS(bc_case_report(1), std::invalid_argument);
  CHECK_THROWS_AS(bc_case_report(7), std::invalid_argument);
}

TEST_CASE("product decomposition and factor matching") {
  auto a = decompose_product(product_graph({{SeriesKind::A, 2}, {SeriesKind::G2, 2}}));
  REQUIRE(a.factors.size() == 2);
  CHECK(a.factors[0].type.to_string() == "A~2");
  CHECK(a.factors[1].type.to_string() == "G~2");
  CHECK(a.factors[0].group.dim() == 2);

  auto b = decompose_product(product_graph({{SeriesKind::G2, 2}, {SeriesKind::A, 2}}));
  auto sigma = match_factors(a, b);
  REQUIRE(sigma.has_value());
  CHECK(*sigma == std::vector<std::size_t>{1, 0});

  // equal factors pair up greedily by lowest index
  auto twice = decompose_product(product_graph({{SeriesKind::A, 2}, {SeriesKind::A, 2}}));
  auto identity = match_factors(twice, twice);
  REQUIRE(identity.has_value());
  CHECK(*identity == std::vector<std::size_t>{0, 1});

  CHECK(!match_factors(a, twice).has_value());

  auto one = decompose_product(product_graph({{SeriesKind::A, 2}}));
  CHECK(!match_factors(a, one).has_value());

  CHECK_THROWS_AS(decompose_product(finite_graph(SeriesKind::B, 3)),
                  std::invalid_argument);
}

TEST_CASE("group documents round trip") {
  auto model = build_affine_coxeter(SeriesKind::C, 2);
  auto text = group_to_json(model.group, model.graph);
  auto back = group_from_json(text);
  CHECK(back.group == model.group);
  REQUIRE(back.graph.has_value());
  CHECK(graph_to_json(*back.graph) == graph_to_json(model.graph));

  // graph documents realize the product of their components
  auto from_graph = group_input_from_text(graph_to_json(model.graph), "C~2");
  CHECK(from_graph.group == model.group);
  CHECK(from_graph.name == "C~2");

  auto two = group_input_from_text(
      graph_to_json(product_graph({{SeriesKind::A, 2}, {SeriesKind::C, 2}})), "x");
  CHECK(two.group.dim() == 4);
  REQUIRE(two.graph.has_value());

  // manual group without provenance
  auto p2 = CrystalGroup::semidirect(
      2, {IntegerMatrix::from_rows({{-1, 0}, {0, -1}})});
  auto back2 = group_from_json(group_to_json(p2));
  CHECK(back2.group == p2);
  CHECK(!back2.graph.has_value());
}

TEST_CASE("group documents reject malformed input") {
  CHECK_THROWS_AS(group_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(group_from_json(R"({"rank":0,"point_generators":[]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(group_from_json(R"({"point_generators":[]})"),
                  std::invalid_argument);
  // non-unimodular basis: the group would not be in lattice coordinates
  CHECK_THROWS_AS(group_from_json(R"({"rank":2,
    "lattice_basis":[["2","0"],["0","1"]],"point_generators":[]})"),
                  std::invalid_argument);
  // vector system length mismatch
  CHECK_THROWS_AS(group_from_json(R"({"rank":2,
    "point_generators":[[["-1","0"],["0","-1"]]],"vector_system":[]})"),
                  std::invalid_argument);
  // fractional translation with a trivial point part: the closure is finer
  // than the lattice
  CHECK_THROWS_AS(group_from_json(R"({"rank":2,
    "point_generators":[[["1","0"],["0","1"]]],
    "vector_system":[["1/2","0"]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(group_input_from_text(R"({"what":1})", "x"),
                  std::invalid_argument);
}

TEST_CASE("a conjugated document still carries its graph") {
  // writing a moved copy keeps provenance, so a reader gets the same
  // battery-capable input back
  auto in = model_input(SeriesKind::B, 3, "B~3");
  auto u = IntegerMatrix::from_rows({{1, 0, 5}, {0, 1, 0}, {0, 0, 1}});
  GroupInput moved{conjugate_group(in.group, u), in.graph, "moved"};
  auto back = group_from_json(group_to_json(moved.group, moved.graph));
  CHECK(back.group == moved.group);
  REQUIRE(back.graph.has_value());
  CHECK(fingerprint(back) == fingerprint(in));
}

TEST_CASE("report serializers emit the documented shapes") {
  auto d = distinguish(model_input(SeriesKind::B, 3, "B~3"),
                       model_input(SeriesKind::C, 3, "C~3"));
  auto dj = distinguish_report_to_json(d);
  CHECK(dj.find("\"inputs\":[\"B~3\",\"C~3\"]") != std::string::npos);
  CHECK(dj.find("\"kind\":\"distinguished\"") != std::string::npos);
  CHECK(dj.find("\"field\":\"abelianization\"") != std::string::npos);

  auto self = distinguish(model_input(SeriesKind::A, 2, "A~2"),
                          model_input(SeriesKind::A, 2, "A~2"));
  CHECK(distinguish_report_to_json(self).find(
            "\"kind\":\"indistinguishable_at_budget\"") != std::string::npos);

  auto fj = fingerprint_to_json(fingerprint(model_input(SeriesKind::C, 2, "C~2")));
  const char* keys[] = {"\"dimension\"",  "\"abelianization\"",
                        "\"centre_rank\"", "\"torsion_free\"",
                        "\"symmorphic\"",  "\"just_infinite\"",
                        "\"point_group_order\"", "\"point_character_data\"",
                        "\"cf_summary\"",  "\"quotient_tests\""};
  std::size_t prev = 0;
  for (const char* k : keys) {
    auto pos = fj.find(k);
    CAPTURE(k);
    REQUIRE(pos != std::string::npos);
    CHECK(pos >= prev);
    prev = pos;
  }

  auto sj = feit_scan_to_json(feit_scan(SeriesKind::E8, 8));
  CHECK(sj.find("\"kind\":\"E8\"") != std::string::npos);
  CHECK(sj.find("\"lattice\":\"Q\"") != std::string::npos);
  auto st = feit_scan_to_text(feit_scan(SeriesKind::A, 2));
  CHECK(st.find("lattice") != std::string::npos);
  CHECK(st.find("Q") != std::string::npos);

  CHECK(matching_to_json(std::nullopt).find("\"matching\":null") !=
        std::string::npos);
  std::vector<std::size_t> sigma{1, 0};
  CHECK(matching_to_json(sigma).find("\"matching\":[1,0]") != std::string::npos);

  auto cj = classification_to_json({affine_graph(SeriesKind::A, 2)});
  CHECK(cj.find("\"type\":\"A~2\"") != std::string::npos);
  CHECK(cj.find("\"all_affine\":true") != std::string::npos);
}
