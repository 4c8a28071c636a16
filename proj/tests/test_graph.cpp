#include <doctest.h>

#include <algorithm>
#include <set>

#include "selfsim/graph.hpp"

using namespace selfsim::graph;

namespace {

std::set<std::pair<std::string, std::string>> edge_set(const LabeledMultigraph& g, const std::string& label) {
  std::set<std::pair<std::string, std::string>> s;
  for (const auto& e : g.edges)
    if (e.label == label && e.kind != EdgeKind::Loop) s.insert({g.vertices[e.u].id, g.vertices[e.v].id});
  return s;
}

}  // namespace

TEST_CASE("graph: generator action on words") {
  const auto& gr = grigorchuk_table();
  CHECK(gr.apply("b", Word::parse(2, "10")).to_string() == "10");
  CHECK(gr.apply("b", Word::parse(2, "00")).to_string() == "01");
  CHECK(gr.apply("a", Word::parse(2, "0110")).to_string() == "1110");
  const auto& h = hanoi_table();
  CHECK(h.apply("a", Word::parse(3, "22")).to_string() == "22");
  CHECK(h.apply("a", Word::parse(3, "20")).to_string() == "21");
  CHECK(h.apply("c", Word::parse(3, "00")).to_string() == "00");
  CHECK_THROWS_AS(h.apply("e", Word::parse(3, "0")), selfsim::ConstructionError);
  CHECK_THROWS_AS(Word::parse(2, "012"), selfsim::ConstructionError);
}

TEST_CASE("graph: generators act bijectively on every level") {
  for (auto f : {Family::Grigorchuk, Family::Basilica, Family::Hanoi}) {
    const auto& t = table_for(f);
    for (int n = 1; n <= 7; ++n)
      for (std::size_t s = 0; s < t.generators().size(); ++s) {
        auto p = t.permutation(s, n);
        std::sort(p.begin(), p.end());
        bool bijective = true;
        for (std::size_t i = 0; i < p.size(); ++i) bijective = bijective && p[i] == i;
        CHECK(bijective);
      }
  }
}

TEST_CASE("graph: involutions are decided on the whole tree") {
  const auto& gr = grigorchuk_table();
  for (std::size_t s = 0; s < 4; ++s) CHECK(gr.is_involution(s));
  const auto& h = hanoi_table();
  for (std::size_t s = 0; s < 3; ++s) CHECK(h.is_involution(s));
  const auto& b = basilica_table();
  CHECK_FALSE(b.is_involution(0));
  CHECK_FALSE(b.is_involution(1));
}

TEST_CASE("graph: malformed tables are rejected") {
  CHECK_THROWS_AS(GroupTable(Family::Basilica, 2, {{"a", {0, 0}, {"id", "id"}}}), selfsim::ConstructionError);
  CHECK_THROWS_AS(GroupTable(Family::Basilica, 2, {{"a", {1, 0}, {"x", "id"}}}), selfsim::ConstructionError);
}

TEST_CASE("graph: grigorchuk level 2") {
  auto g = build_schreier(Family::Grigorchuk, 2);
  CHECK(g.vertex_count() == 4);
  CHECK(g.loopless_edge_count() == 4);
  CHECK(edge_set(g, "a") == std::set<std::pair<std::string, std::string>>{{"00", "10"}, {"01", "11"}});
  CHECK(edge_set(g, "b") == std::set<std::pair<std::string, std::string>>{{"00", "01"}});
  CHECK(edge_set(g, "c") == std::set<std::pair<std::string, std::string>>{{"00", "01"}});
  CHECK(edge_set(g, "d").empty());
}

TEST_CASE("graph: hanoi level 1 is a triangle with three loops") {
  auto g = build_schreier(Family::Hanoi, 1);
  CHECK(g.vertex_count() == 3);
  CHECK(g.loopless_edge_count() == 3);
  CHECK(g.loop_count() == 3);
  CHECK(g.loopless_label_counts() == std::map<std::string, std::size_t>{{"a", 1}, {"b", 1}, {"c", 1}});
}

TEST_CASE("graph: hanoi loops sit at the constant words") {
  for (int n = 1; n <= 6; ++n) {
    auto g = build_schreier(Family::Hanoi, n);
    std::map<std::string, std::string> loops;
    for (const auto& e : g.edges)
      if (e.kind == EdgeKind::Loop) loops[g.vertices[e.u].id] = e.label;
    CHECK(loops.size() == 3);
    CHECK(loops[std::string(static_cast<std::size_t>(n), '0')] == "c");
    CHECK(loops[std::string(static_cast<std::size_t>(n), '1')] == "b");
    CHECK(loops[std::string(static_cast<std::size_t>(n), '2')] == "a");
  }
}

TEST_CASE("graph: basilica double edges") {
  auto g1 = build_schreier(Family::Basilica, 1);
  CHECK(g1.loopless_edge_count() == 2);
  CHECK(edge_set(g1, "b").size() == 2);
  auto g3 = build_schreier(Family::Basilica, 3);
  CHECK(g3.vertex_count() == 8);
  CHECK(g3.loopless_edge_count() == 12);
  CHECK(cycle_space_rank(g3).rank == 5);
}

TEST_CASE("graph: vertex and edge counts follow the formulas and graphs are connected") {
  for (auto f : {Family::Grigorchuk, Family::Basilica, Family::Hanoi}) {
    int top = f == Family::Hanoi ? 6 : 10;
    for (int n = 1; n <= top; ++n) {
      auto g = build_schreier(f, n);
      CHECK(g.vertex_count() == formula_vertex_count(f, n));
      CHECK(g.loopless_edge_count() == formula_edge_count(f, n));
      CHECK(cycle_space_rank(g).connected());
    }
  }
  for (int n = 1; n <= 6; ++n) {
    auto s = contract_to_sierpinski(build_schreier(Family::Hanoi, n));
    CHECK(s.vertex_count() == formula_vertex_count(Family::Sierpinski, n));
    CHECK(s.loopless_edge_count() == formula_edge_count(Family::Sierpinski, n));
    CHECK(cycle_space_rank(s).connected());
  }
}

TEST_CASE("graph: cycle space ranks") {
  CHECK(cycle_space_rank(build_schreier(Family::Hanoi, 2)).rank == 4);
  CHECK(cycle_space_rank(build_schreier(Family::Grigorchuk, 4)).rank == 7);
  CHECK(cycle_space_rank(build_schreier(Family::Grigorchuk, 1)).rank == 0);
}

TEST_CASE("graph: cycle census") {
  auto c = cycle_census(build_schreier(Family::Basilica, 4));
  CHECK(c.cycles["a"] == std::map<std::size_t, std::uint64_t>{{2, 2}, {4, 1}});
  CHECK(c.cycles["b"] == std::map<std::size_t, std::uint64_t>{{2, 4}, {4, 2}});
  for (auto f : {Family::Grigorchuk, Family::Basilica, Family::Hanoi})
    for (int n = 1; n <= 6; ++n) {
      auto g = build_schreier(f, n);
      auto cc = cycle_census(g);
      for (const auto& gen : table_for(f).generators()) {
        std::uint64_t covered = cc.loops[gen.name];
        for (const auto& [len, cnt] : cc.cycles[gen.name]) covered += len * cnt;
        CHECK(covered == g.vertex_count());
      }
    }
  auto gc = cycle_census(build_schreier(Family::Grigorchuk, 4));
  // Level 4: (X, Y, W) = (4, 2, 1) from the closed forms.
  CHECK(gc.parallel_pairs[{"b", "c"}] == 4);
  CHECK(gc.parallel_pairs[{"b", "d"}] == 2);
  CHECK(gc.parallel_pairs[{"c", "d"}] == 1);
  CHECK_THROWS_AS(cycle_census(contract_to_sierpinski(build_schreier(Family::Hanoi, 2))), selfsim::FamilyMismatch);
}

TEST_CASE("graph: contraction to sierpinski") {
  auto s1 = contract_to_sierpinski(build_schreier(Family::Hanoi, 1));
  CHECK(s1.vertex_count() == 3);
  CHECK(s1.loopless_edge_count() == 3);
  auto s2 = contract_to_sierpinski(build_schreier(Family::Hanoi, 2));
  CHECK(s2.vertex_count() == 6);
  CHECK(s2.loopless_edge_count() == 9);
  auto s3 = contract_to_sierpinski(build_schreier(Family::Hanoi, 3));
  CHECK(s3.vertex_count() == 15);
  CHECK(s3.loopless_edge_count() == 27);
  auto deg = s3.loopless_degrees();
  std::size_t twos = 0;
  for (auto d : deg) {
    CHECK((d == 2 || d == 4));
    twos += d == 2;
  }
  CHECK(twos == 3);
  auto c = corners(s3);
  CHECK(s3.vertices[c.l].id == "000");
  CHECK(s3.vertices[c.u].id == "111");
  CHECK(s3.vertices[c.r].id == "222");
  CHECK(deg[c.l] == 2);
  CHECK_THROWS_AS(contract_to_sierpinski(build_schreier(Family::Basilica, 2)), selfsim::FamilyMismatch);
}

TEST_CASE("graph: rotation-invariant fixtures") {
  auto f2 = rotation_invariant_fixture(2);
  CHECK(f2.vertex_count() == 6);
  CHECK(f2.loopless_edge_count() == 9);
  auto f3 = rotation_invariant_fixture(3);
  CHECK(f3.vertex_count() == 15);
  CHECK(f3.loopless_edge_count() == 27);
  CHECK(f3.loopless_label_counts() == std::map<std::string, std::size_t>{{"a", 9}, {"b", 9}, {"c", 9}});
  auto deg = f3.loopless_degrees();
  auto c = corners(f3);
  CHECK(deg[c.l] == 2);
  CHECK(deg[c.r] == 2);
  CHECK(deg[c.u] == 2);
  CHECK_THROWS_AS(rotation_invariant_fixture(4), selfsim::UnsupportedLevel);
  // Same underlying graph as the contracted Schreier graph.
  CHECK(isomorphic(f2, without_loops(contract_to_sierpinski(build_schreier(Family::Hanoi, 2)))));
  CHECK(isomorphic(f3, without_loops(contract_to_sierpinski(build_schreier(Family::Hanoi, 3)))));
  CHECK_FALSE(isomorphic(f3, build_schreier(Family::Hanoi, 2)));
}

TEST_CASE("graph: json and dot export") {
  auto g = build_schreier(Family::Hanoi, 1);
  auto j = to_json(g);
  CHECK(j["family"] == "hanoi");
  CHECK(j["level"] == 1);
  CHECK(j["vertices"] == nlohmann::json({"0", "1", "2"}));
  CHECK(j["edges"].size() == 6);
  CHECK(j["edges"][0] == nlohmann::json({{"u", "0"}, {"v", "1"}, {"label", "a"}, {"kind", "normal"}}));
  CHECK(j["edges"][1]["kind"] == "loop");
  auto dot = to_dot(g);
  CHECK(std::count(dot.begin(), dot.end(), '\n') == 3 + 6 + 2);
  CHECK(dot.find("loop=true") != std::string::npos);
  auto dot2 = to_dot(g, true);
  CHECK(dot2.find("loop=true") == std::string::npos);
}

TEST_CASE("graph: invalid levels") {
  CHECK_THROWS_AS(build_schreier(Family::Hanoi, 0), selfsim::ConstructionError);
  CHECK_THROWS_AS(build_schreier(Family::Hanoi, 40), selfsim::UnsupportedLevel);
  CHECK_THROWS_AS(build_schreier(Family::Sierpinski, 2), selfsim::FamilyMismatch);
  CHECK_THROWS_AS(parse_family("tetris"), selfsim::FamilyMismatch);
}
