#include <doctest.h>

#include "selfsim/genfun.hpp"
#include "selfsim/oracle.hpp"

using namespace selfsim;
using graph::Family;
using poly::LaurentPoly;

namespace {

LaurentPoly z() { return LaurentPoly::variable("z"); }
LaurentPoly y() { return LaurentPoly::variable("y"); }

}  // namespace

TEST_CASE("oracle: hanoi level 2 polygons") {
  auto g = graph::build_schreier(Family::Hanoi, 2);
  auto p = oracle::enumerate_polygons(g, false);
  CHECK(p.sum_of_coefficients() == 16);
  CHECK(p == LaurentPoly::from_dense("z", 0, {1, 0, 0, 3, 0, 0, 4, 3, 3, 2}));
}

TEST_CASE("oracle: basilica level 1 double edge") {
  auto p = oracle::enumerate_polygons(graph::build_schreier(Family::Basilica, 1), false);
  CHECK(p == LaurentPoly::constant(1) + z().pow(2));
}

TEST_CASE("oracle: corner paths of the triangle") {
  auto g = graph::build_schreier(Family::Hanoi, 1);
  CHECK(oracle::enumerate_corner_paths(g, "lr", false) == z() + z().pow(2));
  auto a = LaurentPoly::variable("a"), b = LaurentPoly::variable("b"), c = LaurentPoly::variable("c");
  CHECK(oracle::enumerate_corner_paths(g, "lr", true) == a * c + b);
  CHECK_THROWS_AS(oracle::enumerate_corner_paths(g, "xy", false), UnsupportedVertex);
}

TEST_CASE("oracle: rank budget is enforced before work starts") {
  auto g = graph::build_schreier(Family::Hanoi, 4);  // rank 40
  try {
    oracle::enumerate_polygons(g, false);
    FAIL("expected budget refusal");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required == 40);
    CHECK(e.limit == 24);
  }
}

TEST_CASE("oracle: spin sums") {
  auto g2 = graph::build_schreier(Family::Grigorchuk, 2);
  auto expected = 2 * y().pow(4) + 4 * y().pow(2) + LaurentPoly::constant(4) + 4 * y().pow(-2) + 2 * y().pow(-4);
  CHECK(oracle::spin_sum_partition(g2, false) == expected);
  auto tri = graph::build_schreier(Family::Hanoi, 1);
  CHECK(oracle::spin_sum_partition(tri, false) == 2 * y().pow(3) + 6 * y().pow(-1));
  auto per = oracle::spin_sum_partition(tri, true);
  CHECK(per.vars() == std::vector<std::string>{"y_a", "y_b", "y_c"});
  CHECK(per.sum_of_coefficients() == 8);
  CHECK_THROWS_AS(oracle::spin_sum_partition(graph::build_schreier(Family::Hanoi, 3), false), BudgetExceeded);
}

TEST_CASE("oracle: perfect matchings") {
  graph::LabeledMultigraph square;
  for (const char* v : {"0", "1", "2", "3"}) square.vertices.push_back({v, std::nullopt});
  square.edges = {{0, 1, "x", graph::EdgeKind::E, -1},
                  {1, 2, "", graph::EdgeKind::Normal, -1},
                  {2, 3, "x", graph::EdgeKind::E, -1},
                  {3, 0, "", graph::EdgeKind::Normal, -1}};
  CHECK(oracle::enumerate_perfect_matchings(square) == LaurentPoly::constant(1) + z().pow(2));
  square.vertices.push_back({"4", std::nullopt});
  CHECK(oracle::enumerate_perfect_matchings(square).is_zero());
  auto big = graph::build_schreier(Family::Hanoi, 4);
  CHECK_THROWS_AS(oracle::enumerate_perfect_matchings(big), BudgetExceeded);
}
