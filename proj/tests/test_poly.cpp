#include <doctest.h>

#include <random>

#include "selfsim/poly.hpp"

using selfsim::Real;
using namespace selfsim::poly;

namespace {

LaurentPoly z() { return LaurentPoly::variable("z"); }
LaurentPoly one() { return LaurentPoly::constant(1); }

LaurentPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> exp(-3, 4), coef(-5, 5), count(0, 6);
  std::vector<std::pair<Exponents, mpz_class>> terms;
  int k = count(rng);
  for (int i = 0; i < k; ++i) {
    Exponents e;
    for (std::size_t j = 0; j < vars.size(); ++j) e.push_back(exp(rng));
    terms.emplace_back(e, coef(rng));
  }
  return LaurentPoly::from_terms(vars, terms);
}

}  // namespace

TEST_CASE("poly: univariate expansions") {
  auto p = (one() + z()).pow(3);
  CHECK(p.to_string() == "1 + 3*z + 3*z^2 + z^3");
  auto q = (z() + z().pow(-1)).pow(3);
  CHECK(q.coefficient({{"z", -3}}) == 1);
  CHECK(q.coefficient({{"z", -1}}) == 3);
  CHECK(q.coefficient({{"z", 1}}) == 3);
  CHECK(q.coefficient({{"z", 3}}) == 1);
  CHECK(q.size() == 4);
}

TEST_CASE("poly: hanoi level-2 closed form expands to the known coefficients") {
  auto g = (z() + 1).pow(3) * (2 * z().pow(2) - z() + 1) *
           (z().pow(4) - z().pow(3) + 2 * z().pow(2) - 2 * z() + 1);
  auto expected = LaurentPoly::from_dense("z", 0, {1, 0, 0, 3, 0, 0, 4, 3, 3, 2});
  CHECK(g == expected);
  CHECK(g.sum_of_coefficients() == 16);
}

TEST_CASE("poly: ring axioms on random multivariate polynomials") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::string> va{"a", "z"}, vb{"b", "z"}, vc{"a", "b"};
    auto p = random_poly(rng, va), q = random_poly(rng, vb), r = random_poly(rng, vc);
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + (-p) == LaurentPoly());
    CHECK(p * one() == p);
  }
}

TEST_CASE("poly: substitution is a homomorphism and identity is a no-op") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_poly(rng, {"a", "b"});
    auto q = random_poly(rng, {"a", "z"});
    std::map<std::string, LaurentPoly> id{{"a", LaurentPoly::variable("a")}};
    CHECK(substitute(p, id) == p);
    std::map<std::string, LaurentPoly> s{{"a", LaurentPoly::variable("z", 2)}, {"b", -z()}};
    CHECK(substitute(p * q, s) == substitute(p, s) * substitute(q, s));
    CHECK(substitute(p + q, s) == substitute(p, s) + substitute(q, s));
  }
  auto p = LaurentPoly::variable("a") * LaurentPoly::variable("b") + 1;
  CHECK(substitute(p, {{"a", z()}, {"b", z()}}) == z().pow(2) + 1);
  CHECK(substitute(p, {{"a", one()}}) == LaurentPoly::variable("b") + 1);
}

TEST_CASE("poly: exact and high-precision evaluation") {
  auto g = one() + z().pow(3);
  CHECK(evaluate(g, {{"z", mpq_class(1, 2)}}) == mpq_class(9, 8));
  Real t = boost::multiprecision::tanh(Real(1));
  Real v = evaluate_real(g, {{"z", t}});
  CHECK(boost::multiprecision::abs(v - (1 + t * t * t)) < Real("1e-70"));
  CHECK(selfsim::to_sci(v, 5) == "1.44174e+00");
  CHECK_THROWS_AS(evaluate(z().pow(-1), {{"z", mpq_class(0)}}), selfsim::PoleError);
  CHECK_THROWS_AS(evaluate(g, {}), selfsim::UnsupportedOperation);
}

TEST_CASE("poly: negative powers only for unit monomials") {
  CHECK(z().pow(-2) * z().pow(2) == one());
  CHECK((-z()).pow(-1) == -z().pow(-1));
  CHECK_THROWS_AS((one() + z()).pow(-1), selfsim::UnsupportedOperation);
  CHECK_THROWS_AS((2 * z()).pow(-1), selfsim::UnsupportedOperation);
  CHECK(z().pow(0) == one());
}

TEST_CASE("poly: cumulants of (1+z^2)^7") {
  auto p = (one() + z().pow(2)).pow(7);
  auto c = log_derivative_stats(p, "z");
  CHECK(c.mean == 7);
  CHECK(c.variance == 7);
  CHECK(c.kappa3 == 0);
  // Sum of 7 Bernoulli(1/2) scaled by 2: kappa4 = 7 * 16 * (-1/8).
  CHECK(c.kappa4 == -14);
  CHECK(c.excess_kurtosis() == mpq_class(-2, 7));
}

TEST_CASE("poly: cumulants of an absent variable vanish") {
  auto p = one() + z();
  auto c = log_derivative_stats(p, "b");
  CHECK(c.mean == 0);
  CHECK(c.variance == 0);
  CHECK_THROWS_AS(c.excess_kurtosis(), selfsim::StatisticsUndefined);
}

TEST_CASE("poly: cumulants reject mixed signs") {
  auto p = one() - z() + z().pow(2);
  CHECK_THROWS_AS(log_derivative_stats(p, "z"), selfsim::StatisticsUndefined);
}

TEST_CASE("poly: json round trip in canonical order") {
  auto a = LaurentPoly::variable("a"), b = LaurentPoly::variable("b");
  auto p = (a + b).pow(2) + a.pow(-1);
  auto j = to_json(p);
  CHECK(j["vars"] == nlohmann::json({"a", "b"}));
  CHECK(j["terms"][0]["exps"] == nlohmann::json({-1, 0}));
  CHECK(j["terms"][1]["exps"] == nlohmann::json({2, 0}));
  CHECK(j["terms"][2]["exps"] == nlohmann::json({1, 1}));
  CHECK(j["terms"][2]["coef"] == "2");
  CHECK(from_json(j) == p);
  CHECK(to_json(from_json(j)).dump() == j.dump());
}

TEST_CASE("poly: divide_exact and invert_variable") {
  auto p = 4 * z() + 6;
  CHECK(p.divide_exact(2) == 2 * z() + 3);
  CHECK_THROWS_AS(p.divide_exact(4), selfsim::InternalInconsistency);
  CHECK(invert_variable(one() + z().pow(3), "z") == one() + z().pow(-3));
}

TEST_CASE("poly: rational printing") {
  CHECK(mpq_to_string(mpq_class(3, 6)) == "1/2");
  CHECK(mpq_to_string(mpq_class(4, 2)) == "2");
}
