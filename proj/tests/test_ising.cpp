#include <doctest.h>

#include "selfsim/errors.hpp"
#include "selfsim/ising.hpp"
#include "selfsim/oracle.hpp"

using namespace selfsim;
using namespace selfsim::ising;
using graph::Family;

namespace {

LaurentPoly y() { return LaurentPoly::variable("y"); }
LaurentPoly yi() { return LaurentPoly::variable("y", -1); }

Real rel(const Real& a, const Real& b) { return boost::multiprecision::abs(a - b) / boost::multiprecision::abs(b); }

mpz_class pow2(long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return r;
}

}  // namespace

TEST_CASE("ising: small partition functions") {
  CHECK(partition_polynomial(Family::Grigorchuk, 1, false) == 2 * y() + 2 * yi());
  CHECK(partition_polynomial(Family::Hanoi, 1, false) == 2 * y().pow(3) + 6 * yi());
  CHECK(partition_polynomial(Family::Sierpinski, 1, false) == 2 * y().pow(3) + 6 * yi());
}

TEST_CASE("ising: grigorchuk symbolic form") {
  // 2^V cosh^E (1 + tanh^2)^m = 2^(V - E + m) (y + 1/y)^(E - 2m) (y^2 + y^-2)^m
  for (int n = 1; n <= 6; ++n) {
    long V = 1L << n, E = 3 * (1L << (n - 1)) - 2, m = (1L << (n - 1)) - 1;
    auto expected = (y() + yi()).pow(E - 2 * m) * (y().pow(2) + yi().pow(2)).pow(m) * pow2(V - E + m);
    CHECK(partition_polynomial(Family::Grigorchuk, n, false) == expected);
  }
}

TEST_CASE("ising: high-temperature expansion equals the spin sum") {
  const std::vector<std::pair<Family, int>> cases{{Family::Grigorchuk, 4}, {Family::Basilica, 4},
                                                  {Family::Hanoi, 2}, {Family::Sierpinski, 2}};
  for (auto [f, top] : cases)
    for (int n = 1; n <= top; ++n) {
      auto g = graph::build_family_graph(f, n);
      CHECK(partition_polynomial(f, n, false) == oracle::spin_sum_partition(g, false));
      CHECK(partition_polynomial(f, n, true) == oracle::spin_sum_partition(g, true));
    }
}

TEST_CASE("ising: numeric partition function") {
  const Real beta = Real(7) / 10, j = Real(3) / 4;
  const Real yv = boost::multiprecision::exp(beta * j);
  for (auto f : {Family::Grigorchuk, Family::Basilica, Family::Hanoi, Family::Sierpinski}) {
    auto exact = poly::evaluate_real(partition_polynomial(f, 2, false), {{"y", yv}});
    CHECK(rel(partition_value(f, 2, IsingParams::uniform(beta, j)), exact) < Real("1e-60"));
  }
  IsingParams p;
  p.beta = beta;
  p.couplings = {{"a", Real(1)}, {"b", Real(2)}, {"c", Real(-1) / 2}};
  std::map<std::string, Real> at;
  for (auto& [l, jl] : p.couplings) at["y_" + l] = boost::multiprecision::exp(beta * jl);
  auto exact = poly::evaluate_real(partition_polynomial(Family::Hanoi, 2, true), at);
  CHECK(rel(partition_value(Family::Hanoi, 2, p), exact) < Real("1e-60"));
  IsingParams bad = IsingParams::uniform(-1, 1);
  CHECK_THROWS_AS(partition_value(Family::Hanoi, 1, bad), DomainError);
}

TEST_CASE("ising: log gamma agrees with the expanded generating function") {
  for (auto f : {Family::Grigorchuk, Family::Basilica, Family::Hanoi, Family::Sierpinski})
    for (int n = 1; n <= 5; ++n)
      for (const char* zs : {"0.3", "0.9"}) {
        Real z(zs);
        auto g = genfun::compute(f, n, genfun::Labeling::Plain).gamma;
        Real direct = boost::multiprecision::log(poly::evaluate_real(g, {{"z", z}}));
        CHECK(boost::multiprecision::abs(log_gamma(f, n, z) - direct) < Real("1e-60"));
      }
  CHECK(log_gamma(Family::Hanoi, 3, 0) == 0);
  CHECK_THROWS_AS(log_gamma(Family::Hanoi, 3, 1), DomainError);
}

TEST_CASE("ising: free energy density") {
  const Real l2 = boost::multiprecision::log(Real(2));
  for (auto f : {Family::Grigorchuk, Family::Basilica, Family::Hanoi, Family::Sierpinski})
    CHECK(boost::multiprecision::abs(free_energy_density(f, 4, 0) - l2) < Real("1e-70"));
  // Direct: log Z / V with Z from the exact polynomial.
  const Real z("0.5");
  const Real yv = boost::multiprecision::sqrt((1 + z) / (1 - z));
  for (auto f : {Family::Grigorchuk, Family::Basilica, Family::Hanoi, Family::Sierpinski}) {
    auto g = graph::build_family_graph(f, 3);
    Real zn = poly::evaluate_real(partition_polynomial(f, 3, false), {{"y", yv}});
    Real d = boost::multiprecision::log(zn) / Real(g.vertices.size());
    CHECK(boost::multiprecision::abs(free_energy_density(f, 3, z) - d) < Real("1e-60"));
  }
}

TEST_CASE("ising: thermodynamic limits") {
  const Real l2 = boost::multiprecision::log(Real(2));
  auto g0 = thermodynamic_limit(Family::Grigorchuk, 0, Real("1e-10"));
  CHECK(g0.exact);
  CHECK(boost::multiprecision::abs(g0.value - l2) < Real("1e-70"));
  CHECK_THROWS_AS(thermodynamic_limit(Family::Hanoi, 1, Real("1e-10")), DomainError);
  CHECK_THROWS_AS(thermodynamic_limit(Family::Basilica, Real("-0.1"), Real("1e-10")), DomainError);

  auto b = thermodynamic_limit(Family::Basilica, Real("0.5"), Real("1e-10"));
  CHECK(b.bound <= Real("1e-10"));
  CHECK(boost::multiprecision::abs(free_energy_density(Family::Basilica, 24, Real("0.5")) - b.value) < Real("1e-8"));

  auto h = thermodynamic_limit(Family::Hanoi, Real("0.5"), Real("1e-10"));
  CHECK(h.bound <= Real("1e-10"));
  Real prev = 1;
  for (int n = 4; n <= 10; ++n) {
    Real gap = boost::multiprecision::abs(free_energy_density(Family::Hanoi, n, Real("0.5")) - h.value);
    CHECK(gap < prev);
    prev = gap;
  }
  auto s = thermodynamic_limit(Family::Sierpinski, Real("0.5"), Real("1e-10"));
  CHECK(boost::multiprecision::abs(free_energy_density(Family::Sierpinski, 12, Real("0.5")) - s.value) < Real("1e-4"));
}

TEST_CASE("ising: renormalization maps") {
  auto s1 = renormalization_step(Variant::Sierpinski, 1);
  CHECK(boost::multiprecision::abs(s1.f - 1) < Real("1e-70"));
  CHECK(boost::multiprecision::abs(s1.c - 8) < Real("1e-70"));
  CHECK_THROWS_AS(renormalization_step(Variant::Hanoi, 0), DomainError);
  for (const char* ys : {"1.1", "2", "3"}) {
    Real yv(ys);
    CHECK(rel(renorm_partition(Variant::Sierpinski, 1, yv), 2 * yv * yv * yv + 6 / yv) < Real("1e-70"));
    CHECK(rel(renorm_partition(Variant::Hanoi, 1, yv), 2 * yv * yv * yv + 6 / yv) < Real("1e-70"));
  }
  // Sierpinski recursion at every level.
  for (int n = 1; n <= 6; ++n)
    for (const char* ys : {"1.1", "1.5", "2", "3"}) {
      Real yv(ys);
      auto st = renormalization_step(Variant::Sierpinski, yv);
      Real rhs = renorm_partition(Variant::Sierpinski, n, st.f) * boost::multiprecision::pow(st.c, Real(std::pow(3, n - 1)));
      CHECK(rel(renorm_partition(Variant::Sierpinski, n + 1, yv), rhs) < Real("1e-40"));
    }
}

TEST_CASE("ising: hanoi two-coupling decimation") {
  for (int n = 1; n <= 6; ++n) {
    for (const char* ys : {"1.1", "1.5", "2", "3"}) {
      Real yv(ys);
      CHECK(rel(hanoi_two_coupling_partition(n, yv, yv), renorm_partition(Variant::Hanoi, n, yv)) < Real("1e-60"));
      auto st = renormalization_step(Variant::Hanoi, yv);
      Real rhs = hanoi_two_coupling_partition(n, st.f, yv) * boost::multiprecision::pow(st.c, Real(std::pow(3, n - 1)));
      CHECK(rel(hanoi_two_coupling_partition(n + 1, yv, yv), rhs) < Real("1e-40"));
    }
  }
}

TEST_CASE("ising: label statistics") {
  auto g = label_statistics(Family::Grigorchuk, 6, genfun::Labeling::Labels);
  const auto& b = g.rows[1];
  CHECK(b.label == "b");
  CHECK(b.stats.mean == mpq_class(27, 2));
  CHECK(b.stats.variance == mpq_class(27, 4));
  auto h = label_statistics(Family::Hanoi, 3, genfun::Labeling::Labels);
  CHECK(h.rows[0].stats.mean == mpq_class(13, 2));
  CHECK(h.rows[0].stats.variance == mpq_class(13, 4));
  auto s = label_statistics(Family::Sierpinski, 3, genfun::Labeling::Labels);
  CHECK(s.rows[2].stats.mean == mpq_class(9, 2));
  CHECK(s.rows[2].stats.variance == mpq_class(9, 4));
  CHECK_THROWS_AS(label_statistics(Family::Hanoi, 3, genfun::Labeling::Plain), UnsupportedOperation);

  auto csv = to_csv(h);
  CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
  CHECK(csv.find("hanoi,3,labels,a,13/2,13/4,0,-13/8,0.00000000000000000000e+00,-1.53846153846153846154e-01")
        != std::string::npos);
  CHECK(to_csv(g).find("grigorchuk,6,labels,a,0,0,0,0,undefined,undefined") != std::string::npos);
}

TEST_CASE("ising: label marginals agree with the full generating function") {
  const std::vector<std::tuple<Family, int, genfun::Labeling>> cases{
      {Family::Grigorchuk, 5, genfun::Labeling::Labels}, {Family::Basilica, 5, genfun::Labeling::Labels},
      {Family::Hanoi, 3, genfun::Labeling::Labels},      {Family::Sierpinski, 3, genfun::Labeling::Labels},
      {Family::Sierpinski, 3, genfun::Labeling::Rotation}};
  for (auto [f, n, l] : cases) {
    auto full = genfun::compute(f, n, l).gamma;
    for (const auto& row : label_statistics(f, n, l).rows) {
      auto s = poly::log_derivative_stats(full, row.label);
      CHECK(row.stats.mean == s.mean);
      CHECK(row.stats.variance == s.variance);
      CHECK(row.stats.kappa3 == s.kappa3);
      CHECK(row.stats.kappa4 == s.kappa4);
    }
  }
}
