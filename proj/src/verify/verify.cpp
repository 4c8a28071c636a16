#include "selfsim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "selfsim/errors.hpp"
#include "selfsim/fisher.hpp"
#include "selfsim/genfun.hpp"
#include "selfsim/ising.hpp"
#include "selfsim/oracle.hpp"

namespace selfsim::verify {

using graph::Family;
using poly::LaurentPoly;
namespace bmp = boost::multiprecision;

namespace {

struct Check {
  std::vector<std::string> failures, facts;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { facts.push_back(s); }
};

std::string fam(Family f) { return graph::family_name(f); }
std::string at(Family f, int n) { return fam(f) + " n=" + std::to_string(n); }

mpz_class pow2(std::uint64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

std::uint64_t pow3(int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

std::string sci(const Real& x) { return to_sci(x, 3); }

LaurentPoly z() { return LaurentPoly::variable("z"); }

genfun::LabelWeights ones_except(Family f, const std::string& keep) {
  genfun::LabelWeights w;
  for (const auto& l : genfun::family_labels(f))
    if (l != keep) w[l] = LaurentPoly::constant(1);
  return w;
}

void criterion1(Check& c) {
  const std::vector<std::pair<Family, int>> cases{
      {Family::Grigorchuk, 5}, {Family::Basilica, 5}, {Family::Hanoi, 3}, {Family::Sierpinski, 3}};
  for (auto [f, top] : cases)
    for (int n = 1; n <= top; ++n) {
      auto g = graph::build_family_graph(f, n);
      auto rank = graph::cycle_space_rank(g).rank;
      mpz_class count = oracle::enumerate_polygons(g, false).sum_of_coefficients();
      c.expect(count == pow2(static_cast<std::uint64_t>(rank)), at(f, n) + ": count != 2^rank");
      mpz_class law;
      if (f == Family::Grigorchuk) law = pow2((1ull << (n - 1)) - 1);
      if (f == Family::Hanoi || f == Family::Sierpinski) law = pow2((pow3(n) - 1) / 2);
      if (f == Family::Basilica) {
        std::uint64_t m = 0;
        for (const auto& cf : genfun::basilica_cycle_factors(n)) m += cf.multiplicity;
        law = pow2(m);
      }
      c.expect(count == law, at(f, n) + ": count " + count.get_str() + " != " + law.get_str());
    }
}

void criterion2(Check& c) {
  const std::vector<std::pair<Family, int>> cases{
      {Family::Grigorchuk, 5}, {Family::Basilica, 4}, {Family::Hanoi, 3}, {Family::Sierpinski, 3}};
  for (auto [f, top] : cases)
    for (int n = 1; n <= top; ++n) {
      auto g = graph::build_family_graph(f, n);
      for (auto l : {genfun::Labeling::Plain, genfun::Labeling::Labels}) {
        bool weighted = l == genfun::Labeling::Labels;
        c.expect(genfun::compute(f, n, l).gamma == oracle::enumerate_polygons(g, weighted),
                 at(f, n) + " " + genfun::labeling_name(l) + ": generating function != enumeration");
      }
    }
  for (int n = 2; n <= 3; ++n)
    c.expect(genfun::sierpinski_gamma_rotation_invariant(n).gamma ==
                 oracle::enumerate_polygons(graph::rotation_invariant_fixture(n), true),
             "sierpinski rotation n=" + std::to_string(n) + ": generating function != enumeration");
}

void criterion3(Check& c) {
  for (int n = 1; n <= 7; ++n) {
    auto hc = genfun::hanoi_gamma_closed(n), hr = genfun::hanoi_gamma_recursive(n);
    c.expect(hc.gamma == hr.gamma, at(Family::Hanoi, n) + ": Gamma closed != recursion");
    c.expect(hc.aux["upsilon"] == hr.aux["upsilon"], at(Family::Hanoi, n) + ": Upsilon closed != recursion");
    auto sc = genfun::sierpinski_gamma_closed(n), sr = genfun::sierpinski_gamma_recursive(n);
    c.expect(sc.gamma == sr.gamma, at(Family::Sierpinski, n) + ": Gamma closed != recursion");
    c.expect(sc.aux["upsilon"] == sr.aux["upsilon"], at(Family::Sierpinski, n) + ": Upsilon closed != recursion");
  }
}

void criterion4(Check& c) {
  auto a = LaurentPoly::variable("a"), b = LaurentPoly::variable("b"), cc = LaurentPoly::variable("c");
  auto h1 = genfun::hanoi_gamma_weighted(1);
  c.expect(h1.aux["upsilon_lr"] == a * cc + b, "hanoi Upsilon_1^lr != ac + b");
  c.expect(h1.aux["upsilon_lu"] == a + b * cc, "hanoi Upsilon_1^lu != a + bc");
  c.expect(h1.aux["upsilon_ru"] == cc + a * b, "hanoi Upsilon_1^ru != c + ab");
  c.expect(genfun::hanoi_gamma_recursive(1).aux["upsilon"] == z() + z().pow(2), "hanoi Upsilon_1 != z + z^2");
  for (Family f : {Family::Hanoi, Family::Sierpinski})
    for (int n = 1; n <= 2; ++n) {
      auto g = graph::build_family_graph(f, n);
      auto plain = genfun::compute(f, n, genfun::Labeling::Plain);
      auto weighted = genfun::compute(f, n, genfun::Labeling::Labels);
      for (std::string pair : {"lr", "lu", "ru"}) {
        c.expect(oracle::enumerate_corner_paths(g, pair, false) == plain.aux["upsilon"],
                 at(f, n) + " " + pair + ": corner coset != Upsilon");
        c.expect(oracle::enumerate_corner_paths(g, pair, true) == weighted.aux["upsilon_" + pair],
                 at(f, n) + " " + pair + ": weighted corner coset != Upsilon");
      }
    }
  for (int n = 1; n <= 7; ++n) {
    auto h = genfun::hanoi_gamma_recursive(n);
    c.expect(h.aux["upsilon"].sum_of_coefficients() == h.gamma.sum_of_coefficients(),
             at(Family::Hanoi, n) + ": Upsilon(1) != Gamma(1)");
    auto s = genfun::sierpinski_gamma_recursive(n);
    c.expect(s.aux["upsilon"].sum_of_coefficients() == s.gamma.sum_of_coefficients(),
             at(Family::Sierpinski, n) + ": Upsilon(1) != Gamma(1)");
  }
}

void criterion5(Check& c) {
  const std::vector<std::pair<Family, int>> cases{
      {Family::Grigorchuk, 4}, {Family::Basilica, 4}, {Family::Hanoi, 2}, {Family::Sierpinski, 2}};
  for (auto [f, top] : cases)
    for (int n = 1; n <= top; ++n) {
      auto g = graph::build_family_graph(f, n);
      c.expect(ising::partition_polynomial(f, n, false) == oracle::spin_sum_partition(g, false),
               at(f, n) + ": expansion != spin sum");
      c.expect(ising::partition_polynomial(f, n, true) == oracle::spin_sum_partition(g, true),
               at(f, n) + " per label: expansion != spin sum");
    }
}

void criterion6(Check& c) {
  auto y = LaurentPoly::variable("y");
  auto seed = 2 * y.pow(3) + 6 * LaurentPoly::variable("y", -1);
  c.expect(ising::partition_polynomial(Family::Sierpinski, 1, false) == seed, "sierpinski Z_1 != 2y^3 + 6/y");
  c.expect(ising::partition_polynomial(Family::Hanoi, 1, false) == seed, "hanoi Z_1 != 2y^3 + 6/y");
  const Real tol("1e-9");
  Real worst_two = 0;
  for (auto v : {ising::Variant::Sierpinski, ising::Variant::Hanoi})
    for (int n = 1; n <= 6; ++n) {
      Real worst = 0;
      for (const char* ys : {"1.1", "1.5", "2", "3"}) {
        const Real yv(ys);
        auto st = ising::renormalization_step(v, yv);
        const Real scale = bmp::pow(st.c, Real(pow3(n - 1)));
        const Real lhs = ising::renorm_partition(v, n + 1, yv);
        const Real rhs = ising::renorm_partition(v, n, st.f) * scale;
        worst = std::max<Real>(worst, bmp::abs(lhs - rhs) / bmp::abs(lhs));
        if (v == ising::Variant::Hanoi) {
          const Real two = ising::hanoi_two_coupling_partition(n, st.f, yv) * scale;
          worst_two = std::max<Real>(worst_two, bmp::abs(lhs - two) / bmp::abs(lhs));
        }
      }
      c.expect(worst <= tol, ising::variant_name(v) + " n=" + std::to_string(n) +
                                 ": worst relative error " + sci(worst));
    }
  c.note("hanoi with connector coupling kept at y: Z_{n+1}(y) = Z_n(f(y), y) c(y)^{3^{n-1}}, worst relative error " +
         sci(worst_two));
}

void criterion7(Check& c) {
  for (const char* zs : {"0.1", "0.5", "0.9"}) {
    const Real zv(zs);
    auto g = ising::thermodynamic_limit(Family::Grigorchuk, zv, Real("1e-12"));
    const Real dg = ising::free_energy_density(Family::Grigorchuk, 20, zv);
    const Real gap = bmp::abs(dg - g.value);
    c.expect(gap <= Real("1e-8"), std::string("grigorchuk z=") + zs + ": |density(20) - limit| = " + sci(gap));
    const Real exact_gap = (2 * ising::log_cosh_from_z(zv) + bmp::log(1 + zv * zv)) / bmp::pow(Real(2), 20);
    if (bmp::abs((g.value - dg) - exact_gap) < Real("1e-40"))
      c.note(std::string("grigorchuk z=") + zs + ": gap equals (2 log cosh + log(1+z^2))/2^20 = " + sci(exact_gap));
    for (Family f : {Family::Basilica, Family::Hanoi}) {
      auto s = ising::thermodynamic_limit(f, zv, Real("1e-10"));
      const Real d = ising::free_energy_density(f, 12, zv);
      const Real gp = bmp::abs(d - s.value);
      c.expect(gp <= Real("1e-6"), fam(f) + " z=" + zs + ": |density(12) - series| = " + sci(gp));
      c.note(fam(f) + " z=" + zs + ": " + std::to_string(s.truncation) + " terms, tail bound " + sci(s.bound) +
             ", gap " + sci(gp));
    }
  }
}

void criterion8(Check& c) {
  auto q = [](long long p, long long d) {
    mpq_class r(static_cast<long>(p), static_cast<unsigned long>(d));
    r.canonicalize();
    return r;
  };
  // Grigorchuk table, n = 1..9.
  for (int n = 1; n <= 9; ++n) {
    auto t = ising::label_statistics(Family::Grigorchuk, n, genfun::Labeling::Labels);
    const long long p = 1LL << n, h = 1LL << (n - 1), r = n >= 2 ? 1LL << (n - 2) : 0;
    mpq_class mb, vb, mc, vc, md, vd;
    switch (n % 3) {
      case 0:
        mb = q(3 * (p - 1), 14), vb = q(3 * (p - 1), 28);
        mc = q(5 * r - 3, 7), vc = q(5 * r - 3, 14);
        md = q(3 * h - 5, 14), vd = q(3 * h - 5, 28);
        break;
      case 1:
        mb = q(3 * (h - 1), 7), vb = q(3 * (h - 1), 14);
        mc = q(5 * (h - 1), 14), vc = q(5 * (h - 1), 28);
        md = q(3 * (h - 1), 14), vd = q(3 * (h - 1), 28);
        break;
      default:
        mb = q(3 * p - 5, 14), vb = q(3 * p - 5, 28);
        mc = q(5 * h - 3, 14), vc = q(5 * h - 3, 28);
        md = q(3 * (r - 1), 7), vd = q(3 * (r - 1), 14);
    }
    const std::map<std::string, std::pair<mpq_class, mpq_class>> want{
        {"a", {0, 0}}, {"b", {mb, vb}}, {"c", {mc, vc}}, {"d", {md, vd}}};
    for (const auto& row : t.rows) {
      const auto& [m, v] = want.at(row.label);
      c.expect(row.stats.mean == m && row.stats.variance == v,
               at(Family::Grigorchuk, n) + " label " + row.label + ": got " + poly::mpq_to_string(row.stats.mean) +
                   ", " + poly::mpq_to_string(row.stats.variance));
    }
  }
  // Basilica table, n = 4..7; the even-n b variance is (n+2) 2^(n-3).
  for (int n = 4; n <= 7; ++n) {
    auto t = ising::label_statistics(Family::Basilica, n, genfun::Labeling::Labels);
    const bool odd = n % 2 == 1;
    const mpq_class ma = q(1LL << (n - 2), 1), va = q((odd ? n + 1 : n + 2) * (1LL << (n - 4)), 1);
    const mpq_class mb = q(1LL << (n - 1), 1), vb = q((odd ? n + 3 : n + 2) * (1LL << (n - 3)), 1);
    for (const auto& row : t.rows) {
      const bool is_a = row.label == "a";
      c.expect(row.stats.mean == (is_a ? ma : mb) && row.stats.variance == (is_a ? va : vb),
               at(Family::Basilica, n) + " label " + row.label + ": got " + poly::mpq_to_string(row.stats.mean) +
                   ", " + poly::mpq_to_string(row.stats.variance));
    }
  }
  c.note("basilica even n: sigma^2_b checked as (n+2) 2^(n-3); the printed table has (n-2) 2^(n-3)");
  for (int n = 1; n <= 5; ++n) {
    const long long t3 = static_cast<long long>(pow3(n)), s3 = static_cast<long long>(pow3(n - 1));
    for (const auto& row : ising::label_statistics(Family::Hanoi, n, genfun::Labeling::Labels).rows)
      c.expect(row.stats.mean == q(t3 - 1, 4) && row.stats.variance == q(t3 - 1, 8),
               at(Family::Hanoi, n) + " label " + row.label + ": got " + poly::mpq_to_string(row.stats.mean) + ", " +
                   poly::mpq_to_string(row.stats.variance));
    for (const auto& row : ising::label_statistics(Family::Sierpinski, n, genfun::Labeling::Labels).rows)
      c.expect(row.stats.mean == q(s3, 2) && row.stats.variance == q(s3, 4),
               at(Family::Sierpinski, n) + " label " + row.label + ": got " + poly::mpq_to_string(row.stats.mean) +
                   ", " + poly::mpq_to_string(row.stats.variance));
  }
}

void criterion9(Check& c) {
  struct Series {
    std::string name;
    std::vector<poly::Cumulants> levels;
    int first;
  };
  std::vector<Series> all;
  Series g{"grigorchuk b", {}, 2};
  for (int n = 2; n <= 14; ++n)
    g.levels.push_back(poly::log_derivative_stats(
        genfun::grigorchuk_gamma(n, true, ones_except(Family::Grigorchuk, "b")).gamma, "b"));
  all.push_back(g);
  Series h{"hanoi c", {}, 1};
  for (int n = 1; n <= 8; ++n)
    h.levels.push_back(
        poly::log_derivative_stats(genfun::hanoi_gamma_weighted(n, ones_except(Family::Hanoi, "c")).gamma, "c"));
  all.push_back(h);
  for (const auto& s : all) {
    bool all_zero = true;
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
      all_zero = all_zero && s.levels[i].kappa3 == 0;
      if (i == 0) continue;
      const int n = s.first + static_cast<int>(i);
      const Real prev = bmp::abs(s.levels[i - 1].skewness()), cur = bmp::abs(s.levels[i].skewness());
      c.expect(cur <= prev, s.name + " n=" + std::to_string(n) + ": |skewness| increased");
      const mpq_class kp = abs(s.levels[i - 1].excess_kurtosis()), kc = abs(s.levels[i].excess_kurtosis());
      c.expect(kc < kp, s.name + " n=" + std::to_string(n) + ": |excess kurtosis| did not decrease");
    }
    const auto& last = s.levels.back();
    c.note(s.name + ": levels " + std::to_string(s.first) + ".." +
           std::to_string(s.first + static_cast<int>(s.levels.size()) - 1) +
           (all_zero ? ", kappa3 = 0 at every level" : "") + ", last excess kurtosis " +
           poly::mpq_to_string(last.excess_kurtosis()));
  }
}

void criterion10(Check& c) {
  const long expected[] = {2, 16, 8192};
  for (int n = 1; n <= 3; ++n) {
    auto rep = fisher::verify_correspondence(n);
    for (const auto& d : rep.diffs) c.expect(false, "n=" + std::to_string(n) + ": " + d);
    c.expect(rep.matchings == expected[n - 1], "n=" + std::to_string(n) + ": matchings " + rep.matchings.get_str());
    c.note("n=" + std::to_string(n) + ": " + std::to_string(rep.transformed.vertices) + " vertices, " +
           std::to_string(rep.transformed.edges) + " edges, " + rep.matchings.get_str() + " matchings");
  }
}

void criterion11(Check& c) {
  for (int n = 2; n <= 3; ++n) {
    genfun::LabelWeights w{{"a", z()}, {"b", z()}, {"c", z()}};
    auto rot = poly::substitute(genfun::sierpinski_gamma_rotation_invariant(n).gamma, w);
    c.expect(rot == genfun::sierpinski_gamma_recursive(n).gamma,
             "n=" + std::to_string(n) + ": rotation Gamma(z,z,z) != Gamma(z)");
    auto sch = poly::substitute(genfun::sierpinski_gamma_weighted(n).gamma, w);
    c.expect(sch == genfun::sierpinski_gamma_recursive(n).gamma,
             "n=" + std::to_string(n) + ": schreier Gamma(z,z,z) != Gamma(z)");
  }
}

}  // namespace

bool is_quick(int id) { return id == 1 || id == 2 || id == 4 || id == 5 || id == 8 || id == 10 || id == 11; }

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "polygon-count laws";
    case 2: return "enumeration equals generating functions";
    case 3: return "closed forms equal recursions (n <= 7)";
    case 4: return "corner-path cosets";
    case 5: return "high-temperature expansion equals spin sums";
    case 6: return "renormalization recursion";
    case 7: return "thermodynamic limits";
    case 8: return "label statistics tables";
    case 9: return "normality diagnostics";
    case 10: return "Fisher correspondence";
    case 11: return "cross-labeling consistency";
    default: throw UnsupportedOperation("no criterion " + std::to_string(id));
  }
}

CriterionResult run_criterion(int id) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  r.quick = is_quick(id);
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: criterion1(c); break;
      case 2: criterion2(c); break;
      case 3: criterion3(c); break;
      case 4: criterion4(c); break;
      case 5: criterion5(c); break;
      case 6: criterion6(c); break;
      case 7: criterion7(c); break;
      case 8: criterion8(c); break;
      case 9: criterion9(c); break;
      case 10: criterion10(c); break;
      case 11: criterion11(c); break;
    }
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (id == 1 && r.seconds >= 60) c.expect(false, "took longer than 60 s");
  if (id == 3 && r.seconds >= 300) c.expect(false, "took longer than 5 min");
  r.pass = c.failures.empty();
  r.notes = c.failures;
  r.notes.insert(r.notes.end(), c.facts.begin(), c.facts.end());
  return r;
}

std::string format(const CriterionResult& r, bool with_notes) {
  std::ostringstream out;
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  out << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " (" << secs << " s)\n";
  if (with_notes)
    for (const auto& n : r.notes) out << "      " << n << '\n';
  return out.str();
}

OracleCheck verify_oracle(Family f, int n, std::size_t rank_budget) {
  auto g = graph::build_family_graph(f, n);
  auto enumerated = oracle::enumerate_polygons(g, false, rank_budget);
  auto gf = genfun::compute(f, n, genfun::Labeling::Plain).gamma;
  const std::string count = enumerated.sum_of_coefficients().get_str();
  if (enumerated == gf) return {true, "OK: " + count + " polygons, genfun == enumeration"};
  return {false, "MISMATCH: " + count + " polygons enumerated; enumeration " + enumerated.to_string() +
                     " != genfun " + gf.to_string()};
}

}  // namespace selfsim::verify
