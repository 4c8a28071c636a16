#include "selfsim/ising.hpp"

#include <sstream>

#include "selfsim/errors.hpp"

namespace selfsim::ising {

using boost::multiprecision::cosh;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::tanh;

namespace {

// Above this size counts come from the verified formulas instead of a built graph.
constexpr std::uint64_t kGraphCountLimit = 1u << 16;

struct Counts {
  std::uint64_t vertices = 0;
  std::map<std::string, std::uint64_t> edges;  // loopless, per label
  std::uint64_t total_edges() const {
    std::uint64_t t = 0;
    for (const auto& [l, c] : edges) t += c;
    return t;
  }
};

Counts graph_counts(Family f, int n) {
  Counts c;
  if (graph::formula_vertex_count(f, n) <= kGraphCountLimit) {
    auto g = graph::build_family_graph(f, n);
    c.vertices = g.vertices.size();
    for (const auto& [l, k] : g.loopless_label_counts()) c.edges[l] = k;
  } else {
    c.vertices = graph::formula_vertex_count(f, n);
    c.edges[""] = graph::formula_edge_count(f, n);
  }
  return c;
}

std::uint64_t pow_u3(int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

Real two() { return Real(2); }
Real log2v() { return log(two()); }

Real pow_real(const Real& base, std::uint64_t e) { return pow(base, Real(e)); }

// phi-tower in z. Hanoi: phi_1 = 1 + z, phi_k = phi^2 - 3 z^(2^(k-2)) phi + 4 z^(2^(k-1)).
// Sierpinski (z = u^2): phi_1 = 1 + z, phi_2 = 1 + z^2, then the same step with
// z^(2^(k-3)) in place of z^(2^(k-2)).
Real step_exponent(Family f, int k) {
  return pow(two(), Real(f == Family::Hanoi ? k - 2 : k - 3));
}
Real final_exponent(Family f, int n) { return pow(two(), Real(f == Family::Hanoi ? n : n - 1)); }

void require_tower(Family f) {
  if (f != Family::Hanoi && f != Family::Sierpinski) throw FamilyMismatch("phi tower needs hanoi or sierpinski");
}

// log phi_1 .. log phi_count for 0 <= z < 1.
std::vector<Real> log_phi(Family f, const Real& z, int count) {
  require_tower(f);
  std::vector<Real> l;
  const bool zero = z == 0;
  const Real lz = zero ? Real(0) : log(z);
  for (int k = 1; k <= count; ++k) {
    if (k == 1) {
      l.push_back(log(Real(1) + z));
      continue;
    }
    if (k == 2 && f == Family::Sierpinski) {
      l.push_back(log(Real(1) + z * z));
      continue;
    }
    const Real& prev = l.back();
    Real r = zero ? Real(0) : exp(step_exponent(f, k) * lz - prev);
    l.push_back(2 * prev + log(Real(1) - 3 * r + 4 * r * r));
  }
  return l;
}

// Plain values of phi_1 .. phi_count for any real z; used at small levels.
std::vector<Real> phi_values(Family f, const Real& z, int count) {
  require_tower(f);
  std::vector<Real> p;
  for (int k = 1; k <= count; ++k) {
    if (k == 1) {
      p.push_back(Real(1) + z);
    } else if (k == 2 && f == Family::Sierpinski) {
      p.push_back(Real(1) + z * z);
    } else {
      const Real s = pow(z, step_exponent(f, k));
      const Real prev = p.back();
      p.push_back(prev * prev - 3 * s * prev + 4 * s * s);
    }
  }
  return p;
}

Real gamma_value(Family f, int n, const Real& z) {
  auto p = phi_values(f, z, n + 1);
  Real g = p[static_cast<std::size_t>(n)] - pow(z, final_exponent(f, n));
  for (int k = 1; k <= n; ++k) g *= pow_real(p[static_cast<std::size_t>(k - 1)], pow_u3(n - k));
  return g;
}

}  // namespace

IsingParams IsingParams::uniform(const Real& beta, const Real& j) {
  IsingParams p;
  p.beta = beta;
  p.couplings = {{"", j}};
  return p;
}

Real IsingParams::coupling(const std::string& label) const {
  if (auto it = couplings.find(label); it != couplings.end()) return it->second;
  if (auto it = couplings.find(""); it != couplings.end()) return it->second;
  throw DomainError("no coupling for label " + label);
}

bool IsingParams::per_label() const {
  for (const auto& [l, j] : couplings)
    if (!l.empty()) return true;
  return false;
}

void IsingParams::validate() const {
  if (beta < 0) throw DomainError("beta must be nonnegative");
  if (couplings.empty()) throw DomainError("at least one coupling is required");
}

Real log_cosh_from_z(const Real& z) { return -log(Real(1) - z * z) / 2; }

LaurentPoly partition_polynomial(Family f, int n, bool per_label) {
  auto g = graph::build_family_graph(f, n);
  const auto labels = g.loopless_label_counts();
  auto gf = genfun::compute(f, n, per_label ? genfun::Labeling::Labels : genfun::Labeling::Plain).gamma;

  // Gamma variable -> (spin variable, edge count).
  std::map<std::string, std::pair<std::string, long>> slots;
  long total = 0;
  for (const auto& [l, c] : labels) total += static_cast<long>(c);
  if (per_label) {
    for (const auto& [l, c] : labels) slots[l] = {"y_" + l, static_cast<long>(c)};
  } else {
    slots["z"] = {"y", total};
  }
  for (const auto& v : gf.vars())
    if (!slots.count(v)) throw InternalInconsistency("generating function variable without edges: " + v);

  // tanh^k cosh^E = (y - 1/y)^k (y + 1/y)^(E - k) / 2^E
  std::map<std::string, std::vector<LaurentPoly>> xp, cp;
  for (const auto& [v, slot] : slots) {
    auto y = LaurentPoly::variable(slot.first);
    auto yi = LaurentPoly::variable(slot.first, -1);
    auto x = y - yi, c = y + yi;
    auto& xs = xp[v];
    auto& cs = cp[v];
    xs.push_back(LaurentPoly::constant(1));
    cs.push_back(LaurentPoly::constant(1));
    for (long k = 1; k <= slot.second; ++k) {
      xs.push_back(xs.back() * x);
      cs.push_back(cs.back() * c);
    }
  }
  const auto& gvars = gf.vars();
  LaurentPoly sum;
  for (const auto& [e, coef] : gf.terms()) {
    LaurentPoly term = LaurentPoly::constant(1) * coef;
    for (const auto& [v, slot] : slots) {
      long k = 0;
      for (std::size_t i = 0; i < gvars.size(); ++i)
        if (gvars[i] == v) k = e[i];
      if (k < 0 || k > slot.second) throw InternalInconsistency("polygon uses more edges than the graph has");
      term *= xp[v][static_cast<std::size_t>(k)] * cp[v][static_cast<std::size_t>(slot.second - k)];
    }
    sum += term;
  }
  const long shift = static_cast<long>(g.vertices.size()) - total;
  mpz_class p2;
  mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? sum * p2 : sum.divide_exact(p2);
}

Real partition_value(Family f, int n, const IsingParams& p) {
  p.validate();
  auto g = graph::build_family_graph(f, n);
  const bool per = p.per_label();
  auto gf = genfun::compute(f, n, per ? genfun::Labeling::Labels : genfun::Labeling::Plain).gamma;
  Real z = pow_real(two(), g.vertices.size());
  std::map<std::string, Real> at;
  for (const auto& [l, c] : g.loopless_label_counts()) {
    const Real k = p.beta * p.coupling(l);
    z *= pow_real(cosh(k), c);
    at[per ? l : std::string("z")] = tanh(k);
  }
  return z * poly::evaluate_real(gf, at);
}

Real log_gamma(Family f, int n, const Real& z) {
  if (z < 0 || z >= 1) throw DomainError("log_gamma needs 0 <= z < 1");
  if (n < 1) throw UnsupportedLevel("level must be at least 1");
  switch (f) {
    case Family::Grigorchuk:
      return (pow(two(), Real(n - 1)) - 1) * log(Real(1) + z * z);
    case Family::Basilica: {
      Real s = 0;
      for (const auto& c : genfun::basilica_cycle_factors(n))
        s += Real(c.multiplicity) * log(Real(1) + pow_real(z, c.length));
      return s;
    }
    case Family::Hanoi:
    case Family::Sierpinski: {
      // log Gamma_n = sum 3^(n-k) log phi_k + log(phi_{n+1} - z^e)
      auto l = log_phi(f, z, n + 1);
      Real s = 0;
      for (int k = 1; k <= n; ++k) s += pow(Real(3), Real(n - k)) * l[static_cast<std::size_t>(k - 1)];
      const Real last = l[static_cast<std::size_t>(n)];
      Real tail = z == 0 ? Real(0) : log(Real(1) - exp(final_exponent(f, n) * log(z) - last));
      return s + last + tail;
    }
  }
  throw FamilyMismatch("unknown family");
}

Real free_energy_density(Family f, int n, const Real& z) {
  if (z < 0 || z >= 1) throw DomainError("free energy density needs 0 <= z < 1");
  Counts c = graph_counts(f, n);
  const Real v(c.vertices);
  return log2v() + Real(c.total_edges()) / v * log_cosh_from_z(z) + log_gamma(f, n, z) / v;
}

LimitSeries thermodynamic_limit(Family f, const Real& z, const Real& tol) {
  if (z >= 1) throw DomainError("z = 1 is zero temperature; the tail bound degenerates");
  if (z < 0) throw DomainError("z = tanh(beta J) must be nonnegative");
  if (tol <= 0) throw DomainError("tolerance must be positive");
  LimitSeries s;
  s.family = f;
  s.z = z;
  const Real lc = log_cosh_from_z(z);
  const Real l2 = log2v();
  switch (f) {
    case Family::Grigorchuk:
      s.constant = l2 + Real(3) / 2 * lc;
      s.terms.push_back(log(Real(1) + z * z) / 2);
      s.truncation = 1;
      s.exact = true;
      break;
    case Family::Basilica: {
      // (3/2) sum 4^-k log(1 + z^(2^k)); each log is at most log 2.
      s.constant = l2 + Real(3) / 2 * lc;
      int k = 0;
      do {
        ++k;
        s.terms.push_back(Real(3) / 2 * pow(Real(4), Real(-k)) * log(Real(1) + pow(z, pow(two(), Real(k)))));
        s.bound = l2 / 2 * pow(Real(4), Real(-k));
      } while (s.bound > tol);
      s.truncation = k;
      break;
    }
    case Family::Hanoi:
    case Family::Sierpinski: {
      // sum 3^-k log phi_k with |log phi_k| <= 2^k log 2; Sierpinski has twice
      // the weight because |V| grows like 3^n / 2.
      const Real w = f == Family::Hanoi ? Real(1) : Real(2);
      s.constant = l2 + (f == Family::Hanoi ? Real(3) / 2 : Real(2)) * lc;
      int k = 0;
      auto bound_after = [&](int K) { return w * 3 * l2 * pow(Real(2) / 3, Real(K + 1)); };
      while (bound_after(k) > tol) ++k;
      if (k == 0) k = 1;
      auto l = log_phi(f, z, k);
      for (int i = 1; i <= k; ++i) s.terms.push_back(w * l[static_cast<std::size_t>(i - 1)] / pow(Real(3), Real(i)));
      s.truncation = k;
      s.bound = bound_after(k);
      break;
    }
  }
  s.value = s.constant;
  for (const auto& t : s.terms) s.value += t;
  return s;
}

std::string variant_name(Variant v) { return v == Variant::Hanoi ? "hanoi" : "sierpinski"; }

Variant parse_variant(const std::string& s) {
  if (s == "hanoi") return Variant::Hanoi;
  if (s == "sierpinski") return Variant::Sierpinski;
  throw DomainError("renormalization variant must be hanoi or sierpinski");
}

RenormStep renormalization_step(Variant v, const Real& y) {
  if (y <= 0) throw DomainError("y = exp(beta J) must be positive");
  const Real y2 = y * y, y4 = y2 * y2, y8 = y4 * y4;
  const Real quarter = Real(1) / 4;
  if (v == Variant::Sierpinski) {
    const Real num = y8 - y4 + 4, den = y4 + 3;
    return {pow(num / den, quarter), (y4 + 1) / (y2 * y) * pow(den * den * den * num, quarter)};
  }
  const Real num = y8 - 2 * y4 * y2 + 2 * y4 + 2 * y2 + 1, den = y4 + 1;
  const Real f = pow(num / (2 * den), quarter);
  const Real c = (y4 - y2 + 2) * pow(y2 + 1, 3) / (y4 * y2) * pow(8 * den * den * den * num, quarter);
  return {f, c};
}

Real renorm_partition(Variant v, int n, const Real& y) {
  if (y <= 0) throw DomainError("y = exp(beta J) must be positive");
  if (n < 1 || n > 12) throw UnsupportedLevel("renormalization levels are 1..12");
  const Family f = v == Variant::Hanoi ? Family::Hanoi : Family::Sierpinski;
  const Real z = (y * y - 1) / (y * y + 1);
  const Real ch = (y + 1 / y) / 2;
  const std::uint64_t V = graph::formula_vertex_count(f, n), E = graph::formula_edge_count(f, n);
  return pow_real(two(), V) * pow_real(ch, E) * gamma_value(f, n, z);
}

Real hanoi_two_coupling_partition(int n, const Real& y_t, const Real& y_c) {
  if (y_t <= 0 || y_c <= 0) throw DomainError("y = exp(beta J) must be positive");
  if (n < 1) throw UnsupportedLevel("level must be at least 1");
  auto z_of = [](const Real& y) { return (y * y - 1) / (y * y + 1); };
  const Real zt = z_of(y_t), zc = z_of(y_c);
  Real g = 1 + zt * zt * zt, u = zt + zt * zt;
  for (int k = 1; k < n; ++k) {
    Real g2 = g * g * g + zc * zc * zc * u * u * u;
    Real u2 = zc * u * u * g + zc * zc * u * u * u;
    g = g2;
    u = u2;
  }
  const std::uint64_t t = pow_u3(n), c = (t - 3) / 2;
  return pow_real(two(), t) * pow_real((y_t + 1 / y_t) / 2, t) * pow_real((y_c + 1 / y_c) / 2, c) * g;
}

LabelTable label_statistics(Family f, int n, genfun::Labeling l) {
  if (l == genfun::Labeling::Plain) throw UnsupportedOperation("label statistics need a labeled generating function");
  if (l == genfun::Labeling::Rotation && f != Family::Sierpinski)
    throw FamilyMismatch("rotation-invariant labeling exists only for sierpinski graphs");
  LabelTable t{f, n, l, {}};
  // The marginal of one label: every other label weighs 1.
  for (const auto& label : genfun::family_labels(f)) {
    genfun::LabelWeights w;
    for (const auto& other : genfun::family_labels(f))
      if (other != label) w[other] = LaurentPoly::constant(1);
    LaurentPoly gf;
    switch (f) {
      case Family::Grigorchuk: gf = genfun::grigorchuk_gamma(n, true, w).gamma; break;
      case Family::Basilica: gf = genfun::basilica_gamma(n, true, w).gamma; break;
      case Family::Hanoi: gf = genfun::hanoi_gamma_weighted(n, w).gamma; break;
      case Family::Sierpinski:
        gf = l == genfun::Labeling::Rotation ? genfun::sierpinski_gamma_rotation_invariant(n, w).gamma
                                             : genfun::sierpinski_gamma_weighted(n, w).gamma;
        break;
    }
    t.rows.push_back({label, poly::log_derivative_stats(gf, label)});
  }
  return t;
}

std::string csv_header() { return "family,level,labeling,label,mean,variance,kappa3,kappa4,skewness,excess_kurtosis"; }

std::string to_csv(const LabelTable& t) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : t.rows) {
    out << graph::family_name(t.family) << ',' << t.level << ',' << genfun::labeling_name(t.labeling) << ','
        << r.label << ',' << poly::mpq_to_string(r.stats.mean) << ',' << poly::mpq_to_string(r.stats.variance) << ','
        << poly::mpq_to_string(r.stats.kappa3) << ',' << poly::mpq_to_string(r.stats.kappa4) << ',';
    if (r.stats.variance == 0)
      out << "undefined,undefined";
    else
      out << to_sci(r.stats.skewness()) << ',' << to_sci(poly::to_real(r.stats.excess_kurtosis()));
    out << '\n';
  }
  return out.str();
}

}  // namespace selfsim::ising
