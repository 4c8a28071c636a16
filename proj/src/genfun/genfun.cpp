#include "selfsim/genfun.hpp"

namespace selfsim::genfun {

namespace {

LaurentPoly one() { return LaurentPoly::constant(1); }
LaurentPoly var(const std::string& v, int e = 1) { return LaurentPoly::variable(v, e); }

std::uint64_t pow_u(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void require_level(int n, int min, int max) {
  if (n < min || n > max)
    throw UnsupportedLevel("level " + std::to_string(n) + " outside [" + std::to_string(min) + ", " +
                           std::to_string(max) + "]");
}

LaurentPoly u_to_z(const LaurentPoly& p) {
  std::vector<std::pair<poly::Exponents, mpz_class>> terms;
  for (const auto& [e, c] : p.terms()) {
    int k = e.empty() ? 0 : e[0];
    if (k % 2 != 0) throw InternalInconsistency("odd power of u in a Sierpinski closed form");
    terms.emplace_back(poly::Exponents{k / 2}, c);
  }
  return LaurentPoly::from_terms({"z"}, terms);
}

}  // namespace

std::string labeling_name(Labeling l) {
  switch (l) {
    case Labeling::Plain: return "plain";
    case Labeling::Labels: return "labels";
    case Labeling::Rotation: return "rotation";
  }
  return "?";
}

Labeling parse_labeling(const std::string& s) {
  if (s == "plain") return Labeling::Plain;
  if (s == "labels") return Labeling::Labels;
  if (s == "rotation") return Labeling::Rotation;
  throw FamilyMismatch("unknown labeling '" + s + "'");
}

LaurentPoly weight_of(const LabelWeights& w, const std::string& label) {
  auto it = w.find(label);
  return it == w.end() ? var(label) : it->second;
}

std::vector<std::string> family_labels(Family f) {
  if (f == Family::Grigorchuk) return {"a", "b", "c", "d"};
  if (f == Family::Basilica) return {"a", "b"};
  return {"a", "b", "c"};
}

// ---- Grigorchuk ------------------------------------------------------------

PairCounts grigorchuk_pair_counts(int n) {
  require_level(n, 1, 62);
  const std::uint64_t p1 = pow_u(2, n + 1), p0 = pow_u(2, n);
  const std::uint64_t pm = n >= 1 ? pow_u(2, n - 1) : 1;
  PairCounts c;
  if (n == 1) return c;
  switch (n % 3) {
    case 0: c = {(p1 - 2) / 7, (p0 - 1) / 7, (pm - 4) / 7}; break;
    case 1: c = {(p1 - 4) / 7, (p0 - 2) / 7, (pm - 1) / 7}; break;
    default: c = {(p1 - 1) / 7, (p0 - 4) / 7, (pm - 2) / 7}; break;
  }
  return c;
}

PairCounts grigorchuk_pair_counts_recursive(int n) {
  require_level(n, 1, 62);
  PairCounts c;
  for (int k = 2; k <= n; ++k) c = {c.w + pow_u(2, k - 2), c.x, c.y};
  return c;
}

GenFunSet grigorchuk_gamma(int n, bool weighted, const LabelWeights& w) {
  require_level(n, 1, 30);
  GenFunSet g{Family::Grigorchuk, n, weighted ? Labeling::Labels : Labeling::Plain, {}, {}};
  if (!weighted) {
    g.gamma = (one() + var("z", 2)).pow(static_cast<long>(pow_u(2, n - 1) - 1));
    return g;
  }
  auto pc = grigorchuk_pair_counts(n);
  LaurentPoly b = weight_of(w, "b"), c = weight_of(w, "c"), d = weight_of(w, "d");
  g.gamma = (one() + b * c).pow(static_cast<long>(pc.x)) * (one() + b * d).pow(static_cast<long>(pc.y)) *
            (one() + c * d).pow(static_cast<long>(pc.w));
  return g;
}

// ---- Basilica --------------------------------------------------------------

std::vector<CycleFactor> basilica_cycle_factors(int n) {
  require_level(n, 1, 60);
  if (n == 1) return {{"b", 2, 1}};
  if (n == 2) return {{"a", 2, 1}, {"b", 2, 2}};
  std::vector<CycleFactor> f;
  const int m = n / 2;
  for (int k = 1; k < m; ++k) {
    f.push_back({"a", pow_u(2, k), pow_u(2, n - 2 * k - 1)});
    f.push_back({"b", pow_u(2, k), pow_u(2, n - 2 * k)});
  }
  if (n % 2 == 0) {
    f.push_back({"a", pow_u(2, m), 1});
    f.push_back({"b", pow_u(2, m), 2});
  } else {
    f.push_back({"a", pow_u(2, m), 2});
    f.push_back({"b", pow_u(2, m), 2});
    f.push_back({"b", pow_u(2, m + 1), 1});
  }
  return f;
}

GenFunSet basilica_gamma(int n, bool weighted, const LabelWeights& w) {
  require_level(n, 1, 24);
  GenFunSet g{Family::Basilica, n, weighted ? Labeling::Labels : Labeling::Plain, one(), {}};
  for (const auto& f : basilica_cycle_factors(n)) {
    LaurentPoly x = weighted ? weight_of(w, f.label) : var("z");
    g.gamma *= (one() + x.pow(static_cast<long>(f.length))).pow(static_cast<long>(f.multiplicity));
  }
  return g;
}

// ---- Hanoi and Sierpinski ----------------------------------------------------

PsiTower psi_tower(Family f, int count) {
  if (f != Family::Hanoi && f != Family::Sierpinski) throw FamilyMismatch("psi tower needs hanoi or sierpinski");
  PsiTower t;
  t.var = f == Family::Hanoi ? "z" : "u";
  LaurentPoly x = var(t.var);
  for (int k = 1; k <= count; ++k) {
    LaurentPoly psi;
    if (k == 1)
      psi = f == Family::Hanoi ? (x + 1) * x.pow(-1) : (x.pow(2) + 1) * x.pow(-1);
    else if (k == 2 && f == Family::Sierpinski)
      psi = (x.pow(4) + 1) * x.pow(-2);
    else
      psi = t.psi.back() * t.psi.back() - mpz_class(3) * t.psi.back() + one() * mpz_class(4);
    t.phi.push_back(psi * x.pow(1 << (k - 1)));
    t.psi.push_back(std::move(psi));
  }
  return t;
}

namespace {

// Gamma_n = x^e * prod psi_k^(3^(n-k)) * (psi_{n+1} - 1), Upsilon_n = x^f * prod psi_k^(3^(n-k)).
std::pair<LaurentPoly, LaurentPoly> psi_closed_form(Family f, int n, int gamma_shift, int upsilon_shift) {
  PsiTower t = psi_tower(f, n + 1);
  LaurentPoly x = var(t.var);
  LaurentPoly prod = one();
  for (int k = 1; k <= n; ++k)
    prod *= t.psi[static_cast<std::size_t>(k - 1)].pow(static_cast<long>(pow_u(3, n - k)));
  LaurentPoly gamma = x.pow(gamma_shift) * prod * (t.psi[static_cast<std::size_t>(n)] - 1);
  LaurentPoly ups = x.pow(upsilon_shift) * prod;
  return {gamma, ups};
}

struct Weighted3 {
  LaurentPoly gamma, lr, lu, ru;
};

Weighted3 iterate_weighted(Weighted3 s, int from, int to, const LaurentPoly& tri, const LaurentPoly& a,
                           const LaurentPoly& bc, const LaurentPoly& c, const LaurentPoly& ab,
                           const LaurentPoly& b, const LaurentPoly& ac) {
  for (int k = from; k < to; ++k) {
    Weighted3 n;
    n.gamma = s.gamma.pow(3) + tri * s.lr * s.lu * s.ru;
    n.lu = a * s.lr * s.ru * s.gamma + bc * s.lu.pow(3);
    n.ru = c * s.lu * s.lr * s.gamma + ab * s.ru.pow(3);
    n.lr = b * s.lu * s.ru * s.gamma + ac * s.lr.pow(3);
    s = std::move(n);
  }
  return s;
}

GenFunSet from_weighted(Family f, int n, const Weighted3& s) {
  GenFunSet g{f, n, Labeling::Labels, s.gamma, {}};
  g.aux["upsilon_lr"] = s.lr;
  g.aux["upsilon_lu"] = s.lu;
  g.aux["upsilon_ru"] = s.ru;
  return g;
}

}  // namespace

GenFunSet hanoi_gamma_recursive(int n) {
  require_level(n, 1, 12);
  LaurentPoly z = var("z");
  LaurentPoly gamma = one() + z.pow(3), ups = z + z.pow(2);
  const LaurentPoly z2 = z.pow(2), z3 = z.pow(3);
  for (int k = 1; k < n; ++k) {
    LaurentPoly u2 = ups * ups, u3 = u2 * ups;
    LaurentPoly next_gamma = gamma.pow(3) + z3 * u3;
    ups = z * u2 * gamma + z2 * u3;
    gamma = std::move(next_gamma);
  }
  return {Family::Hanoi, n, Labeling::Plain, gamma, {{"upsilon", ups}}};
}

GenFunSet hanoi_gamma_closed(int n) {
  require_level(n, 1, 12);
  const int N = static_cast<int>(pow_u(3, n));
  auto [gamma, ups] = psi_closed_form(Family::Hanoi, n, N, N - 1);
  return {Family::Hanoi, n, Labeling::Plain, gamma, {{"upsilon", ups}}};
}

GenFunSet hanoi_gamma_weighted(int n, const LabelWeights& w) {
  require_level(n, 1, 8);
  LaurentPoly a = weight_of(w, "a"), b = weight_of(w, "b"), c = weight_of(w, "c");
  LaurentPoly ab = a * b, ac = a * c, bc = b * c, abc = ab * c;
  Weighted3 s{one() + abc, ac + b, a + bc, c + ab};
  return from_weighted(Family::Hanoi, n, iterate_weighted(s, 1, n, abc, a, bc, c, ab, b, ac));
}

GenFunSet sierpinski_gamma_recursive(int n) {
  require_level(n, 1, 12);
  LaurentPoly z = var("z");
  LaurentPoly gamma = one() + z.pow(3), ups = z + z.pow(2);
  for (int k = 1; k < n; ++k) {
    LaurentPoly u2 = ups * ups, u3 = u2 * ups;
    LaurentPoly next_gamma = gamma.pow(3) + u3;
    ups = u3 + u2 * gamma;
    gamma = std::move(next_gamma);
  }
  return {Family::Sierpinski, n, Labeling::Plain, gamma, {{"upsilon", ups}}};
}

GenFunSet sierpinski_gamma_closed(int n) {
  require_level(n, 1, 12);
  const int N = static_cast<int>(pow_u(3, n));
  auto [gamma_u, ups_u] = psi_closed_form(Family::Sierpinski, n, N, N);
  return {Family::Sierpinski, n, Labeling::Plain, u_to_z(gamma_u), {{"upsilon", u_to_z(ups_u)}}};
}

GenFunSet sierpinski_gamma_weighted(int n, const LabelWeights& w) {
  require_level(n, 1, 8);
  LaurentPoly a = weight_of(w, "a"), b = weight_of(w, "b"), c = weight_of(w, "c");
  LaurentPoly ab = a * b, ac = a * c, bc = b * c;
  Weighted3 s{one() + ab * c, ac + b, a + bc, c + ab};
  return from_weighted(Family::Sierpinski, n, iterate_weighted(s, 1, n, one(), one(), one(), one(), one(), one(), one()));
}

namespace {

struct RotationSeeds {
  LaurentPoly gamma2, ups2, q, base, phi3;
};

RotationSeeds rotation_seeds(const LabelWeights& w) {
  LaurentPoly a = weight_of(w, "a"), b = weight_of(w, "b"), c = weight_of(w, "c");
  LaurentPoly ab = a * b, abc = ab * c;
  LaurentPoly a2b2 = ab * ab, c2 = c * c;
  RotationSeeds s;
  s.q = (a + b * c) * (b + a * c);
  s.base = (one() + c) * (one() + ab);
  LaurentPoly core = a2b2 * c2 - a2b2 * c + a2b2 + mpz_class(4) * abc - abc * c - ab + c2 - c + 1;
  s.gamma2 = s.base * core;
  s.ups2 = s.base * s.q;
  s.phi3 = a2b2 * c2 - a2b2 * c + a2b2 + mpz_class(4) * abc + c2 - c + 1 + a * a * c + b * b * c;
  return s;
}

}  // namespace

GenFunSet sierpinski_gamma_rotation_invariant(int n, const LabelWeights& w) {
  require_level(n, 2, 7);
  RotationSeeds s = rotation_seeds(w);
  LaurentPoly gamma = s.gamma2, ups = s.ups2;
  for (int k = 2; k < n; ++k) {
    LaurentPoly u2 = ups * ups, u3 = u2 * ups;
    LaurentPoly next_gamma = gamma.pow(3) + u3;
    ups = u3 + u2 * gamma;
    gamma = std::move(next_gamma);
  }
  return {Family::Sierpinski, n, Labeling::Rotation, gamma, {{"upsilon", ups}}};
}

GenFunSet sierpinski_rotation_closed(int n, const LabelWeights& w) {
  require_level(n, 2, 7);
  RotationSeeds s = rotation_seeds(w);
  // phi_k = psi_k * Q^(2^(k-3)) for k >= 3.
  std::vector<LaurentPoly> phi{s.phi3};
  std::vector<LaurentPoly> qpow{one(), s.q};  // qpow[j] = Q^(2^(j-1)), qpow[0] = 1
  for (int j = 2; j <= n; ++j) qpow.push_back(qpow.back() * qpow.back());
  auto Q2 = [&](int e) -> const LaurentPoly& { return qpow[static_cast<std::size_t>(e + 1)]; };  // Q^(2^e)
  for (int k = 4; k <= n + 1; ++k) {
    const LaurentPoly& p = phi.back();
    phi.push_back(p * p - mpz_class(3) * Q2(k - 4) * p + mpz_class(4) * Q2(k - 3));
  }
  LaurentPoly prod = s.base.pow(static_cast<long>(pow_u(3, n - 2)));
  for (int k = 3; k <= n; ++k) prod *= phi[static_cast<std::size_t>(k - 3)].pow(static_cast<long>(pow_u(3, n - k)));
  LaurentPoly gamma = prod * (phi[static_cast<std::size_t>(n - 2)] - Q2(n - 2));
  LaurentPoly ups = prod * Q2(n - 2);
  return {Family::Sierpinski, n, Labeling::Rotation, gamma, {{"upsilon", ups}}};
}

GenFunSet compute(Family f, int n, Labeling l) {
  if (l == Labeling::Rotation && f != Family::Sierpinski)
    throw FamilyMismatch("rotation-invariant labeling exists only for sierpinski graphs");
  const bool weighted = l == Labeling::Labels;
  switch (f) {
    case Family::Grigorchuk: return grigorchuk_gamma(n, weighted);
    case Family::Basilica: return basilica_gamma(n, weighted);
    case Family::Hanoi: return weighted ? hanoi_gamma_weighted(n) : hanoi_gamma_recursive(n);
    case Family::Sierpinski:
      if (l == Labeling::Rotation) return sierpinski_gamma_rotation_invariant(n);
      return weighted ? sierpinski_gamma_weighted(n) : sierpinski_gamma_recursive(n);
  }
  throw FamilyMismatch("unknown family");
}

nlohmann::json to_json(const GenFunSet& g) {
  nlohmann::json aux = nlohmann::json::object();
  for (const auto& [k, v] : g.aux) aux[k] = poly::to_json(v);
  return {{"family", graph::family_name(g.family)},
          {"level", g.level},
          {"labeling", labeling_name(g.labeling)},
          {"gamma-degree", g.gamma.total_degree()},
          {"gamma-at-1", g.gamma.sum_of_coefficients().get_str()},
          {"gamma", poly::to_json(g.gamma)},
          {"aux", aux}};
}

}  // namespace selfsim::genfun
