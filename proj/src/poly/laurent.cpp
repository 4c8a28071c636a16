#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "selfsim/poly.hpp"

namespace selfsim::poly {

namespace {

struct ExpHash {
  std::size_t operator()(const Exponents& e) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : e) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(x))) * 1099511628211ull;
    return h;
  }
};

long total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0L); }

std::size_t index_of(const std::vector<std::string>& vars, const std::string& v) {
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || *it != v) return vars.size();
  return static_cast<std::size_t>(it - vars.begin());
}

}  // namespace

bool GradedLex::operator()(const Exponents& x, const Exponents& y) const {
  long tx = total(x), ty = total(y);
  if (tx != ty) return tx < ty;
  return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
}

std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LaurentPoly LaurentPoly::constant(const mpz_class& c) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace(Exponents{}, c);
  return p;
}

LaurentPoly LaurentPoly::variable(const std::string& name, int exponent) {
  LaurentPoly p;
  p.vars_ = {name};
  p.terms_.emplace(Exponents{exponent}, mpz_class(1));
  return p;
}

LaurentPoly LaurentPoly::monomial(const std::vector<std::string>& vars, const Exponents& exps,
                                  const mpz_class& coef) {
  return from_terms(vars, {{exps, coef}});
}

LaurentPoly LaurentPoly::from_terms(const std::vector<std::string>& vars,
                                    const std::vector<std::pair<Exponents, mpz_class>>& terms) {
  std::vector<std::string> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UnsupportedOperation("duplicate variable name");
  std::vector<std::size_t> pos(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) pos[i] = index_of(sorted, vars[i]);
  LaurentPoly p;
  p.vars_ = sorted;
  for (const auto& [e, c] : terms) {
    if (e.size() != vars.size()) throw UnsupportedOperation("exponent vector length mismatch");
    Exponents f(sorted.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) f[pos[i]] = e[i];
    mpz_class& slot = p.terms_[f];
    slot += c;
    if (slot == 0) p.terms_.erase(f);
  }
  return p;
}

LaurentPoly LaurentPoly::from_dense(const std::string& var, int low,
                                    const std::vector<mpz_class>& coefs) {
  LaurentPoly p;
  p.vars_ = {var};
  auto hint = p.terms_.end();
  for (std::size_t i = 0; i < coefs.size(); ++i)
    if (coefs[i] != 0) hint = p.terms_.emplace_hint(hint, Exponents{low + static_cast<int>(i)}, coefs[i]);
  return p;
}

bool LaurentPoly::has_var(const std::string& v) const { return index_of(vars_, v) < vars_.size(); }

mpz_class LaurentPoly::coefficient(const std::map<std::string, int>& mono) const {
  Exponents e(vars_.size(), 0);
  for (const auto& [v, k] : mono) {
    std::size_t i = index_of(vars_, v);
    if (i == vars_.size()) {
      if (k != 0) return 0;
      continue;
    }
    e[i] = k;
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

mpz_class LaurentPoly::constant_term() const { return coefficient({}); }

int LaurentPoly::min_exponent(const std::string& v) const {
  std::size_t i = index_of(vars_, v);
  if (i == vars_.size() || terms_.empty()) return 0;
  int m = terms_.begin()->first[i];
  for (const auto& t : terms_) m = std::min(m, t.first[i]);
  return m;
}

int LaurentPoly::max_exponent(const std::string& v) const {
  std::size_t i = index_of(vars_, v);
  if (i == vars_.size() || terms_.empty()) return 0;
  int m = terms_.begin()->first[i];
  for (const auto& t : terms_) m = std::max(m, t.first[i]);
  return m;
}

int LaurentPoly::total_degree() const {
  return terms_.empty() ? 0 : static_cast<int>(total(terms_.rbegin()->first));
}

bool LaurentPoly::all_coefficients_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

mpz_class LaurentPoly::sum_of_coefficients() const {
  mpz_class s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

LaurentPoly LaurentPoly::embed(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<std::string> target = vars;
  std::sort(target.begin(), target.end());
  std::vector<std::size_t> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    pos[i] = index_of(target, vars_[i]);
    if (pos[i] == target.size()) throw UnsupportedOperation("embed: variable " + vars_[i] + " missing");
  }
  LaurentPoly p;
  p.vars_ = target;
  for (const auto& [e, c] : terms_) {
    Exponents f(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) f[pos[i]] = e[i];
    p.terms_.emplace(std::move(f), c);
  }
  return p;
}

LaurentPoly LaurentPoly::trimmed() const {
  std::vector<std::string> keep;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (std::any_of(terms_.begin(), terms_.end(), [i](const auto& t) { return t.first[i] != 0; }))
      keep.push_back(vars_[i]);
  if (keep.size() == vars_.size()) return *this;
  LaurentPoly p;
  p.vars_ = keep;
  for (const auto& [e, c] : terms_) {
    Exponents f;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (index_of(keep, vars_[i]) < keep.size()) f.push_back(e[i]);
    p.terms_.emplace(std::move(f), c);
  }
  return p;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  auto vars = union_vars(vars_, o.vars_);
  if (vars != vars_) *this = embed(vars);
  const LaurentPoly& r = (o.vars_ == vars) ? o : o.embed(vars);
  LaurentPoly tmp;
  const LaurentPoly* src = &r;
  if (&r == this) {
    tmp = r;
    src = &tmp;
  }
  for (const auto& [e, c] : src->terms_) {
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

namespace {

LaurentPoly mul_dense(const LaurentPoly& a, const LaurentPoly& b, const std::string& var) {
  int alo = a.min_exponent(var), ahi = a.max_exponent(var);
  int blo = b.min_exponent(var), bhi = b.max_exponent(var);
  std::vector<std::pair<int, const mpz_class*>> as, bs;
  as.reserve(a.size());
  bs.reserve(b.size());
  for (const auto& [e, c] : a.terms()) as.emplace_back(e.empty() ? 0 : e[0], &c);
  for (const auto& [e, c] : b.terms()) bs.emplace_back(e.empty() ? 0 : e[0], &c);
  std::vector<mpz_class> out(static_cast<std::size_t>(ahi - alo + bhi - blo + 1));
  for (const auto& [ea, ca] : as)
    for (const auto& [eb, cb] : bs)
      mpz_addmul(out[static_cast<std::size_t>(ea - alo + eb - blo)].get_mpz_t(), ca->get_mpz_t(),
                 cb->get_mpz_t());
  return LaurentPoly::from_dense(var, alo + blo, out);
}

// Kronecker-packed product: exponent vectors become integer offsets so that
// accumulation needs no vector keys.
bool mul_packed(const LaurentPoly& a, const LaurentPoly& b, const std::vector<std::string>& vars,
                LaurentPoly& out) {
  const std::size_t nv = vars.size();
  std::vector<long> alo(nv), blo(nv), span(nv), stride(nv);
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < nv; ++i) {
    alo[i] = a.min_exponent(vars[i]);
    blo[i] = b.min_exponent(vars[i]);
    span[i] = (a.max_exponent(vars[i]) - alo[i]) + (b.max_exponent(vars[i]) - blo[i]) + 1;
  }
  for (std::size_t i = nv; i-- > 0;) {
    stride[i] = static_cast<long>(total);
    total *= static_cast<unsigned __int128>(span[i]);
    if (total > (static_cast<unsigned __int128>(1) << 62)) return false;
  }
  auto pack = [&](const LaurentPoly& p, const std::vector<long>& lo) {
    std::vector<std::pair<std::uint64_t, const mpz_class*>> v;
    v.reserve(p.size());
    for (const auto& [e, c] : p.terms()) {
      std::uint64_t k = 0;
      for (std::size_t i = 0; i < nv; ++i) k += static_cast<std::uint64_t>((e[i] - lo[i]) * stride[i]);
      v.emplace_back(k, &c);
    }
    return v;
  };
  const auto pa = pack(a, alo), pb = pack(b, blo);
  std::vector<std::pair<Exponents, mpz_class>> terms;
  auto unpack = [&](std::uint64_t k) {
    Exponents e(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      e[i] = static_cast<int>(static_cast<long>(k / static_cast<std::uint64_t>(stride[i])) + alo[i] + blo[i]);
      k %= static_cast<std::uint64_t>(stride[i]);
    }
    return e;
  };
  const std::uint64_t size = static_cast<std::uint64_t>(total);
  if (size <= std::max<std::uint64_t>(1u << 22, 4 * static_cast<std::uint64_t>(pa.size() * pb.size()))) {
    std::vector<mpz_class> acc(size);
    for (const auto& [ka, ca] : pa)
      for (const auto& [kb, cb] : pb) mpz_addmul(acc[ka + kb].get_mpz_t(), ca->get_mpz_t(), cb->get_mpz_t());
    for (std::uint64_t k = 0; k < size; ++k)
      if (acc[k] != 0) terms.emplace_back(unpack(k), std::move(acc[k]));
  } else {
    std::unordered_map<std::uint64_t, mpz_class> acc;
    acc.reserve(pa.size() * pb.size());
    for (const auto& [ka, ca] : pa)
      for (const auto& [kb, cb] : pb) mpz_addmul(acc[ka + kb].get_mpz_t(), ca->get_mpz_t(), cb->get_mpz_t());
    for (auto& [k, c] : acc)
      if (c != 0) terms.emplace_back(unpack(k), std::move(c));
  }
  out = LaurentPoly::from_terms(vars, terms);
  return true;
}

}  // namespace

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  auto vars = union_vars(a.vars(), b.vars());
  const LaurentPoly ea = a.embed(vars), eb = b.embed(vars);
  if (vars.size() == 1) return mul_dense(ea, eb, vars[0]);
  LaurentPoly packed;
  if (mul_packed(ea, eb, vars, packed)) return packed;
  std::unordered_map<Exponents, mpz_class, ExpHash> acc;
  acc.reserve(ea.size() * eb.size());
  Exponents e(vars.size());
  for (const auto& [xa, ca] : ea.terms())
    for (const auto& [xb, cb] : eb.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = xa[i] + xb[i];
      mpz_class& slot = acc[e];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  std::vector<std::pair<Exponents, mpz_class>> terms;
  terms.reserve(acc.size());
  for (auto& [x, c] : acc)
    if (c != 0) terms.emplace_back(x, std::move(c));
  return LaurentPoly::from_terms(vars, terms);
}

LaurentPoly LaurentPoly::pow(long k) const {
  if (k < 0) {
    if (!is_monomial() || (terms_.begin()->second != 1 && terms_.begin()->second != -1))
      throw UnsupportedOperation("negative power of a non-unit Laurent polynomial");
    LaurentPoly inv = *this;
    Exponents e = terms_.begin()->first;
    for (int& x : e) x = -x;
    inv.terms_.clear();
    inv.terms_.emplace(e, terms_.begin()->second);
    return inv.pow(-k);
  }
  LaurentPoly result = constant(1);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::divide_exact(const mpz_class& d) const {
  if (d == 0) throw PoleError("division by zero");
  LaurentPoly p = *this;
  for (auto& t : p.terms_) {
    if (!mpz_divisible_p(t.second.get_mpz_t(), d.get_mpz_t()))
      throw InternalInconsistency("coefficient not divisible by " + d.get_str());
    mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), d.get_mpz_t());
  }
  return p;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (vars_ == o.vars_) return terms_ == o.terms_;
  auto vars = union_vars(vars_, o.vars_);
  return embed(vars).terms_ == o.embed(vars).terms_;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class mag = abs(c);
    bool unit = true;
    for (int x : e) unit = unit && x == 0;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || unit) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars_[i];
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

LaurentPoly operator+(LaurentPoly a, long c) { return a += LaurentPoly::constant(c); }
LaurentPoly operator-(LaurentPoly a, long c) { return a -= LaurentPoly::constant(c); }

LaurentPoly substitute(const LaurentPoly& p, const std::map<std::string, LaurentPoly>& assignment) {
  const auto& vars = p.vars();
  std::vector<const LaurentPoly*> image(vars.size(), nullptr);
  std::vector<LaurentPoly> identity(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = assignment.find(vars[i]);
    if (it != assignment.end()) {
      image[i] = &it->second;
    } else {
      identity[i] = LaurentPoly::variable(vars[i]);
      image[i] = &identity[i];
    }
  }
  std::vector<std::map<int, LaurentPoly>> cache(vars.size());
  auto power = [&](std::size_t i, int k) -> const LaurentPoly& {
    auto it = cache[i].find(k);
    if (it != cache[i].end()) return it->second;
    return cache[i].emplace(k, image[i]->pow(k)).first->second;
  };
  LaurentPoly out;
  for (const auto& [e, c] : p.terms()) {
    LaurentPoly term = LaurentPoly::constant(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = term * power(i, e[i]);
    out += term;
  }
  return out;
}

mpq_class evaluate(const LaurentPoly& p, const std::map<std::string, mpq_class>& assignment) {
  const auto& vars = p.vars();
  std::vector<mpq_class> val(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = assignment.find(vars[i]);
    if (it == assignment.end()) throw UnsupportedOperation("variable " + vars[i] + " not assigned");
    val[i] = it->second;
  }
  mpq_class sum = 0;
  for (const auto& [e, c] : p.terms()) {
    mpq_class term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (val[i] == 0 && e[i] < 0) throw PoleError("pole at " + vars[i] + " = 0");
      unsigned long k = static_cast<unsigned long>(e[i] < 0 ? -e[i] : e[i]);
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), val[i].get_num_mpz_t(), k);
      mpz_pow_ui(den.get_mpz_t(), val[i].get_den_mpz_t(), k);
      mpq_class f = (e[i] > 0) ? mpq_class(num, den) : mpq_class(den, num);
      f.canonicalize();
      term *= f;
    }
    sum += term;
  }
  return sum;
}

Real evaluate_real(const LaurentPoly& p, const std::map<std::string, Real>& assignment) {
  const auto& vars = p.vars();
  std::vector<Real> val(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = assignment.find(vars[i]);
    if (it == assignment.end()) throw UnsupportedOperation("variable " + vars[i] + " not assigned");
    val[i] = it->second;
  }
  Real sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Real term = to_real(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (val[i] == 0 && e[i] < 0) throw PoleError("pole at " + vars[i] + " = 0");
      term *= boost::multiprecision::pow(val[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

LaurentPoly invert_variable(const LaurentPoly& p, const std::string& var) {
  std::size_t i = index_of(p.vars(), var);
  if (i == p.vars().size()) return p;
  std::vector<std::pair<Exponents, mpz_class>> terms;
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    f[i] = -f[i];
    terms.emplace_back(std::move(f), c);
  }
  return LaurentPoly::from_terms(p.vars(), terms);
}

nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"coef", c.get_str()}, {"exps", e}});
  return {{"vars", p.vars()}, {"terms", terms}};
}

LaurentPoly from_json(const nlohmann::json& j) {
  auto vars = j.at("vars").get<std::vector<std::string>>();
  std::vector<std::pair<Exponents, mpz_class>> terms;
  for (const auto& t : j.at("terms"))
    terms.emplace_back(t.at("exps").get<Exponents>(), mpz_class(t.at("coef").get<std::string>()));
  return LaurentPoly::from_terms(vars, terms);
}

std::string mpq_to_string(const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Real to_real(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

}  // namespace selfsim::poly
