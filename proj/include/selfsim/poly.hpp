#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "selfsim/errors.hpp"
#include "selfsim/real.hpp"

namespace selfsim::poly {

using Exponents = std::vector<int>;

// Ascending total degree, ties broken lexicographically with larger
// exponents of earlier variables first (a^2, ab, b^2).
struct GradedLex {
  bool operator()(const Exponents& x, const Exponents& y) const;
};

using TermMap = std::map<Exponents, mpz_class, GradedLex>;

// Multivariate Laurent polynomial with integer coefficients. Variables are kept
// sorted by name; zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly constant(const mpz_class& c);
  static LaurentPoly variable(const std::string& name, int exponent = 1);
  static LaurentPoly monomial(const std::vector<std::string>& vars, const Exponents& exps,
                              const mpz_class& coef);
  static LaurentPoly from_terms(const std::vector<std::string>& vars,
                                const std::vector<std::pair<Exponents, mpz_class>>& terms);
  // Univariate from dense coefficients: coefs[i] multiplies var^(low + i).
  static LaurentPoly from_dense(const std::string& var, int low, const std::vector<mpz_class>& coefs);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool has_var(const std::string& v) const;

  // Coefficient of a monomial given as var -> exponent (absent vars mean 0).
  mpz_class coefficient(const std::map<std::string, int>& mono) const;
  mpz_class constant_term() const;
  // Min/max exponent of one variable; 0 for absent variables or the zero poly.
  int min_exponent(const std::string& v) const;
  int max_exponent(const std::string& v) const;
  int total_degree() const;  // max total degree over terms
  bool all_coefficients_nonnegative() const;
  mpz_class sum_of_coefficients() const;

  // Same polynomial over a superset of variables.
  LaurentPoly embed(const std::vector<std::string>& vars) const;
  // Drop variables that occur with exponent 0 in every term.
  LaurentPoly trimmed() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const mpz_class& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const mpz_class& c) { return a *= c; }
  friend LaurentPoly operator*(const mpz_class& c, LaurentPoly a) { return a *= c; }

  // Negative powers are only defined for monomials with coefficient +-1.
  LaurentPoly pow(long k) const;

  // Exact division of every coefficient by d; throws if any is not divisible.
  LaurentPoly divide_exact(const mpz_class& d) const;

  // Equality ignores variables that do not occur.
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
};

LaurentPoly operator+(LaurentPoly a, long c);
LaurentPoly operator-(LaurentPoly a, long c);

std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b);

// Ring homomorphism sending each listed variable to a Laurent polynomial;
// unlisted variables map to themselves.
LaurentPoly substitute(const LaurentPoly& p, const std::map<std::string, LaurentPoly>& assignment);

// Every variable of p must be assigned.
mpq_class evaluate(const LaurentPoly& p, const std::map<std::string, mpq_class>& assignment);
Real evaluate_real(const LaurentPoly& p, const std::map<std::string, Real>& assignment);

// Reflect the exponents of one variable: p(v) -> p(1/v).
LaurentPoly invert_variable(const LaurentPoly& p, const std::string& var);

// Cumulants of the distribution k -> (sum of coefficients with var-exponent k),
// normalised by p(1,...,1). Requires nonnegative coefficients.
struct Cumulants {
  mpq_class mean;
  mpq_class variance;
  mpq_class kappa3;
  mpq_class kappa4;
  // kappa3^2 / variance^3 and kappa4 / variance^2; undefined when variance == 0.
  mpq_class skewness_squared() const;
  mpq_class excess_kurtosis() const;
  Real skewness() const;
};

Cumulants log_derivative_stats(const LaurentPoly& p, const std::string& var);

nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly from_json(const nlohmann::json& j);

std::string mpq_to_string(const mpq_class& q);  // "p/q" or "p"
Real to_real(const mpq_class& q);
Real to_real(const mpz_class& z);

}  // namespace selfsim::poly
