#include <algorithm>

#include "selfsim/poly.hpp"

namespace selfsim::poly {

mpq_class Cumulants::skewness_squared() const {
  if (variance == 0) throw StatisticsUndefined("variance is zero");
  return kappa3 * kappa3 / (variance * variance * variance);
}

mpq_class Cumulants::excess_kurtosis() const {
  if (variance == 0) throw StatisticsUndefined("variance is zero");
  return kappa4 / (variance * variance);
}

Real Cumulants::skewness() const {
  if (variance == 0) throw StatisticsUndefined("variance is zero");
  Real s = boost::multiprecision::sqrt(to_real(variance));
  return to_real(kappa3) / (s * s * s);
}

Cumulants log_derivative_stats(const LaurentPoly& p, const std::string& var) {
  if (p.is_zero()) throw StatisticsUndefined("zero polynomial");
  if (!p.all_coefficients_nonnegative())
    throw StatisticsUndefined("coefficients of mixed sign");
  const auto& vars = p.vars();
  auto it = std::lower_bound(vars.begin(), vars.end(), var);
  bool present = it != vars.end() && *it == var;
  std::size_t idx = static_cast<std::size_t>(it - vars.begin());

  // Power sums S_j = ((x d/dx)^j P)(1) of the marginal in `var`.
  mpz_class s[5] = {0, 0, 0, 0, 0};
  for (const auto& [e, c] : p.terms()) {
    mpz_class k = present ? e[idx] : 0;
    mpz_class kp = 1;
    for (int j = 0; j < 5; ++j) {
      s[j] += c * kp;
      kp *= k;
    }
  }
  mpq_class m1(s[1], s[0]), m2(s[2], s[0]), m3(s[3], s[0]), m4(s[4], s[0]);
  m1.canonicalize();
  m2.canonicalize();
  m3.canonicalize();
  m4.canonicalize();
  Cumulants out;
  out.mean = m1;
  mpq_class c2 = m2 - m1 * m1;
  mpq_class c3 = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
  mpq_class c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
  out.variance = c2;
  out.kappa3 = c3;
  out.kappa4 = c4 - 3 * c2 * c2;
  return out;
}

}  // namespace selfsim::poly
