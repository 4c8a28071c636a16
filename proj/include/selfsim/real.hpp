#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>

namespace selfsim {

// 80 decimal digits of working precision; results are reported to 50.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>,
                                           boost::multiprecision::et_off>;

inline std::string to_sci(const Real& x, int digits = 20) {
  return x.str(digits, std::ios_base::scientific);
}

}  // namespace selfsim
