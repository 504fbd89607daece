#pragma once

// Reference Gegenbauer values straight from the generating function
//   (1 - 2 r t + r^2)^{-lambda} = (1 - u)^{-lambda},  u = r (2t - r),
// expanded in 100-digit binary floating point. Shares no code with the
// three-term recurrence in harmonics.hpp.

#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "annulus_green/errors.hpp"

namespace annulus_green::oracles {

using wide_float = boost::multiprecision::cpp_bin_float_100;

/// Coefficients of r^0 .. r^max_order in (1 - r(2t - r))^{-lambda}.
///
/// (1 - u)^{-lambda} = sum_j (lambda)_j / j! u^j and
/// u^j = r^j (2t - r)^j = sum_i binom(j, i) (2t)^{j-i} (-1)^i r^{j+i},
/// so each j contributes to orders j .. 2j.
inline std::vector<wide_float> gegenbauer_oracle_coefficients(int max_order, double lambda, double t) {
  if (max_order < 0) throw DomainError("gegenbauer_oracle: order must be non-negative");
  std::vector<wide_float> coeffs(max_order + 1, wide_float(0));
  const wide_float lam(lambda);
  const wide_float two_t = 2 * wide_float(t);
  wide_float binomial_series = 1;  // (lambda)_j / j!
  for (int j = 0; j <= max_order; ++j) {
    if (j > 0) binomial_series = binomial_series * (lam + (j - 1)) / j;
    // (2t - r)^j expanded by the binomial theorem, orders j + i <= max_order
    wide_float binom = 1;
    for (int i = 0; i <= j && j + i <= max_order; ++i) {
      if (i > 0) binom = binom * (j - i + 1) / i;
      wide_float term = binomial_series * binom * pow(two_t, j - i);
      if (i % 2 == 1) term = -term;
      coeffs[j + i] += term;
    }
  }
  return coeffs;
}

inline double gegenbauer_oracle(int m, double lambda, double t) {
  return static_cast<double>(gegenbauer_oracle_coefficients(m, lambda, t)[m]);
}

}  // namespace annulus_green::oracles
