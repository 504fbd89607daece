#pragma once

// Truncation policy and the common driver for the zonal series.

#include <algorithm>
#include <cmath>
#include <limits>

#include "annulus_green/errors.hpp"

namespace annulus_green {

struct Truncation {
  int max_order = 1000;
  double rel_tol = 1e-15;
  bool adaptive = true;

  void validate() const {
    // max_order == 0 is accepted: it keeps only the m = 0 sector.
    if (max_order < 0) throw DomainError("truncation: max order must be non-negative");
    if (!(rel_tol > 0.0)) throw DomainError("truncation: relative tolerance must be positive");
  }

  static Truncation fixed(int order) { return Truncation{order, 1e-15, false}; }
};

/// Truncated series value. terms_used is the highest order summed.
/// tail_estimate bounds the discarded remainder when reliable is true; when
/// the convergence certificate fails it is only the size of the next term.
struct SeriesValue {
  double value = 0.0;
  int terms_used = 0;
  double tail_estimate = 0.0;
  bool reliable = true;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += std::abs(x);
  }
  double value() const { return sum_ + comp_; }
  double abs_sum() const { return abs_sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_sum_ = 0.0;
};

/// x^n by repeated squaring, n >= 0.
inline double ipow(double x, int n) {
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

struct SeriesTerm {
  double value;
  double envelope;  // upper bound on |value| over all directions
};

/// Bound on the ratio of successive envelopes from order j onward, for series
/// whose m-th envelope behaves like poly(m) * q^m with polynomial degree < dim.
inline double envelope_ratio_bound(double q, int j, int dim) {
  const double jj = std::max(j, 1);
  return q * (jj + dim) / jj * (jj + 1.0) / jj;
}

/// Sums term(m) for m = first, first+1, ... in ascending order.
///
/// Adaptive mode stops once three consecutive envelopes fall below
/// rel_tol * |partial sum|. After the loop one more envelope is computed and
/// the remainder is bounded geometrically with ratio bound from
/// envelope_ratio_bound(q, ...). q >= 1 disables the adaptive stop and marks
/// the result unreliable.
template <class TermFn>
SeriesValue sum_series(int first, const Truncation& tr, double q, int dim, TermFn&& term) {
  tr.validate();
  const bool certified = q < 1.0;
  const bool adaptive = tr.adaptive && certified;
  CompensatedSum sum;
  int last = first - 1;
  int quiet = 0;
  for (int m = first; m <= tr.max_order; ++m) {
    const SeriesTerm t = term(m);
    sum.add(t.value);
    last = m;
    if (adaptive) {
      if (t.envelope <= tr.rel_tol * std::abs(sum.value())) {
        ++quiet;
      } else {
        quiet = 0;
      }
      if (quiet >= 3) break;
    }
  }
  const int next = std::max(last + 1, first);
  const double next_env = term(next).envelope;
  SeriesValue out;
  out.value = sum.value();
  out.terms_used = std::max(last, 0);
  const double s = envelope_ratio_bound(q, next, dim);
  const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * sum.abs_sum();
  if (certified && s < 1.0) {
    out.tail_estimate = next_env / (1.0 - s) + rounding;
    out.reliable = true;
  } else {
    out.tail_estimate = next_env + rounding;
    out.reliable = false;
  }
  return out;
}

}  // namespace annulus_green
