#pragma once

// Zonal expansions of the Newton kernel |x-y|^{2-N} and of the radial
// derivative of the fundamental solution, for the two orderings of |x|, |y|:
//
//   |x-y|^{2-N} = sum_m (N-2)/(2m+N-2) r_<^m / r_>^{m+N-2} Z_m(x', y').

#include <algorithm>
#include <cmath>
#include <string>

#include "annulus_green/coefficients.hpp"
#include "annulus_green/errors.hpp"
#include "annulus_green/harmonics.hpp"
#include "annulus_green/point.hpp"
#include "annulus_green/series.hpp"

namespace annulus_green {

namespace detail {

inline void require_same_dim(const EvalPoint& x, const EvalPoint& y, int dim, const char* who) {
  detail::require_dimension(dim, who);
  if (x.dim() != dim || y.dim() != dim) {
    throw DomainError(std::string(who) + ": point dimension does not match N=" + std::to_string(dim));
  }
}

inline void require_distinct_radii(const EvalPoint& x, const EvalPoint& y, const char* who) {
  if (x.radius() == y.radius()) {
    throw BranchError(std::string(who) + ": |x| = |y|, neither expansion branch applies");
  }
}

/// Z_m(x', y') for m = 0, 1, 2, ... stepped in lockstep with a series.
class ZonalSequence {
 public:
  ZonalSequence(int dim, double t) : dim_(dim), gegenbauer_(gegenbauer_lambda(dim), t) {}

  /// Z_m at the requested order; orders must be requested in ascending order.
  double at(int m) {
    while (gegenbauer_.order() < m) gegenbauer_.advance();
    if (m == 0) return 1.0;
    return (2.0 * m + dim_ - 2.0) / (dim_ - 2.0) * gegenbauer_.value();
  }

 private:
  int dim_;
  GegenbauerSequence gegenbauer_;
};

/// Z_m(xi, xi) stepped incrementally.
class ZonalDiagonalSequence {
 public:
  explicit ZonalDiagonalSequence(int dim) : dim_(dim) {}

  double at(int m) {
    while (m_ < m) {
      ++m_;
      c_ *= (dim_ - 2.0 + m_ - 1.0) / m_;
    }
    if (m == 0) return 1.0;
    return (2.0 * m + dim_ - 2.0) / (dim_ - 2.0) * c_;
  }

 private:
  int dim_;
  int m_ = 0;
  double c_ = 1.0;
};

}  // namespace detail

/// 1/|x-y|^{N-2}. The fundamental solution is this divided by omega (N-2).
inline double newton_kernel_direct(const EvalPoint& x, const EvalPoint& y, int dim) {
  detail::require_same_dim(x, y, dim, "newton_kernel_direct");
  const double d = distance(x, y);
  if (d == 0.0) throw SingularityError("newton_kernel_direct: coincident points");
  return 1.0 / std::pow(d, dim - 2);
}

/// Fundamental solution Gamma(x - y) = 1/(omega (N-2) |x-y|^{N-2}).
inline double fundamental_solution(const EvalPoint& x, const EvalPoint& y, int dim) {
  return newton_kernel_direct(x, y, dim) / (surface_area(dim) * (dim - 2.0));
}

inline SeriesValue newton_kernel_series(const EvalPoint& x, const EvalPoint& y, int dim,
                                        const Truncation& tr) {
  detail::require_same_dim(x, y, dim, "newton_kernel_series");
  detail::require_distinct_radii(x, y, "newton_kernel_series");
  const double r_lo = std::min(x.radius(), y.radius());
  const double r_hi = std::max(x.radius(), y.radius());
  const double q = r_lo / r_hi;
  const double base = 1.0 / ipow(r_hi, dim - 2);
  detail::ZonalSequence zonal_seq(dim, cosine(x, y));
  detail::ZonalDiagonalSequence diag_seq(dim);
  return sum_series(0, tr, q, dim, [&](int m) {
    const double radial = (dim - 2.0) / (2.0 * m + dim - 2.0) * ipow(q, m) * base;
    return SeriesTerm{radial * zonal_seq.at(m), radial * diag_seq.at(m)};
  });
}

/// d/dr Gamma(y - x) with r = |y| and the direction of y held fixed.
///   |y| < |x|:  (1/omega) sum  m/(2m+N-2)     |y|^{m-1} / |x|^{m+N-2} Z_m
///   |x| < |y|:  (1/omega) sum -(m+N-2)/(2m+N-2) |x|^m  / |y|^{m+N-1} Z_m
inline SeriesValue radial_derivative_series(const EvalPoint& x, const EvalPoint& y, int dim,
                                            const Truncation& tr) {
  detail::require_same_dim(x, y, dim, "radial_derivative_series");
  detail::require_distinct_radii(x, y, "radial_derivative_series");
  const double rho = x.radius();
  const double r = y.radius();
  const double inv_omega = 1.0 / surface_area(dim);
  detail::ZonalSequence zonal_seq(dim, cosine(x, y));
  detail::ZonalDiagonalSequence diag_seq(dim);
  if (r < rho) {
    const double q = r / rho;
    const double base = inv_omega / ipow(rho, dim - 1);  // |y|^{m-1}/|x|^{m+N-2} = q^{m-1}/|x|^{N-1}
    return sum_series(0, tr, q, dim, [&](int m) {
      if (m == 0) return SeriesTerm{0.0, 0.0};
      const double radial = m / (2.0 * m + dim - 2.0) * ipow(q, m - 1) * base;
      return SeriesTerm{radial * zonal_seq.at(m), radial * diag_seq.at(m)};
    });
  }
  const double q = rho / r;
  const double base = inv_omega / ipow(r, dim - 1);  // |x|^m/|y|^{m+N-1} = q^m/|y|^{N-1}
  return sum_series(0, tr, q, dim, [&](int m) {
    const double radial = -(m + dim - 2.0) / (2.0 * m + dim - 2.0) * ipow(q, m) * base;
    return SeriesTerm{radial * zonal_seq.at(m), std::abs(radial) * diag_seq.at(m)};
  });
}

struct TruncationEnvelope {
  double envelope = 0.0;  // bound on |m-th H-series term| over all directions
  double ratio = 0.0;     // geometric ratio q = max(rho r, a^2/(rho r))
  bool converges = true;  // q < 1
};

/// Envelope of the m-th term of the regular-part series,
/// (|A_m(rho)| r^m + |B_m(rho)| r^{-(m+N-2)}) Z_m(xi, xi) / omega.
inline TruncationEnvelope truncation_bound(int m, double rho, double r, double a, int dim) {
  detail::require_order(m, "truncation_bound");
  const Annulus dom(dim, a);
  detail::require_radius_in_shell(dom, rho, "truncation_bound");
  detail::require_radius_in_shell(dom, r, "truncation_bound");
  const auto mono = detail::radial_monomials(m, dim, a, rho, r);
  TruncationEnvelope env;
  env.envelope = mono.magnitude() * zonal_diagonal(m, dim) / dom.omega();
  env.ratio = std::max(rho * r, a * a / (rho * r));
  env.converges = env.ratio < 1.0;
  return env;
}

}  // namespace annulus_green
