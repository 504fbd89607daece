#pragma once

// Neumann Green function of the annulus a < |x| < 1 in R^N:
//
//   G(x, y) = Gamma(x - y) - H(x, y),
//
// with H the zonal series in coefficients.hpp. The series in y converges
// geometrically with ratio q = max(|x||y|, a^2/(|x||y|)).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "annulus_green/coefficients.hpp"
#include "annulus_green/errors.hpp"
#include "annulus_green/harmonics.hpp"
#include "annulus_green/kernel_expansion.hpp"
#include "annulus_green/point.hpp"
#include "annulus_green/series.hpp"

namespace annulus_green {

struct GreenEvaluation {
  double green = 0.0;
  double regular_part = 0.0;
  double singular_part = 0.0;
  double tail_estimate = 0.0;
  int terms_used = 0;
  bool reliable = true;
};

namespace detail {

inline void require_in_annulus(const EvalPoint& p, const Annulus& dom, const char* who) {
  if (p.dim() != dom.dim()) {
    throw DomainError(std::string(who) + ": point dimension does not match the annulus");
  }
  require_radius_in_shell(dom, p.radius(), who);
}

inline double convergence_ratio(const Annulus& dom, double rho, double r) {
  const double a = dom.inner_radius();
  return std::max(rho * r, a * a / (rho * r));
}

/// m >= 1 part of H, as a function of the two radii and the cosine.
/// Each term: (1/omega) (A_m(rho) r^m + B_m(rho) r^{-(m+N-2)}) Z_m(t).
inline SeriesValue regular_series(const Annulus& dom, double rho, double r, double t,
                                  const Truncation& tr) {
  const int n = dom.dim();
  const double a = dom.inner_radius();
  const double inv_omega = 1.0 / dom.omega();
  ZonalSequence zonal_seq(n, t);
  ZonalDiagonalSequence diag_seq(n);
  return sum_series(1, tr, convergence_ratio(dom, rho, r), n, [&](int m) {
    const auto mono = radial_monomials(m, n, a, rho, r);
    return SeriesTerm{mono.value() * zonal_seq.at(m) * inv_omega,
                      mono.magnitude() * diag_seq.at(m) * inv_omega};
  });
}

/// d/dr of the m >= 1 part of H at fixed direction of y.
inline SeriesValue regular_series_dr(const Annulus& dom, double rho, double r, double t,
                                     const Truncation& tr) {
  const int n = dom.dim();
  const double a = dom.inner_radius();
  const double inv_omega = 1.0 / dom.omega();
  ZonalSequence zonal_seq(n, t);
  ZonalDiagonalSequence diag_seq(n);
  return sum_series(1, tr, convergence_ratio(dom, rho, r), n, [&](int m) {
    const auto mono = radial_monomials(m, n, a, rho, r);
    const double up = m;
    const double down = m + n - 2.0;
    const double v = (up * (mono.t1 + mono.t2) - down * (mono.t3 + mono.t4)) / r;
    const double e = (up * (std::abs(mono.t1) + std::abs(mono.t2)) +
                      down * (std::abs(mono.t3) + std::abs(mono.t4))) / r;
    return SeriesTerm{v * zonal_seq.at(m) * inv_omega, e * diag_seq.at(m) * inv_omega};
  });
}

/// d/drho of the m >= 1 part of H at fixed direction of x.
inline SeriesValue regular_series_drho(const Annulus& dom, double rho, double r, double t,
                                       const Truncation& tr) {
  const int n = dom.dim();
  const double a = dom.inner_radius();
  const double inv_omega = 1.0 / dom.omega();
  ZonalSequence zonal_seq(n, t);
  ZonalDiagonalSequence diag_seq(n);
  return sum_series(1, tr, convergence_ratio(dom, rho, r), n, [&](int m) {
    const auto mono = radial_monomials(m, n, a, rho, r);
    const double up = m;
    const double down = m + n - 2.0;
    const double v = (up * (mono.t1 + mono.t3) - down * (mono.t2 + mono.t4)) / rho;
    const double e = (up * (std::abs(mono.t1) + std::abs(mono.t3)) +
                      down * (std::abs(mono.t2) + std::abs(mono.t4))) / rho;
    return SeriesTerm{v * zonal_seq.at(m) * inv_omega, e * diag_seq.at(m) * inv_omega};
  });
}

}  // namespace detail

/// H(x, y). Outside the convergence region (|x||y| >= 1 or <= a^2, only at
/// boundary corners) the sum runs to max_order and is flagged unreliable.
inline SeriesValue regular_part(const EvalPoint& x, const EvalPoint& y, const Annulus& dom,
                                const Truncation& tr) {
  detail::require_in_annulus(x, dom, "regular_part");
  detail::require_in_annulus(y, dom, "regular_part");
  const double rho = x.radius();
  const double r = y.radius();
  SeriesValue s = detail::regular_series(dom, rho, r, cosine(x, y), tr);
  s.value += coeff_C0(dom) / ipow(r, dom.dim() - 2);
  return s;
}

inline GreenEvaluation green(const EvalPoint& x, const EvalPoint& y, const Annulus& dom,
                             const Truncation& tr) {
  detail::require_in_annulus(x, dom, "green");
  detail::require_in_annulus(y, dom, "green");
  if (distance(x, y) == 0.0) throw SingularityError("green: coincident points");
  const SeriesValue h = regular_part(x, y, dom, tr);
  GreenEvaluation g;
  g.singular_part = fundamental_solution(x, y, dom.dim());
  g.regular_part = h.value;
  g.green = g.singular_part - g.regular_part;
  g.tail_estimate = h.tail_estimate;
  g.terms_used = h.terms_used;
  g.reliable = h.reliable;
  return g;
}

/// Robin function tau(x) = H(x, x); depends on |x| only.
inline SeriesValue robin(const EvalPoint& x, const Annulus& dom, const Truncation& tr) {
  if (x.dim() != dom.dim()) throw DomainError("robin: point dimension does not match the annulus");
  const double rho = x.radius();
  if (rho == dom.inner_radius() || rho == 1.0) {
    throw DivergenceError("robin: the regular part blows up on the boundary");
  }
  if (!(rho > dom.inner_radius() && rho < 1.0)) {
    throw DomainError("robin: point must lie strictly inside the annulus");
  }
  const int n = dom.dim();
  const double a = dom.inner_radius();
  const double inv_omega = 1.0 / dom.omega();
  detail::ZonalDiagonalSequence diag_seq(n);
  SeriesValue s = sum_series(1, tr, detail::convergence_ratio(dom, rho, rho), n, [&](int m) {
    const auto mono = detail::radial_monomials(m, n, a, rho, rho);
    const double z = diag_seq.at(m) * inv_omega;
    return SeriesTerm{mono.value() * z, mono.magnitude() * z};
  });
  s.value += coeff_C0(dom) / ipow(rho, n - 2);
  return s;
}

enum class BoundaryComponent { inner, outer };

namespace detail {

inline BoundaryComponent locate_boundary(const EvalPoint& p, const Annulus& dom, const char* who) {
  constexpr double tol = 1e-10;
  if (p.dim() != dom.dim()) throw DomainError(std::string(who) + ": dimension mismatch");
  if (std::abs(p.radius() - 1.0) <= tol) return BoundaryComponent::outer;
  if (std::abs(p.radius() - dom.inner_radius()) <= tol * dom.inner_radius()) {
    return BoundaryComponent::inner;
  }
  throw DomainError(std::string(who) + ": point is not on the boundary");
}

inline void require_strict_interior(const EvalPoint& p, const Annulus& dom, const char* who) {
  if (p.dim() != dom.dim()) throw DomainError(std::string(who) + ": dimension mismatch");
  if (!(p.radius() > dom.inner_radius() && p.radius() < 1.0)) {
    throw DomainError(std::string(who) + ": point must lie strictly inside the annulus");
  }
}

/// d/dr of the full H (m >= 1 series plus C_0 r^{2-N}) at fixed directions.
inline SeriesValue regular_part_dr(const EvalPoint& x, const EvalPoint& y, const Annulus& dom,
                                   const Truncation& tr) {
  const int n = dom.dim();
  const double r = y.radius();
  SeriesValue s = regular_series_dr(dom, x.radius(), r, cosine(x, y), tr);
  s.value += (2.0 - n) * coeff_C0(dom) / ipow(r, n - 1);
  return s;
}

inline double orientation(BoundaryComponent c) { return c == BoundaryComponent::outer ? 1.0 : -1.0; }

}  // namespace detail

/// Outward normal derivative of G(x, .) at a boundary point y, assembled
/// from the zonal series of d/dr Gamma and the termwise d/dr of H.
/// Outer sphere: d/dnu = d/dr; inner sphere: d/dnu = -d/dr.
inline SeriesValue normal_derivative_in_y(const EvalPoint& x, const EvalPoint& y_boundary,
                                          const Annulus& dom, const Truncation& tr) {
  detail::require_strict_interior(x, dom, "normal_derivative_in_y");
  const auto component = detail::locate_boundary(y_boundary, dom, "normal_derivative_in_y");
  const SeriesValue gamma_dr = radial_derivative_series(x, y_boundary, dom.dim(), tr);
  const SeriesValue h_dr = detail::regular_part_dr(x, y_boundary, dom, tr);
  SeriesValue out;
  out.value = detail::orientation(component) * (gamma_dr.value - h_dr.value);
  out.terms_used = std::max(gamma_dr.terms_used, h_dr.terms_used);
  out.tail_estimate = gamma_dr.tail_estimate + h_dr.tail_estimate;
  out.reliable = gamma_dr.reliable && h_dr.reliable;
  return out;
}

/// Same quantity with d/dr Gamma taken from the closed-form gradient instead
/// of its zonal series, so the residual is not cancelled order by order.
inline SeriesValue normal_derivative_in_y_direct(const EvalPoint& x, const EvalPoint& y_boundary,
                                                 const Annulus& dom, const Truncation& tr) {
  detail::require_strict_interior(x, dom, "normal_derivative_in_y_direct");
  const auto component = detail::locate_boundary(y_boundary, dom, "normal_derivative_in_y_direct");
  const int n = dom.dim();
  const double d = distance(x, y_boundary);
  double proj = 0.0;  // (y - x) . y'
  for (int i = 0; i < n; ++i) proj += (y_boundary[i] - x[i]) * y_boundary.direction()[i];
  const double gamma_dr = -proj / (dom.omega() * ipow(d, n));
  const SeriesValue h_dr = detail::regular_part_dr(x, y_boundary, dom, tr);
  SeriesValue out = h_dr;
  out.value = detail::orientation(component) * (gamma_dr - h_dr.value);
  return out;
}

/// Outward normal derivative of G(., y) in the first variable at a boundary
/// point x. The constructed G is only asserted to satisfy the Neumann
/// condition in y; this is for measurement.
inline SeriesValue normal_derivative_in_x(const EvalPoint& x_boundary, const EvalPoint& y,
                                          const Annulus& dom, const Truncation& tr) {
  detail::require_strict_interior(y, dom, "normal_derivative_in_x");
  const auto component = detail::locate_boundary(x_boundary, dom, "normal_derivative_in_x");
  const int n = dom.dim();
  const double d = distance(x_boundary, y);
  double proj = 0.0;  // (x - y) . x'
  for (int i = 0; i < n; ++i) proj += (x_boundary[i] - y[i]) * x_boundary.direction()[i];
  const double gamma_drho = -proj / (dom.omega() * ipow(d, n));
  // C_0 |y|^{2-N} does not depend on x.
  SeriesValue h = detail::regular_series_drho(dom, x_boundary.radius(), y.radius(), cosine(x_boundary, y), tr);
  h.value = detail::orientation(component) * (gamma_drho - h.value);
  return h;
}

/// The prescribed Neumann datum -1/|boundary|.
inline double neumann_target(const Annulus& dom) { return -1.0 / dom.boundary_measure(); }

struct SymmetryDefect {
  double measured = 0.0;   // G(x,y) - G(y,x)
  double predicted = 0.0;  // C_0 (|x|^{2-N} - |y|^{2-N})
  double tail = 0.0;       // combined tail estimates of both evaluations
};

/// Only the C_0 |y|^{2-N} term of H is not exchange-symmetric, which gives
/// the predicted defect. Nothing here assumes either value is zero.
inline SymmetryDefect symmetry_defect(const EvalPoint& x, const EvalPoint& y, const Annulus& dom,
                                      const Truncation& tr) {
  const GreenEvaluation gxy = green(x, y, dom, tr);
  const GreenEvaluation gyx = green(y, x, dom, tr);
  const int n = dom.dim();
  SymmetryDefect out;
  out.measured = gxy.green - gyx.green;
  out.predicted = coeff_C0(dom) * (1.0 / ipow(x.radius(), n - 2) - 1.0 / ipow(y.radius(), n - 2));
  // rounding of the final Gamma - H subtraction in each evaluation
  const double eps = std::numeric_limits<double>::epsilon();
  const double rounding = 4.0 * eps *
                          (std::abs(gxy.singular_part) + std::abs(gxy.regular_part) +
                           std::abs(gyx.singular_part) + std::abs(gyx.regular_part));
  out.tail = gxy.tail_estimate + gyx.tail_estimate + rounding;
  return out;
}

}  // namespace annulus_green
