#pragma once

// Annulus descriptor and the expansion coefficients A_m(rho), B_m(rho), C_0
// of the regular part
//
//   H(x, y) = (1/omega) sum_{m>=1} [A_m(|x|) |y|^m + B_m(|x|) |y|^{-(m+N-2)}] Z_m(x', y')
//             + C_0 |y|^{-(N-2)}.

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "annulus_green/errors.hpp"
#include "annulus_green/harmonics.hpp"
#include "annulus_green/series.hpp"

namespace annulus_green {

/// Shell a < |x| < 1 in R^N.
class Annulus {
 public:
  /// Inner radii above this get a conditioning warning.
  static constexpr double kRecommendedMaxInnerRadius = 0.95;

  Annulus(int dim, double inner_radius) : dim_(dim), a_(inner_radius) {
    detail::require_dimension(dim, "Annulus");
    if (!(inner_radius > 0.0 && inner_radius < 1.0)) {
      throw DomainError("inner radius must lie in (0,1)");
    }
    omega_ = surface_area(dim);
  }

  int dim() const { return dim_; }
  double inner_radius() const { return a_; }
  double omega() const { return omega_; }

  /// |boundary| = omega (1 + a^{N-1}).
  double boundary_measure() const { return omega_ * (1.0 + std::pow(a_, dim_ - 1)); }
  /// |annulus| = omega (1 - a^N) / N.
  double volume() const { return omega_ * (1.0 - std::pow(a_, dim_)) / dim_; }

  bool conditioning_warning() const { return a_ > kRecommendedMaxInnerRadius; }

  /// Test hook: scales C_0 (e.g. by -1) to check that verification catches it.
  Annulus with_c0_scale(double scale) const {
    Annulus copy = *this;
    copy.c0_scale_ = scale;
    return copy;
  }
  double c0_scale() const { return c0_scale_; }

 private:
  int dim_;
  double a_;
  double omega_ = 0.0;
  double c0_scale_ = 1.0;
};

inline double coeff_C0(const Annulus& dom) {
  const int n = dom.dim();
  const double an1 = std::pow(dom.inner_radius(), n - 1);
  return dom.c0_scale() * an1 / ((n - 2.0) * dom.omega() * (1.0 + an1));
}

namespace detail {

inline void require_radius_in_shell(const Annulus& dom, double rho, const char* who) {
  constexpr double slack = 1e-12;
  if (!(rho >= dom.inner_radius() - slack && rho <= 1.0 + slack)) {
    throw DomainError(std::string(who) + ": radius " + std::to_string(rho) +
                      " outside the closed annulus");
  }
}

inline void require_order(int m, const char* who) {
  if (m < 1) throw DomainError(std::string(who) + ": order must be at least 1");
}

}  // namespace detail

/// A_m(rho) = (m+N-2)/(m(2m+N-2)) rho^m/(a^k - 1) [1 + m/(m+N-2) (a/rho)^k], k = 2m+N-2.
inline double coeff_A(int m, const Annulus& dom, double rho) {
  detail::require_order(m, "coeff_A");
  detail::require_radius_in_shell(dom, rho, "coeff_A");
  const int n = dom.dim();
  const int k = 2 * m + n - 2;
  const double a = dom.inner_radius();
  // a^k underflows to 0 for large m; the formula is then exactly its limit.
  const double ak = ipow(a, k);
  const double bracket = 1.0 + static_cast<double>(m) / (m + n - 2) * ipow(a / rho, k);
  return (m + n - 2.0) / (static_cast<double>(m) * k) * ipow(rho, m) / (ak - 1.0) * bracket;
}

/// B_m(rho) = a^k/(2m+N-2) rho^m/(a^k - 1) [1 + m/(m+N-2) rho^{-k}].
/// Evaluated as a^k rho^m + m/(m+N-2) (a/rho)^k rho^m to keep every power <= 1.
inline double coeff_B(int m, const Annulus& dom, double rho) {
  detail::require_order(m, "coeff_B");
  detail::require_radius_in_shell(dom, rho, "coeff_B");
  const int n = dom.dim();
  const int k = 2 * m + n - 2;
  const double a = dom.inner_radius();
  const double ak = ipow(a, k);
  const double rho_m = ipow(rho, m);
  const double numer = ak * rho_m + static_cast<double>(m) / (m + n - 2) * ipow(a / rho, k) * rho_m;
  return numer / (k * (ak - 1.0));
}

struct CoefficientRow {
  int order = 0;
  double A = 0.0;
  double B = 0.0;
  double at_radius = 0.0;
};

/// det of the 2x2 boundary system: m(m+N-2)(a^{m-1} - a^{-(m+N-1)}).
inline double cramer_determinant(int m, const Annulus& dom) {
  detail::require_order(m, "cramer_determinant");
  const int n = dom.dim();
  const double a = dom.inner_radius();
  return m * (m + n - 2.0) * (ipow(a, m - 1) - 1.0 / ipow(a, m + n - 1));
}

namespace detail {

/// Boundary system for (A_m, B_m), second row multiplied by a^{m+N-1}:
///   m A - (m+N-2) B = -(m+N-2)/(2m+N-2) rho^m
///   m a^k A - (m+N-2) B = m a^k/(2m+N-2) rho^{-(m+N-2)}
/// Row scaling keeps entries finite for large m without changing the solution.
struct BoundarySystem {
  Eigen::Matrix2d matrix;
  Eigen::Vector2d rhs;
};

inline BoundarySystem boundary_system(int m, const Annulus& dom, double rho) {
  const int n = dom.dim();
  const int k = 2 * m + n - 2;
  const double a = dom.inner_radius();
  const double ak = ipow(a, k);
  BoundarySystem sys;
  sys.matrix << m, -(m + n - 2.0), m * ak, -(m + n - 2.0);
  // a^k rho^{-(m+N-2)} = a^m (a/rho)^{m+N-2}
  sys.rhs << -(m + n - 2.0) / k * ipow(rho, m), m / static_cast<double>(k) * ipow(a, m) * ipow(a / rho, m + n - 2);
  return sys;
}

}  // namespace detail

/// Solves the boundary system directly (LU with full pivoting), independent
/// of the closed forms coeff_A / coeff_B.
inline CoefficientRow coeffs_via_cramer(int m, const Annulus& dom, double rho) {
  detail::require_order(m, "coeffs_via_cramer");
  detail::require_radius_in_shell(dom, rho, "coeffs_via_cramer");
  const auto sys = detail::boundary_system(m, dom, rho);
  const auto& M = sys.matrix;
  const double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  if (det == 0.0) throw std::logic_error("coeffs_via_cramer: singular boundary system");
  const double A = (sys.rhs(0) * M(1, 1) - M(0, 1) * sys.rhs(1)) / det;
  const double B = (M(0, 0) * sys.rhs(1) - sys.rhs(0) * M(1, 0)) / det;
  return CoefficientRow{m, A, B, rho};
}

/// Largest relative residual of the two boundary equations at (A, B).
/// Each equation is normalized by the sum of magnitudes of its terms.
inline double boundary_system_residual(int m, const Annulus& dom, double rho, double A, double B) {
  const auto sys = detail::boundary_system(m, dom, rho);
  double worst = 0.0;
  for (int row = 0; row < 2; ++row) {
    const double lhs0 = sys.matrix(row, 0) * A;
    const double lhs1 = sys.matrix(row, 1) * B;
    const double scale = std::abs(lhs0) + std::abs(lhs1) + std::abs(sys.rhs(row));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(lhs0 + lhs1 - sys.rhs(row)) / scale);
  }
  return worst;
}

namespace detail {

/// The m-th radial factor A_m(rho) r^m + B_m(rho) r^{-(m+N-2)} split into its
/// four monomials in (rho, r). Every base raised to the power m is <= 1 on
/// the closed annulus, so nothing overflows:
///   t1 = (m+N-2)/(m k) (rho r)^m                     rho^m       r^m
///   t2 = 1/k (a^2 r/rho)^m (a/rho)^{N-2}             rho^-(m+N-2) r^m
///   t3 = 1/k (a^2 rho/r)^m (a/r)^{N-2}               rho^m       r^-(m+N-2)
///   t4 = m/((m+N-2) k) (a^2/(rho r))^m (a/(rho r))^{N-2}    rho^-(m+N-2) r^-(m+N-2)
/// all divided by (a^k - 1). t1 + t2 = A_m r^m and t3 + t4 = B_m r^{-(m+N-2)}.
struct RadialMonomials {
  double t1, t2, t3, t4;

  double value() const { return t1 + t2 + t3 + t4; }
  double magnitude() const { return std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4); }
};

inline RadialMonomials radial_monomials(int m, int n, double a, double rho, double r) {
  const int k = 2 * m + n - 2;
  const double denom = ipow(a, k) - 1.0;
  const double a2 = a * a;
  const double a_over_rho_r = a / (rho * r);
  RadialMonomials t;
  t.t1 = (m + n - 2.0) / (static_cast<double>(m) * k) * ipow(rho * r, m) / denom;
  t.t2 = ipow(a2 * r / rho, m) * ipow(a / rho, n - 2) / (k * denom);
  t.t3 = ipow(a2 * rho / r, m) * ipow(a / r, n - 2) / (k * denom);
  t.t4 = static_cast<double>(m) / (m + n - 2) * ipow(a2 / (rho * r), m) * ipow(a_over_rho_r, n - 2) /
         (k * denom);
  return t;
}

}  // namespace detail

}  // namespace annulus_green
