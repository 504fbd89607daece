#pragma once

// Gegenbauer polynomials and zonal spherical harmonics on S^{N-1}.
//
// The production route for Z_m is the Gegenbauer form
//   Z_m(x', y') = (2m+N-2)/(N-2) * C_m^{(N-2)/2}(x'.y'),
// the explicit finite sum in zonal_explicit() is kept as an independent
// cross-check (it cancels badly for large m).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "annulus_green/errors.hpp"

namespace annulus_green {

namespace detail {

/// (n-1)-dimensional measure of the unit sphere in R^n, n >= 1.
inline double unit_sphere_measure(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

inline void require_dimension(int dim, const char* who) {
  if (dim < 3) {
    throw DomainError(std::string(who) + ": dimension must be at least 3, got " +
                      std::to_string(dim));
  }
}

}  // namespace detail

/// Surface measure omega_{N-1} of the unit sphere S^{N-1} in R^N.
inline double surface_area(int dim) {
  detail::require_dimension(dim, "surface_area");
  return detail::unit_sphere_measure(dim);
}

/// Gegenbauer index attached to dimension N.
inline double gegenbauer_lambda(int dim) { return 0.5 * (dim - 2); }

struct GegenbauerParams {
  int order = 0;
  double lambda = 0.5;
  double t = 0.0;

  GegenbauerParams(int m, double lam, double arg) : order(m), lambda(lam), t(arg) {
    if (m < 0) throw DomainError("gegenbauer: order must be non-negative");
    if (!(lam > 0.0)) throw DomainError("gegenbauer: lambda must be positive");
    if (!(std::abs(arg) <= 1.0)) throw DomainError("gegenbauer: argument must lie in [-1, 1]");
  }
};

/// Incremental evaluation of C_0^lambda(t), C_1^lambda(t), ... by the
/// three-term recurrence. Series evaluators step this alongside the order.
class GegenbauerSequence {
 public:
  GegenbauerSequence(double lambda, double t) : lambda_(lambda), t_(t) {}

  /// Order of the value currently held by value().
  int order() const { return m_; }
  double value() const { return current_; }

  void advance() {
    const int next = m_ + 1;
    double c;
    if (next == 1) {
      c = 2.0 * lambda_ * t_;
    } else {
      c = (2.0 * t_ * (next + lambda_ - 1.0) * current_ - (next + 2.0 * lambda_ - 2.0) * previous_) /
          next;
    }
    previous_ = current_;
    current_ = c;
    m_ = next;
  }

 private:
  double lambda_;
  double t_;
  int m_ = 0;
  double current_ = 1.0;
  double previous_ = 0.0;
};

inline double gegenbauer(const GegenbauerParams& p) {
  GegenbauerSequence seq(p.lambda, p.t);
  while (seq.order() < p.order) seq.advance();
  return seq.value();
}

inline double gegenbauer(int m, double lambda, double t) {
  return gegenbauer(GegenbauerParams(m, lambda, t));
}

/// Point of S^{N-1}; input is renormalized on construction.
class UnitDirection {
 public:
  explicit UnitDirection(std::span<const double> components)
      : components_(components.begin(), components.end()) {
    double norm2 = 0.0;
    for (double c : components_) norm2 += c * c;
    const double norm = std::sqrt(norm2);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DomainError("UnitDirection: zero or non-finite vector");
    }
    for (double& c : components_) c /= norm;
  }
  UnitDirection(std::initializer_list<double> components)
      : UnitDirection(std::span<const double>(components.begin(), components.size())) {}

  int dim() const { return static_cast<int>(components_.size()); }
  std::span<const double> components() const { return components_; }
  double operator[](std::size_t i) const { return components_[i]; }

 private:
  std::vector<double> components_;
};

/// x'.y' clamped to [-1, 1].
inline double cosine(const UnitDirection& u, const UnitDirection& v) {
  if (u.dim() != v.dim()) throw DomainError("cosine: direction dimensions differ");
  double s = 0.0;
  for (int i = 0; i < u.dim(); ++i) s += u[i] * v[i];
  return std::clamp(s, -1.0, 1.0);
}

/// Z_m as a function of the cosine t = x'.y'.
inline double zonal_from_cosine(int m, int dim, double t) {
  detail::require_dimension(dim, "zonal");
  if (m < 0) throw DomainError("zonal: order must be non-negative");
  if (m == 0) return 1.0;
  const double lam = gegenbauer_lambda(dim);
  return (2.0 * m + dim - 2.0) / (dim - 2.0) * gegenbauer(m, lam, std::clamp(t, -1.0, 1.0));
}

inline double zonal(int m, int dim, const UnitDirection& x, const UnitDirection& y) {
  if (x.dim() != dim || y.dim() != dim) throw DomainError("zonal: direction dimension mismatch");
  return zonal_from_cosine(m, dim, cosine(x, y));
}

/// Z_m(xi, xi) = (2m+N-2)/(N-2) * C_m^lambda(1), with C_m^lambda(1) the
/// r^m coefficient of (1-r)^{-2 lambda}, i.e. (2 lambda)_m / m!.
inline double zonal_diagonal(int m, int dim) {
  detail::require_dimension(dim, "zonal_diagonal");
  if (m < 0) throw DomainError("zonal_diagonal: order must be non-negative");
  if (m == 0) return 1.0;
  const double two_lambda = dim - 2.0;
  double c = 1.0;
  for (int j = 1; j <= m; ++j) c *= (two_lambda + j - 1.0) / j;
  return (2.0 * m + dim - 2.0) / (dim - 2.0) * c;
}

/// Explicit finite-sum form of Z_m(x, xi) for x in R^N (not necessarily unit)
/// and xi on the sphere. The k-sum stops at floor(m/2); the rising product
/// N(N+2)...(N+2m-2k-4) is empty (= 1) when it has no factors.
/// Accumulates in long double; intended for cross-checks, not production use.
inline double zonal_explicit(int m, int dim, std::span<const double> x, const UnitDirection& xi) {
  if (dim < 2) throw DomainError("zonal_explicit: dimension must be at least 2");
  if (m < 1) throw DomainError("zonal_explicit: order must be at least 1");
  if (static_cast<int>(x.size()) != dim || xi.dim() != dim) {
    throw DomainError("zonal_explicit: dimension mismatch");
  }
  long double dot = 0.0L;
  long double norm2 = 0.0L;
  for (int i = 0; i < dim; ++i) {
    dot += static_cast<long double>(x[i]) * xi[i];
    norm2 += static_cast<long double>(x[i]) * x[i];
  }
  long double sum = 0.0L;
  for (int k = 0; 2 * k <= m; ++k) {
    long double rising = 1.0L;
    for (int f = dim; f <= dim + 2 * m - 2 * k - 4; f += 2) rising *= f;
    long double denom = std::pow(2.0L, k);
    for (int j = 2; j <= k; ++j) denom *= j;
    for (int j = 2; j <= m - 2 * k; ++j) denom *= j;
    const long double term = rising / denom * std::pow(dot, m - 2 * k) * std::pow(norm2, k);
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>((dim + 2.0L * m - 2.0L) * sum);
}

}  // namespace annulus_green
