#pragma once

#include <cmath>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "annulus_green/errors.hpp"
#include "annulus_green/harmonics.hpp"

namespace annulus_green {

/// Point of R^N with cached radius and direction (no direction at the origin).
class EvalPoint {
 public:
  explicit EvalPoint(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
    if (coords_.empty()) throw DomainError("EvalPoint: empty coordinate list");
    double norm2 = 0.0;
    for (double c : coords_) {
      if (!std::isfinite(c)) throw DomainError("EvalPoint: non-finite coordinate");
      norm2 += c * c;
    }
    radius_ = std::sqrt(norm2);
    if (radius_ > 0.0) direction_.emplace(std::span<const double>(coords_));
  }
  EvalPoint(std::initializer_list<double> coords)
      : EvalPoint(std::span<const double>(coords.begin(), coords.size())) {}
  explicit EvalPoint(const std::vector<double>& coords) : EvalPoint(std::span<const double>(coords)) {}

  /// Point at the given radius along a direction.
  static EvalPoint polar(double radius, const UnitDirection& dir) {
    std::vector<double> c(dir.components().begin(), dir.components().end());
    for (double& v : c) v *= radius;
    return EvalPoint(c);
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  double radius() const { return radius_; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  bool has_direction() const { return direction_.has_value(); }
  const UnitDirection& direction() const {
    if (!direction_) throw DomainError("EvalPoint: direction undefined at the origin");
    return *direction_;
  }

 private:
  std::vector<double> coords_;
  double radius_ = 0.0;
  std::optional<UnitDirection> direction_;
};

inline double distance(const EvalPoint& x, const EvalPoint& y) {
  if (x.dim() != y.dim()) throw DomainError("distance: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Cosine of the angle between x and y; 1 when either sits at the origin
/// (every m >= 1 term then carries a vanishing radial factor).
inline double cosine(const EvalPoint& x, const EvalPoint& y) {
  if (!x.has_direction() || !y.has_direction()) return 1.0;
  return cosine(x.direction(), y.direction());
}

}  // namespace annulus_green
