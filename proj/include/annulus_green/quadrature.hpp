#pragma once

// Quadrature on [lo, hi], on S^{N-1} and on the annulus.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include "annulus_green/coefficients.hpp"
#include "annulus_green/errors.hpp"
#include "annulus_green/harmonics.hpp"

namespace annulus_green {

struct QuadratureSpec {
  int radial_nodes = 24;        // Gauss-Legendre nodes in |y| on [a, 1]
  int angular_nodes = 16;       // Gauss nodes per polar level of the product sphere rule
  int zonal_nodes = 64;         // Gauss-Gegenbauer nodes in x'.y' for zonal reductions
  int sphere_samples = 20000;   // Monte Carlo sample count
  std::uint64_t monte_carlo_seed = 20261018;

  void validate() const {
    if (radial_nodes < 4) throw DomainError("quadrature: radial_nodes must be at least 4");
    if (sphere_samples < 32) throw DomainError("quadrature: sphere_samples must be at least 32");
    if (angular_nodes < 2) throw DomainError("quadrature: angular_nodes must be at least 2");
    if (zonal_nodes < 2) throw DomainError("quadrature: zonal_nodes must be at least 2");
  }
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss rule for the weight (1 - t^2)^{lambda - 1/2} on [-1, 1]
/// (Golub-Welsch on the Gegenbauer Jacobi matrix). lambda = 1/2 is Legendre.
inline GaussRule gauss_gegenbauer(int n, double lambda) {
  if (n < 1) throw DomainError("gauss_gegenbauer: need at least one node");
  if (!(lambda > -0.5)) throw DomainError("gauss_gegenbauer: lambda must exceed -1/2");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) {
    const double beta = k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0));
    off(k - 1) = std::sqrt(beta);
  }
  const double mass =
      std::sqrt(std::numbers::pi) * std::tgamma(lambda + 0.5) / std::tgamma(lambda + 1.0);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = mass;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mass * v0 * v0;
  }
  // symmetrize: the weight is even
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double node = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double weight = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -node;
    rule.nodes[j] = node;
    rule.weights[i] = rule.weights[j] = weight;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

inline GaussRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0) {
  GaussRule rule = gauss_gegenbauer(n, 0.5);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

/// Weighted point set on S^{N-1}; directions stored row by row.
struct SphereRule {
  int dim = 0;
  std::vector<double> directions;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  std::span<const double> direction(std::size_t i) const {
    return {directions.data() + i * dim, static_cast<std::size_t>(dim)};
  }
};

/// Product Gauss rule on S^{N-1}: y = (t, sqrt(1-t^2) u) with u on S^{N-2}
/// and dsigma_{N-1} = (1-t^2)^{(N-3)/2} dt dsigma_{N-2}, recursing down to
/// the circle, where 2n equispaced angles are used. Exact for polynomials of
/// degree <= 2n-1. Size n^{N-2} * 2n.
inline SphereRule product_sphere_rule(int dim, int n) {
  if (dim < 2) throw DomainError("product_sphere_rule: dimension must be at least 2");
  if (n < 1) throw DomainError("product_sphere_rule: need at least one node");
  SphereRule rule;
  rule.dim = dim;
  if (dim == 2) {
    const int count = 2 * n;
    for (int i = 0; i < count; ++i) {
      const double phi = 2.0 * std::numbers::pi * i / count;
      rule.directions.push_back(std::cos(phi));
      rule.directions.push_back(std::sin(phi));
      rule.weights.push_back(2.0 * std::numbers::pi / count);
    }
    return rule;
  }
  const SphereRule lower = product_sphere_rule(dim - 1, n);
  const GaussRule polar = gauss_gegenbauer(n, 0.5 * (dim - 2));
  for (std::size_t i = 0; i < polar.size(); ++i) {
    const double t = polar.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (std::size_t j = 0; j < lower.size(); ++j) {
      rule.directions.push_back(t);
      for (double c : lower.direction(j)) rule.directions.push_back(s * c);
      rule.weights.push_back(polar.weights[i] * lower.weights[j]);
    }
  }
  return rule;
}

/// Uniform random point of S^{N-1} (normalized Gaussian vector).
template <class Rng>
std::vector<double> random_direction(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& c : v) {
      c = normal(rng);
      norm2 += c * c;
    }
  } while (norm2 < 1e-24);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& c : v) c *= inv;
  return v;
}

/// Equal-weight random directions with a fixed seed.
inline SphereRule random_sphere_rule(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SphereRule rule;
  rule.dim = dim;
  const double w = detail::unit_sphere_measure(dim) / count;
  for (int i = 0; i < count; ++i) {
    for (double c : random_direction(dim, rng)) rule.directions.push_back(c);
    rule.weights.push_back(w);
  }
  return rule;
}

using Field = std::function<double(std::span<const double>)>;

struct IntegralEstimate {
  double product = 0.0;      // Gauss-Legendre in |y| x product Gauss sphere rule
  double monte_carlo = 0.0;  // plain Monte Carlo with uniform points
  double mc_stderr = 0.0;
};

namespace detail {

/// Uniform point in the annulus (inverse CDF of r^{N-1} on [a, 1]).
template <class Rng>
std::vector<double> random_annulus_point(const Annulus& dom, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = dom.dim();
  const double an = std::pow(dom.inner_radius(), n);
  const double r = std::pow(an + (1.0 - an) * unit(rng), 1.0 / n);
  std::vector<double> p = random_direction(n, rng);
  for (double& c : p) c *= r;
  return p;
}

}  // namespace detail

/// Monte Carlo estimate of the integral of field over the annulus.
inline IntegralEstimate monte_carlo_integral(const Field& field, const Annulus& dom, int samples,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto p = detail::random_annulus_point(dom, rng);
    const double v = field(p);
    const double delta = v - mean;
    mean += delta / (i + 1);
    m2 += delta * (v - mean);
  }
  const double vol = dom.volume();
  IntegralEstimate est;
  est.monte_carlo = vol * mean;
  est.mc_stderr = samples > 1 ? vol * std::sqrt(m2 / (samples - 1) / samples) : 0.0;
  return est;
}

/// Integral of a field over the annulus by the product rule together with a
/// companion Monte Carlo estimate.
inline IntegralEstimate annulus_integral(const Field& field, const Annulus& dom, const QuadratureSpec& q) {
  q.validate();
  const int n = dom.dim();
  const GaussRule radial = gauss_legendre(q.radial_nodes, dom.inner_radius(), 1.0);
  const SphereRule sphere = product_sphere_rule(n, q.angular_nodes);
  double total = 0.0;
  std::vector<double> p(n);
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double r = radial.nodes[i];
    const double jac = radial.weights[i] * std::pow(r, n - 1);
    double shell = 0.0;
    for (std::size_t j = 0; j < sphere.size(); ++j) {
      const auto d = sphere.direction(j);
      for (int k = 0; k < n; ++k) p[k] = r * d[k];
      shell += sphere.weights[j] * field(p);
    }
    total += jac * shell;
  }
  IntegralEstimate est = monte_carlo_integral(field, dom, q.sphere_samples, q.monte_carlo_seed);
  est.product = total;
  return est;
}

/// Integral over the annulus of f(|y|, x'.y') for a fixed direction x',
/// reduced to two dimensions:
///   omega_{N-2} int_a^1 r^{N-1} int_{-1}^{1} f(r, t) (1 - t^2)^{(N-3)/2} dt dr.
inline double zonal_annulus_integral(const std::function<double(double, double)>& f, const Annulus& dom,
                                     int radial_nodes, int zonal_nodes) {
  const int n = dom.dim();
  const GaussRule radial = gauss_legendre(radial_nodes, dom.inner_radius(), 1.0);
  const GaussRule polar = gauss_gegenbauer(zonal_nodes, 0.5 * (n - 2));
  const double omega_lower = detail::unit_sphere_measure(n - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double r = radial.nodes[i];
    double inner = 0.0;
    for (std::size_t j = 0; j < polar.size(); ++j) inner += polar.weights[j] * f(r, polar.nodes[j]);
    total += radial.weights[i] * std::pow(r, n - 1) * inner;
  }
  return omega_lower * total;
}

}  // namespace annulus_green
