#pragma once

// Average of y -> G(x, y) over the annulus, measured three ways:
//
//  sector      every m >= 1 sector averages to zero over spheres |y| = r, so
//              only the radial m = 0 part of G is integrated:
//              Gamma_0(r) = max(|x|, r)^{2-N} / (omega (N-2)) minus C_0 r^{2-N}.
//  full field  the integral of Gamma over the annulus by rays cast from x
//              (closed form in the ray length, Gauss in the ray angle),
//              minus the integral of the full truncated H series on a
//              Gauss-Legendre x Gauss-Gegenbauer grid in (|y|, x'.y').
//  monte carlo plain sampling outside a ball B_eps(x), plus the exact ball
//              contribution eps^2/(2(N-2)) - |B_eps| tau(x) (H is harmonic in y).
//
// Nothing is assumed about the value being zero.

#include <cmath>
#include <numbers>
#include <vector>

#include "annulus_green/coefficients.hpp"
#include "annulus_green/green_kernel.hpp"
#include "annulus_green/point.hpp"
#include "annulus_green/quadrature.hpp"
#include "annulus_green/series.hpp"

namespace annulus_green {

struct MeanOverY {
  double sector = 0.0;
  double full_field = 0.0;
  double monte_carlo = 0.0;
  double mc_stderr = 0.0;
  bool accuracy_warning = false;

  /// Reported value: the full-field quadrature.
  double value() const { return full_field; }
  double scheme_disagreement() const { return std::abs(sector - full_field); }
};

namespace detail {

/// Integral of Gamma(x - y) over the annulus. From x, each ray x + s u meets
/// the annulus in one or two intervals; the integrand s^{2-N}/(omega(N-2))
/// times the Jacobian s^{N-1} integrates to s^2/2 in closed form. The angular
/// integral depends on c = u.x' only; it is split at the tangency angle
/// theta* = pi - asin(a/rho) and, past theta*, rewritten in phi with
/// sin(theta) = (a/rho) sin(phi) to remove the square-root kink.
inline double gamma_integral_by_rays(double rho, const Annulus& dom, int nodes) {
  const int n = dom.dim();
  const double a = dom.inner_radius();
  const double omega = dom.omega();
  const double omega_lower = unit_sphere_measure(n - 1);

  auto outer_exit = [&](double c) {
    return -rho * c + std::sqrt(std::max(0.0, rho * rho * c * c - rho * rho + 1.0));
  };
  auto weight = [&](double sin_theta) { return std::pow(sin_theta, n - 2); };

  const double theta_star = std::numbers::pi - std::asin(a / rho);

  // Rays that miss the inner ball.
  double miss = 0.0;
  const GaussRule left = gauss_legendre(nodes, 0.0, theta_star);
  for (std::size_t i = 0; i < left.size(); ++i) {
    const double th = left.nodes[i];
    const double so = outer_exit(std::cos(th));
    miss += left.weights[i] * 0.5 * so * so * weight(std::sin(th));
  }

  // Rays that cross the inner ball: theta = pi - asin((a/rho) sin phi), phi in [0, pi/2].
  // Length term: s_out^2/2 - (s_in2^2 - s_in1^2)/2 = s_out^2/2 + 2 rho c D, D = a cos(phi).
  double hit = 0.0;
  const double k = a / rho;
  const GaussRule right = gauss_legendre(nodes, 0.0, 0.5 * std::numbers::pi);
  for (std::size_t i = 0; i < right.size(); ++i) {
    const double phi = right.nodes[i];
    const double sin_theta = k * std::sin(phi);
    const double cos_theta = -std::sqrt(1.0 - sin_theta * sin_theta);
    const double dtheta_dphi = k * std::cos(phi) / std::sqrt(1.0 - sin_theta * sin_theta);
    const double so = outer_exit(cos_theta);
    const double chord_half = a * std::cos(phi);
    const double len = 0.5 * so * so + 2.0 * rho * cos_theta * chord_half;
    hit += right.weights[i] * len * weight(sin_theta) * dtheta_dphi;
  }
  return omega_lower * (miss + hit) / (omega * (n - 2.0));
}

}  // namespace detail

/// Mean of G(x, .) over the annulus. Also reports the sector and Monte Carlo
/// estimates; accuracy_warning is set when the two deterministic schemes
/// disagree by more than 1e-6 or the Monte Carlo value sits more than four
/// standard errors away.
inline MeanOverY mean_over_y(const EvalPoint& x, const Annulus& dom, const QuadratureSpec& q,
                             const Truncation& tr) {
  q.validate();
  detail::require_strict_interior(x, dom, "mean_over_y");
  const int n = dom.dim();
  const double a = dom.inner_radius();
  const double rho = x.radius();
  const double omega = dom.omega();
  const double c0 = coeff_C0(dom);
  const double vol = dom.volume();
  const int nodes = std::max(q.radial_nodes, 32);

  MeanOverY out;

  // sector: piecewise smooth in r with a kink at r = rho
  {
    double total = 0.0;
    for (const auto& [lo, hi] : {std::pair{a, rho}, std::pair{rho, 1.0}}) {
      const GaussRule g = gauss_legendre(nodes, lo, hi);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.nodes[i];
        const double gamma0 = 1.0 / (omega * (n - 2.0) * ipow(std::max(rho, r), n - 2));
        const double h0 = c0 / ipow(r, n - 2);
        total += g.weights[i] * omega * ipow(r, n - 1) * (gamma0 - h0);
      }
    }
    out.sector = total / vol;
  }

  // full field
  {
    const double gamma_total = detail::gamma_integral_by_rays(rho, dom, nodes);
    const double h_total = zonal_annulus_integral(
        [&](double r, double t) { return detail::regular_series(dom, rho, r, t, tr).value + c0 / ipow(r, n - 2); },
        dom, nodes, q.zonal_nodes);
    out.full_field = (gamma_total - h_total) / vol;
  }

  // Monte Carlo with the ball around x excised
  {
    const double eps = std::min({1e-2, 0.5 * (rho - a), 0.5 * (1.0 - rho)});
    const double ball = detail::unit_sphere_measure(n) / n * ipow(eps, n);
    const double tau = robin(x, dom, tr).value;
    const double ball_part = eps * eps / (2.0 * (n - 2.0)) - ball * tau;
    const Field outside = [&](std::span<const double> y) {
      const EvalPoint p(y);
      if (distance(p, x) < eps) return 0.0;
      return green(x, p, dom, tr).green;
    };
    const IntegralEstimate mc = monte_carlo_integral(outside, dom, q.sphere_samples, q.monte_carlo_seed);
    out.monte_carlo = (mc.monte_carlo + ball_part) / vol;
    out.mc_stderr = mc.mc_stderr / vol;
  }

  out.accuracy_warning = out.scheme_disagreement() > 1e-6 ||
                         std::abs(out.monte_carlo - out.full_field) > 4.0 * out.mc_stderr;
  return out;
}

/// G(x, y) minus a previously measured mean of G(x, .): the zero-average
/// renormalization, applied after the fact and never inside green().
inline double renormalized_green(const EvalPoint& x, const EvalPoint& y, const Annulus& dom,
                                 const Truncation& tr, const MeanOverY& mean) {
  return green(x, y, dom, tr).green - mean.value();
}

}  // namespace annulus_green
