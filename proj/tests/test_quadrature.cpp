#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "annulus_green/mean_value.hpp"
#include "annulus_green/quadrature.hpp"

using namespace annulus_green;

TEST(GaussRules, LegendreIntegratesPolynomials) {
  const GaussRule g = gauss_legendre(6, 0.5, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 11);
  EXPECT_NEAR(s, (1.0 - std::pow(0.5, 12)) / 12.0, 1e-15);
}

TEST(GaussRules, GegenbauerMassAndMoments) {
  // weight (1 - t^2)^{lambda - 1/2}; lambda = 1 is the semicircle, mass pi/2, second moment pi/8
  const GaussRule g = gauss_gegenbauer(5, 1.0);
  double mass = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    mass += g.weights[i];
    m2 += g.weights[i] * g.nodes[i] * g.nodes[i];
  }
  EXPECT_NEAR(mass, std::numbers::pi / 2, 1e-14);
  EXPECT_NEAR(m2, std::numbers::pi / 8, 1e-14);
}

TEST(SphereRules, ProductRuleMomentsExact) {
  for (int n : {2, 3, 4, 5}) {
    const SphereRule rule = product_sphere_rule(n, 6);
    double mass = 0.0, x0sq = 0.0, x0x1 = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const auto d = rule.direction(j);
      mass += rule.weights[j];
      x0sq += rule.weights[j] * d[0] * d[0];
      x0x1 += rule.weights[j] * d[0] * d[1];
    }
    EXPECT_NEAR(mass, detail::unit_sphere_measure(n), 1e-12);
    EXPECT_NEAR(x0sq, detail::unit_sphere_measure(n) / n, 1e-12);
    EXPECT_NEAR(x0x1, 0.0, 1e-13);
  }
}

TEST(SphereRules, RandomDirectionsAreUnitAndSeeded) {
  const SphereRule a = random_sphere_rule(4, 100, 42), b = random_sphere_rule(4, 100, 42);
  EXPECT_EQ(a.directions, b.directions);
  for (std::size_t j = 0; j < a.size(); ++j) {
    double n2 = 0.0;
    for (double c : a.direction(j)) n2 += c * c;
    EXPECT_NEAR(n2, 1.0, 1e-14);
  }
}

TEST(AnnulusIntegral, Constant) {
  for (int n : {3, 4, 6}) {
    const Annulus dom(n, 0.5);
    const IntegralEstimate e = annulus_integral([](std::span<const double>) { return 1.0; }, dom, QuadratureSpec{});
    const double exact = surface_area(n) * (1.0 - std::pow(0.5, n)) / n;
    EXPECT_NEAR(e.product, exact, 1e-10);
    EXPECT_NEAR(e.monte_carlo, exact, 1e-12);
  }
}

TEST(AnnulusIntegral, NewtonianRadialField) {
  for (int n : {3, 5}) {
    const Annulus dom(n, 0.3);
    const IntegralEstimate e = annulus_integral(
        [n](std::span<const double> y) {
          double r2 = 0.0;
          for (double c : y) r2 += c * c;
          return std::pow(r2, 0.5 * (2 - n));
        },
        dom, QuadratureSpec{});
    const double exact = surface_area(n) * (1.0 - 0.09) / 2.0;
    EXPECT_NEAR(e.product, exact, 1e-8);
    EXPECT_NEAR(e.monte_carlo, exact, 3.0 * e.mc_stderr);
  }
}

TEST(AnnulusIntegral, ZonalFieldAveragesToZero) {
  const Annulus dom(3, 0.5);
  const UnitDirection v{0.3, -0.2, 0.9};
  for (int m : {1, 2, 5}) {
    const IntegralEstimate e = annulus_integral(
        [&](std::span<const double> y) {
          const EvalPoint p(y);
          return std::exp(p.radius()) * zonal(m, 3, p.direction(), v);
        },
        dom, QuadratureSpec{});
    EXPECT_NEAR(e.product, 0.0, 1e-12);
    EXPECT_NEAR(e.monte_carlo, 0.0, 3.0 * e.mc_stderr);
  }
}

TEST(AnnulusIntegral, SeededReproducibility) {
  const Annulus dom(4, 0.4);
  const Field f = [](std::span<const double> y) { return y[0] * y[0] + std::sin(y[1]); };
  const IntegralEstimate a = annulus_integral(f, dom, QuadratureSpec{}), b = annulus_integral(f, dom, QuadratureSpec{});
  EXPECT_EQ(a.product, b.product);
  EXPECT_EQ(a.monte_carlo, b.monte_carlo);
  EXPECT_EQ(a.mc_stderr, b.mc_stderr);
  EXPECT_LE(std::abs(a.product - a.monte_carlo), 3.0 * a.mc_stderr);
}

TEST(ZonalAnnulusIntegral, AgreesWithFullProductRule) {
  const Annulus dom(5, 0.35);
  const UnitDirection xdir{1.0, 0.0, 0.0, 0.0, 0.0};
  auto f = [](double r, double t) { return r * r * (1.0 + t + 3.0 * t * t * t * t); };
  const double reduced = zonal_annulus_integral(f, dom, 16, 16);
  const IntegralEstimate full = annulus_integral(
      [&](std::span<const double> y) {
        const EvalPoint p(y);
        return f(p.radius(), cosine(p.direction(), xdir));
      },
      dom, QuadratureSpec{});
  EXPECT_NEAR(reduced, full.product, 1e-12);
}

TEST(QuadratureSpec, Validation) {
  QuadratureSpec q;
  q.radial_nodes = 2;
  EXPECT_THROW(q.validate(), DomainError);
  q = QuadratureSpec{};
  q.sphere_samples = 1;
  EXPECT_THROW(q.validate(), DomainError);
}

TEST(MeanOverY, SchemesAgree) {
  for (int n : {3, 4}) {
    const Annulus dom(n, 0.5);
    for (double rho : {0.6, 0.75, 0.9}) {
      std::vector<double> xc(n, 0.0);
      xc[0] = rho;
      const MeanOverY m = mean_over_y(EvalPoint(xc), dom, QuadratureSpec{}, Truncation{});
      EXPECT_NEAR(m.sector, m.full_field, 1e-6) << "N=" << n << " rho=" << rho;
      EXPECT_NEAR(m.monte_carlo, m.full_field, 4.0 * m.mc_stderr);
      EXPECT_TRUE(std::isfinite(m.value()));
    }
  }
}

TEST(MeanOverY, DependsOnRadiusNotDirection) {
  const Annulus dom(3, 0.5);
  const MeanOverY a = mean_over_y({0.75, 0.0, 0.0}, dom, QuadratureSpec{}, Truncation{});
  const MeanOverY b = mean_over_y(EvalPoint::polar(0.75, UnitDirection{1, -2, 2}), dom, QuadratureSpec{}, Truncation{});
  const MeanOverY c = mean_over_y({0.6, 0.0, 0.0}, dom, QuadratureSpec{}, Truncation{});
  EXPECT_NEAR(a.full_field, b.full_field, 1e-10);
  EXPECT_GT(std::abs(a.value() - c.value()), 1e-3);
}

TEST(MeanOverY, GammaByRaysMatchesMonteCarlo) {
  const Annulus dom(3, 0.4);
  const double rho = 0.7;
  const EvalPoint x{rho, 0.0, 0.0};
  const double rays = detail::gamma_integral_by_rays(rho, dom, 64);
  const IntegralEstimate mc = monte_carlo_integral(
      [&](std::span<const double> y) { return fundamental_solution(x, EvalPoint(y), 3); }, dom, 200000, 7);
  EXPECT_NEAR(rays, mc.monte_carlo, 4.0 * mc.mc_stderr);
}

TEST(MeanOverY, RenormalizedGreenHasZeroMean) {
  const Annulus dom(3, 0.5);
  const EvalPoint x{0.0, 0.7, 0.0};
  const QuadratureSpec q;
  const MeanOverY m = mean_over_y(x, dom, q, Truncation{});
  const double c0 = coeff_C0(dom);
  const double shifted = zonal_annulus_integral(
                             [&](double r, double t) {
                               return -(detail::regular_series(dom, 0.7, r, t, Truncation{}).value + c0 / r) - m.value();
                             },
                             dom, 48, 64) +
                         detail::gamma_integral_by_rays(0.7, dom, 48);
  EXPECT_NEAR(shifted / dom.volume(), 0.0, 1e-9);
}
