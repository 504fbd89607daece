#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "annulus_green/verification.hpp"

using namespace annulus_green;

namespace {

double norm2(std::span<const double> y) {
  double s = 0.0;
  for (double c : y) s += c * c;
  return s;
}

}  // namespace

TEST(FdLaplacian, Quadratic) {
  const ScalarField f = [](std::span<const double> y) { return norm2(y); };
  EXPECT_NEAR(fd_laplacian(f, {0.3, 0.5, -0.2}, 1e-3), 6.0, 1e-6);
}

TEST(FdLaplacian, NewtonPotentialIsHarmonic) {
  const ScalarField f = [](std::span<const double> y) { return 1.0 / std::sqrt(norm2(y)); };
  const EvalPoint p{0.5, 0.4, 0.2};
  const double r1 = fd_laplacian(f, p, 1e-2), r2 = fd_laplacian(f, p, 5e-3);
  EXPECT_LT(std::abs(r1), 2e-3);
  EXPECT_NEAR(r1 / r2, 4.0, 0.1);
}

TEST(FdLaplacian, RegularPartConstantStableUnderRefinement) {
  const Annulus dom(3, 0.5);
  const EvalPoint x{0.7, 0.1, 0.0};
  const Truncation fixed = Truncation::fixed(200);
  const ScalarField f = [&](std::span<const double> y) { return regular_part(x, EvalPoint(y), dom, fixed).value; };
  const EvalPoint y{-0.2, 0.6, 0.3};
  std::vector<double> constants;
  for (double h : {1e-2, 5e-3, 2.5e-3}) constants.push_back(fd_laplacian(f, y, h, dom) / (h * h));
  EXPECT_NEAR(constants[1] / constants[0], 1.0, 0.05);
  EXPECT_NEAR(constants[2] / constants[1], 1.0, 0.05);
}

TEST(FdLaplacian, StencilMustStayInside) {
  const Annulus dom(3, 0.5);
  const ScalarField f = [](std::span<const double> y) { return norm2(y); };
  EXPECT_THROW(fd_laplacian(f, {0.995, 0, 0}, 1e-2, dom), GeometryError);
  EXPECT_THROW(fd_laplacian(f, {0.505, 0, 0}, 1e-2, dom), GeometryError);
  EXPECT_THROW(fd_laplacian(f, {0.7, 0, 0}, 0.0), DomainError);
}

TEST(ConvergenceOrder, PowerLaw) {
  const std::array<double, 3> h{1e-2, 5e-3, 2.5e-3};
  const std::array<double, 3> r{3 * 1e-4, 3 * 2.5e-5, 3 * 6.25e-6};
  EXPECT_NEAR(convergence_order(h, r), 2.0, 1e-12);
}

TEST(FluxProbe, DiracMass) {
  for (int n : {3, 4}) {
    const Annulus dom(n, 0.5);
    std::vector<double> xc(n, 0.0);
    xc[0] = 0.6;
    xc[1] = 0.4;
    const EvalPoint x(xc);
    const QuadratureSpec q;
    const double fg = flux_probe(x, dom, 1e-2, q, Truncation{});
    const double fs = flux_probe(x, dom, 1e-2, q, Truncation{}, FluxField::singular);
    const double fh = flux_probe(x, dom, 1e-2, q, Truncation{}, FluxField::regular);
    EXPECT_NEAR(fg, -1.0, 1e-3);
    EXPECT_NEAR(fs, -1.0, 1e-6);
    EXPECT_NEAR(fh, 0.0, 1e-6);
    EXPECT_NEAR(fs - fh, fg, 1e-9);
  }
}

TEST(FluxProbe, BallMustStayInside) {
  const Annulus dom(3, 0.5);
  EXPECT_THROW(flux_probe({0.995, 0, 0}, dom, 1e-2, QuadratureSpec{}, Truncation{}), GeometryError);
  EXPECT_THROW(flux_probe({0.7, 0, 0}, dom, 0.0, QuadratureSpec{}, Truncation{}), GeometryError);
}

TEST(BoundaryScan, ResidualsSmallAwayFromCone) {
  for (int n : {3, 4}) {
    const Annulus dom(n, 0.5);
    std::vector<double> xc(n, 0.0);
    xc[0] = 0.7;
    const VerificationReport r = boundary_scan(EvalPoint(xc), dom, 48, Truncation{}, Tolerances{}, 3);
    EXPECT_FALSE(r.has_hard_failure());
    for (const char* comp : {"outer", "inner"}) {
      const CheckResult* c = r.find(std::string("boundary_scan.") + comp + ".neumann_y.max_residual");
      ASSERT_NE(c, nullptr);
      EXPECT_LE(c->measured, 1e-6);
      EXPECT_NE(r.find(std::string("boundary_scan.") + comp + ".neumann_x.mean_normal_derivative"), nullptr);
    }
  }
}

TEST(BoundaryScan, ResidualShrinksWithOrder) {
  // x close to the outer sphere: slow convergence toward x'
  const Annulus dom(3, 0.5);
  const EvalPoint x{0.9, 0.0, 0.0};
  const EvalPoint y = EvalPoint::polar(1.0, UnitDirection{1.0, 0.5, 0.0});
  const double target = neumann_target(dom);
  double prev = 1e9;
  for (int M : {5, 10, 20, 40}) {
    const SeriesValue v = normal_derivative_in_y_direct(x, y, dom, Truncation::fixed(M));
    const double residual = std::abs(v.value - target);
    EXPECT_LT(residual, prev);
    if (v.reliable) {
      EXPECT_LE(residual, 10.0 * v.tail_estimate);
    }
    prev = residual;
  }
}

TEST(BoundaryScan, NearConeIsFlaggedNotFailed) {
  const Annulus dom(3, 0.5);
  Tolerances tol;
  tol.neumann_y = 1e-30;  // force every residual over the line
  const VerificationReport r = boundary_scan({0.97, 0.0, 0.0}, dom, 200, Truncation{}, tol, 5);
  const CheckResult* near = r.find("boundary_scan.outer.neumann_y.near_cone_max_residual");
  ASSERT_NE(near, nullptr);
  EXPECT_EQ(near->status, CheckStatus::flagged);
  EXPECT_EQ(r.find("boundary_scan.outer.neumann_y.max_residual")->status, CheckStatus::fail);
}

TEST(FullVerification, DefaultsPassAndAreDeterministic) {
  const Annulus dom(3, 0.5);
  VerificationConfig cfg;
  const VerificationReport a = run_full_verification(dom, QuadratureSpec{}, Truncation{}, cfg);
  cfg.threads = 4;
  const VerificationReport b = run_full_verification(dom, QuadratureSpec{}, Truncation{}, cfg);
  EXPECT_FALSE(a.has_hard_failure());
  EXPECT_EQ(a.count(CheckStatus::flagged), 0);
  std::ostringstream sa, sb;
  a.write_json(sa);
  b.write_json(sb);
  EXPECT_EQ(sa.str(), sb.str());
  for (const char* name : {"harmonics.gegenbauer_vs_generating_function", "harmonics.zonal_gegenbauer_vs_explicit_sum",
                           "kernel.newton_series_vs_direct", "kernel.radial_derivative_inner_branch_vs_fd",
                           "coefficients.closed_form_vs_linear_solve", "dirac.flux_of_green",
                           "exchange.defect_matches_c0_prediction", "mean_over_y.x1.scheme_agreement",
                           "harmonicity.regular_part_in_x.order_deviation"}) {
    ASSERT_NE(a.find(name), nullptr) << name;
    EXPECT_EQ(a.find(name)->status, CheckStatus::pass) << name;
  }
}

TEST(FullVerification, WrongSignC0FailsBoundaryChecks) {
  const Annulus dom = Annulus(3, 0.5).with_c0_scale(-1.0);
  const VerificationReport r = run_full_verification(dom, QuadratureSpec{}, Truncation{}, {});
  EXPECT_TRUE(r.has_hard_failure());
  EXPECT_EQ(r.find("boundary.x0.outer.neumann_y.max_residual")->status, CheckStatus::fail);
  EXPECT_EQ(r.find("boundary.x0.inner.neumann_y.max_residual")->status, CheckStatus::fail);
}

TEST(FullVerification, ThinAnnulusIsFlagged) {
  const Annulus dom(3, 0.99);
  const VerificationReport r = run_full_verification(dom, QuadratureSpec{}, Truncation{}, {});
  const CheckResult* c = r.find("conditioning.inner_radius");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, CheckStatus::flagged);
  EXPECT_FALSE(r.has_hard_failure());
}
