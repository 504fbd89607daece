#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "annulus_green/coefficients.hpp"

using namespace annulus_green;

namespace {

// Unscaled sector-m Neumann equations on |y| = 1 and |y| = a, solved by
// Cramer's rule in long double:
//   m A - (m+N-2) B                        = -(m+N-2)/k rho^m
//   m a^{m-1} A - (m+N-2) a^{-(m+N-1)} B   =  m/k a^{m-1} rho^{-(m+N-2)}
struct Pair {
  long double A, B;
};

Pair reference_coefficients(int m, int n, long double a, long double rho) {
  const long double k = 2.0L * m + n - 2;
  const long double p = m + n - 2.0L;
  const long double m11 = m, m12 = -p;
  const long double m21 = m * std::pow(a, m - 1.0L), m22 = -p * std::pow(a, -(m + n - 1.0L));
  const long double r1 = -p / k * std::pow(rho, static_cast<long double>(m));
  const long double r2 = m / k * std::pow(a, m - 1.0L) * std::pow(rho, -p);
  const long double det = m11 * m22 - m12 * m21;
  return {(r1 * m22 - m12 * r2) / det, (m11 * r2 - r1 * m21) / det};
}

}  // namespace

TEST(Annulus, RejectsBadRadius) {
  for (double a : {0.0, 1.0, 1.2, -0.3}) {
    try {
      Annulus(3, a);
      FAIL() << "accepted a=" << a;
    } catch (const DomainError& e) {
      EXPECT_STREQ(e.what(), "inner radius must lie in (0,1)");
    }
  }
  EXPECT_THROW(Annulus(2, 0.5), DomainError);
}

TEST(Annulus, Measures) {
  const Annulus dom(3, 0.5);
  EXPECT_NEAR(dom.boundary_measure(), 5.0 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(dom.volume(), 4.0 * std::numbers::pi * (1 - 0.125) / 3.0, 1e-13);
  EXPECT_FALSE(dom.conditioning_warning());
  EXPECT_TRUE(Annulus(3, 0.99).conditioning_warning());
}

TEST(CoeffC0, KnownValue) {
  EXPECT_NEAR(coeff_C0(Annulus(3, 0.5)), 1.0 / (20.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(coeff_C0(Annulus(3, 0.5)), 0.015915494, 1e-9);
}

TEST(CoeffC0, SolvesBothSectorZeroBoundaryEquations) {
  for (int n : {3, 4, 5, 7}) {
    for (double a : {0.1, 0.5, 0.9}) {
      const Annulus dom(n, a);
      const double omega = dom.omega();
      const double flux = 1.0 / dom.boundary_measure();
      // outer sphere: -1/omega + (N-2) C0 = -1/|boundary|
      EXPECT_NEAR(coeff_C0(dom), (1.0 / omega - flux) / (n - 2.0), 1e-15);
      // inner sphere: -(N-2) C0 a^{1-N} = -1/|boundary|
      EXPECT_NEAR(coeff_C0(dom), flux * std::pow(a, n - 1) / (n - 2.0), 1e-15);
    }
  }
}

TEST(CoeffC0, LimitsAndMonotonicity) {
  EXPECT_LT(coeff_C0(Annulus(3, 1e-9)), 1e-18);
  double prev = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double c = coeff_C0(Annulus(4, i / 1000.0));
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(CoeffAB, ReferenceExample) {
  const Annulus dom(3, 0.5);
  EXPECT_NEAR(coeff_A(1, dom, 0.75), -0.656085, 5e-7);
  EXPECT_NEAR(coeff_B(1, dom, 0.75), -0.078042, 5e-7);
  const CoefficientRow c = coeffs_via_cramer(1, dom, 0.75);
  EXPECT_NEAR(c.A, -0.656085, 5e-7);
  EXPECT_NEAR(c.B, -0.078042, 5e-7);
}

TEST(CoeffAB, MatchLongDoubleBoundarySolve) {
  for (int n : {3, 4, 5, 7}) {
    for (double a : {0.2, 0.5, 0.8}) {
      const Annulus dom(n, a);
      for (int i = 0; i <= 8; ++i) {
        const double rho = a + (1.0 - a) * i / 8.0;
        for (int m = 1; m <= 50; ++m) {
          const Pair ref = reference_coefficients(m, n, a, rho);
          EXPECT_NEAR(coeff_A(m, dom, rho), static_cast<double>(ref.A), 1e-12 * std::abs(static_cast<double>(ref.A)));
          EXPECT_NEAR(coeff_B(m, dom, rho), static_cast<double>(ref.B), 1e-12 * std::abs(static_cast<double>(ref.B)));
        }
      }
    }
  }
}

TEST(CoeffAB, CramerAgreesWithClosedForms) {
  for (int n : {3, 4, 5, 7}) {
    for (double a : {0.2, 0.5, 0.8}) {
      const Annulus dom(n, a);
      for (int i = 0; i <= 8; ++i) {
        const double rho = a + (1.0 - a) * i / 8.0;
        for (int m = 1; m <= 50; ++m) {
          const CoefficientRow c = coeffs_via_cramer(m, dom, rho);
          const double A = coeff_A(m, dom, rho), B = coeff_B(m, dom, rho);
          EXPECT_LE(std::abs(A - c.A), 1e-12 * std::abs(c.A));
          EXPECT_LE(std::abs(B - c.B), 1e-12 * std::abs(c.B));
          EXPECT_LE(boundary_system_residual(m, dom, rho, A, B), 1e-12);
        }
      }
    }
  }
}

TEST(CoeffAB, LargeOrderAsymptotics) {
  const Annulus dom(3, 0.5);
  // dropped terms: a^k and m/(m+N-2) (a/rho)^k, k = 2m + N - 2
  for (int m = 40; m <= 60; ++m) {
    for (double rho : {0.6, 0.75, 0.9, 1.0}) {
      const double asym = -(m + 1.0) / (m * (2.0 * m + 1.0)) * std::pow(rho, m);
      EXPECT_NEAR(coeff_A(m, dom, rho), asym, 1e-12);
      if (std::pow(0.5 / rho, 2 * m + 1) < 1e-13) {
        EXPECT_NEAR(coeff_A(m, dom, rho), asym, 1e-12 * std::abs(asym)) << m << " " << rho;
      }
    }
  }
}

TEST(CoeffAB, SignsAndLimits) {
  for (int n : {3, 5}) {
    for (double a : {0.05, 0.3, 0.6, 0.9}) {
      const Annulus dom(n, a);
      for (int i = 0; i <= 10; ++i) {
        const double rho = a + (1.0 - a) * i / 10.0;
        for (int m = 1; m <= 30; ++m) {
          EXPECT_LT(coeff_A(m, dom, rho), 0.0);
          EXPECT_LT(coeff_B(m, dom, rho), 0.0);
        }
      }
    }
  }
  EXPECT_LT(std::abs(coeff_B(1, Annulus(3, 1e-6), 0.5)), 1e-15);
}

TEST(CoeffAB, UnitRadiusBracket) {
  const int m = 3, n = 4;
  const double a = 0.4;
  const int k = 2 * m + n - 2;
  const double expected = std::pow(a, k) / k / (std::pow(a, k) - 1.0) * (1.0 + m / (m + n - 2.0));
  EXPECT_NEAR(coeff_B(m, Annulus(n, a), 1.0), expected, 1e-15);
}

TEST(CoeffAB, RejectsBadInput) {
  const Annulus dom(3, 0.5);
  EXPECT_THROW(coeff_A(0, dom, 0.7), DomainError);
  EXPECT_THROW(coeff_A(1, dom, 0.3), DomainError);
  EXPECT_THROW(coeff_B(1, dom, 1.1), DomainError);
  EXPECT_THROW(coeffs_via_cramer(1, dom, 0.2), DomainError);
}

TEST(CramerDeterminant, Negative) {
  for (int n : {3, 4, 7}) {
    for (double a : {0.1, 0.5, 0.95}) {
      for (int m = 1; m <= 20; ++m) EXPECT_LT(cramer_determinant(m, Annulus(n, a)), 0.0);
    }
  }
}

TEST(C0ScaleHook, FlipsSign) {
  const Annulus dom(3, 0.5);
  EXPECT_DOUBLE_EQ(coeff_C0(dom.with_c0_scale(-1.0)), -coeff_C0(dom));
  EXPECT_DOUBLE_EQ(coeff_A(2, dom.with_c0_scale(-1.0), 0.7), coeff_A(2, dom, 0.7));
}
