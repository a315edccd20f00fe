#include <gtest/gtest.h>

#include "stokes.hpp"

using namespace stokeskit;

TEST(Stokes, ValuesAtZeroZeta) {
  const StokesTable t = stokes_coefficients(0.0);
  for (int k = 0; k < 5; ++k) {
    EXPECT_LT(std::abs(t.C[k] - (1.0 + kOmega)), 1e-10) << k;
    EXPECT_LT(std::abs(t.C_tilde[k] + kOmega), 1e-10) << k;
  }
}

TEST(Stokes, TildeIsMinusOmegaEverywhere) {
  for (cplx z : {cplx(1.0, 2.0), cplx(-2.5, 0.3), cplx(0.0, -2.9)})
    EXPECT_LT(tilde_residual(stokes_coefficients(z)), 1e-8) << z;
}

TEST(Stokes, CyclicAndMatrixIdentities) {
  for (cplx z : {cplx(0.5, 0.5), cplx(-1.7, 2.1), cplx(2.9, -0.4)}) {
    EXPECT_LT(verify_cyclic_identity(z), 1e-7) << z;
    EXPECT_LT(verify_matrix_product(z), 1e-7) << z;
    EXPECT_LT(verify_conjugation_symmetry(z), 1e-7) << z;
  }
}

TEST(Stokes, MatrixProductResidualOfExactValues) {
  std::array<cplx, 5> c;
  c.fill(1.0 + kOmega);
  EXPECT_LT(matrix_product_residual(c), 1e-14);
  c[2] += 0.1;
  EXPECT_GT(matrix_product_residual(c), 1e-3);
}

TEST(Stokes, CyclicResidualOfExactValues) {
  const cplx c = 1.0 + kOmega;
  EXPECT_LT(cyclic_residual(c, c, c), 1e-14);
}

TEST(Stokes, HigherCoefficientsAreRotationsOfC0) {
  const cplx z{1.2, -0.8};
  const StokesTable t = stokes_coefficients(z);
  EXPECT_LT(rotation_residual(t), 1e-9);
  EXPECT_LT(std::abs(t.C[0] - stokes_C0(z)), 1e-12);
}

TEST(Stokes, CoefficientsAreEntire) {
  // Cauchy integral over a small circle reproduces the centre value.
  const cplx centre{-0.5, 0.4};
  const int n = 32;
  cplx mean = 0.0;
  for (int j = 0; j < n; ++j) mean += stokes_C0(centre + std::polar(0.3, 2.0 * kPi * j / n));
  mean /= static_cast<double>(n);
  EXPECT_LT(std::abs(mean - stokes_C0(centre)), 1e-9);
}

TEST(Stokes, WronskianErrorIsSmall) {
  EXPECT_LT(stokes_coefficients({0.3, -1.0}).err, 1e-5);
}

TEST(Stokes, HaltonPointsStayInDisk) {
  const auto pts = halton_disk(50, 3.0);
  ASSERT_EQ(pts.size(), 50u);
  for (cplx p : pts) EXPECT_LE(std::abs(p), 3.0 + 1e-12);
  EXPECT_NE(pts[0], pts[1]);
}

TEST(Stokes, SmallGridReport) {
  const IdentityReport r = verify_identities(4, 3.0, 4);
  EXPECT_EQ(r.samples.size(), 20u);
  EXPECT_LT(r.at_zero_C, 1e-8);
  EXPECT_LT(r.max_cyclic, 1e-7);
  EXPECT_LT(r.max_matrix, 1e-7);
  EXPECT_LT(r.max_tilde, 1e-8);
  EXPECT_LT(r.max_symmetry, 1e-7);
  EXPECT_GT(std::abs(r.dC0_at_zero), 0.1);
}
