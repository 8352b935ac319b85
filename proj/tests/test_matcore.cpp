#include <cmath>

#include "dynsub/matcore.hpp"
#include "dynsub/randgen.hpp"
#include "testing.hpp"

using namespace dynsub;
using dynsub::testing::diag;
using dynsub::testing::matrices_near;

namespace {

ComplexMatrix n_times_p_plus(int n) {
  ComplexMatrix x = ComplexMatrix::Zero(n * n, n * n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) x(m * n + m, k * n + k) = 1.0;
  }
  return x;
}

ComplexMatrix random_hermitian(int n, rng::RngStream& r) {
  const ComplexMatrix g = rng::ginibre(n, r);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST(Reshuffle, NTimesPPlusGoesToIdentity) {
  for (int n = 2; n <= 4; ++n) {
    EXPECT_TRUE(matrices_near(reshuffle(n_times_p_plus(n)), identity(n * n), 0.0));
  }
}

TEST(Reshuffle, IsAnInvolutionBitForBit) {
  rng::RngStream r(1, 0);
  for (int n = 2; n <= 4; ++n) {
    const ComplexMatrix x = rng::ginibre(n * n, r);
    const ComplexMatrix back = reshuffle(reshuffle(x));
    EXPECT_TRUE((back.array() == x.array()).all());
  }
}

TEST(Reshuffle, IdentityIndexLoop) {
  const ComplexMatrix out = reshuffle(identity(4));
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
          const double expected = (m == n && mu == nu) ? 1.0 : 0.0;
          EXPECT_EQ(out(m * 2 + n, mu * 2 + nu), Complex(expected, 0.0));
        }
}

TEST(Reshuffle, RejectsNonSquareDimension) {
  EXPECT_THROW(reshuffle(identity(3)), DimensionError);
  EXPECT_THROW(reshuffle(ComplexMatrix::Zero(4, 2)), DimensionError);
}

TEST(PartialTrace, ProductState) {
  rng::RngStream r(2, 0);
  const ComplexMatrix rho = rng::random_density(3, r).matrix();
  const ComplexMatrix sigma = rng::random_density(3, r).matrix();
  const ComplexMatrix x = kron(rho, sigma);
  EXPECT_TRUE(matrices_near(partial_trace(x, Side::B), rho, 1e-14));
  EXPECT_TRUE(matrices_near(partial_trace(x, Side::A), sigma, 1e-14));
}

TEST(PartialTrace, RectangularFactors) {
  rng::RngStream r(3, 0);
  const ComplexMatrix rho = rng::random_density(2, r).matrix();
  const ComplexMatrix sigma = rng::random_density(3, r).matrix();
  const ComplexMatrix x = kron(rho, sigma);
  EXPECT_TRUE(matrices_near(partial_trace(x, 2, 3, Side::B), rho, 1e-14));
  EXPECT_TRUE(matrices_near(partial_trace(x, 2, 3, Side::A), sigma, 1e-14));
}

TEST(PartialTrace, NTimesPPlusHasIdentityMarginals) {
  for (int n = 2; n <= 4; ++n) {
    EXPECT_TRUE(matrices_near(partial_trace(n_times_p_plus(n), Side::A), identity(n), 0.0));
    EXPECT_TRUE(matrices_near(partial_trace(n_times_p_plus(n), Side::B), identity(n), 0.0));
    EXPECT_TRUE(matrices_near(partial_trace(identity(n * n), Side::A), n * identity(n), 0.0));
  }
}

TEST(PartialTrace, PreservesTrace) {
  rng::RngStream r(4, 0);
  const ComplexMatrix x = rng::ginibre(9, r);
  EXPECT_NEAR(std::abs(partial_trace(x, Side::A).trace() - x.trace()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(partial_trace(x, Side::B).trace() - x.trace()), 0.0, 1e-12);
}

TEST(Kron, IdentityAndTrace) {
  EXPECT_TRUE(matrices_near(kron(identity(2), identity(3)), identity(6), 0.0));
  rng::RngStream r(5, 0);
  const ComplexMatrix x = rng::ginibre(2, r);
  const ComplexMatrix y = rng::ginibre(3, r);
  EXPECT_NEAR(std::abs(kron(x, y).trace() - x.trace() * y.trace()), 0.0, 1e-12);
}

TEST(Eig, DiagonalAndProjector) {
  const Spectrum s = eigenvalues_hermitian(diag({0.75, 0.25}));
  ASSERT_EQ(s.dimension(), 2u);
  EXPECT_NEAR(s.values[0], 0.25, 1e-15);
  EXPECT_NEAR(s.values[1], 0.75, 1e-15);

  ComplexMatrix p(2, 2);
  p << 0.5, 0.5, 0.5, 0.5;
  const Spectrum sp = eigenvalues_hermitian(p);
  EXPECT_NEAR(sp.values[0], 0.0, 1e-15);
  EXPECT_NEAR(sp.values[1], 1.0, 1e-15);
}

TEST(Eig, ReconstructsRandomHermitian) {
  rng::RngStream r(6, 0);
  const ComplexMatrix x = random_hermitian(5, r);
  const HermitianEigen e = eig_hermitian(x);
  RealVector v(5);
  for (int k = 0; k < 5; ++k) v(k) = e.spectrum.values[static_cast<std::size_t>(k)];
  const ComplexMatrix back = e.vectors * v.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_TRUE(matrices_near(back, x, 1e-10));
  for (std::size_t k = 1; k < 5; ++k) EXPECT_LE(e.spectrum.values[k - 1], e.spectrum.values[k]);
}

TEST(Eig, RejectsNonHermitian) {
  ComplexMatrix x(2, 2);
  x << 1, 1, 0, 1;
  EXPECT_THROW(eig_hermitian(x), HermiticityError);
}

TEST(SingularValues, UnitaryDiagonalAndSpectralOracle) {
  rng::RngStream r(7, 0);
  for (double s : singular_values(rng::haar_unitary(4, r))) EXPECT_NEAR(s, 1.0, 1e-12);

  const std::vector<double> d = singular_values(diag({0.3, -0.8}));
  EXPECT_NEAR(d[0], 0.8, 1e-15);
  EXPECT_NEAR(d[1], 0.3, 1e-15);

  const ComplexMatrix x = rng::ginibre(4, r);
  const std::vector<double> sv = singular_values(x);
  const Spectrum ev = eigenvalues_hermitian(x.adjoint() * x);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(sv[k] * sv[k], ev.values[3 - k], 1e-10);
  }
}

// Large complex inputs are where a divide-and-conquer SVD drifted.
TEST(SingularValues, LargeComplexAgainstGram) {
  rng::RngStream r(8, 0);
  const ComplexMatrix x = rng::ginibre(64, r);
  const std::vector<double> sv = singular_values(x);
  const Spectrum ev = eigenvalues_hermitian(x.adjoint() * x);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_NEAR(sv[k] * sv[k], ev.values[63 - k], 1e-9);
  EXPECT_NEAR(operator_norm(x), sv.front(), 1e-12);
  EXPECT_EQ(operator_norm(ComplexMatrix::Zero(3, 3)), 0.0);
}

TEST(Eta, Values) {
  EXPECT_EQ(eta(0.0), 0.0);
  EXPECT_EQ(eta(1.0), 0.0);
  EXPECT_NEAR(eta(0.5), 0.34657, 5e-6);
  EXPECT_EQ(eta(-5e-10), 0.0);
  EXPECT_THROW(eta(-1e-6), DomainError);
  EXPECT_THROW(eta(1.5), DomainError);
}

TEST(Shannon, Values) {
  const std::vector<double> point{1.0, 0.0, 0.0};
  EXPECT_EQ(shannon_entropy(point), 0.0);
  const std::vector<double> flat(4, 0.25);
  EXPECT_NEAR(shannon_entropy(flat), std::log(4.0), 1e-15);
  const std::vector<double> p{0.7, 0.3};
  EXPECT_NEAR(shannon_entropy(p), 0.61086, 5e-6);
}

TEST(VonNeumann, Values) {
  EXPECT_EQ(von_neumann_entropy(diag({1.0, 0.0})), 0.0);
  for (int n = 2; n <= 5; ++n) {
    EXPECT_NEAR(von_neumann_entropy(maximally_mixed(n)), std::log(n), 1e-14);
  }
  EXPECT_NEAR(von_neumann_entropy(diag({0.25, 0.75})), 0.56234, 5e-6);
}

TEST(VonNeumann, UnitaryInvarianceAndShannonAgreement) {
  rng::RngStream r(8, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = rng::random_density(4, r);
    const ComplexMatrix u = rng::haar_unitary(4, r);
    const double s = von_neumann_entropy(rho);
    EXPECT_NEAR(von_neumann_entropy(u * rho.matrix() * u.adjoint()), s, 1e-9);
    EXPECT_NEAR(shannon_entropy(rho.spectrum().values), s, 1e-10);
  }
}

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix::validated(diag({0.5, 0.6})), TraceError);
  EXPECT_THROW(DensityMatrix::validated(diag({1.5, -0.5})), PositivityError);
  ComplexMatrix x(2, 2);
  x << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(DensityMatrix::validated(x), HermiticityError);
  ComplexMatrix bad = diag({0.5, 0.5});
  bad(0, 0) = std::nan("");
  EXPECT_THROW(DensityMatrix::validated(bad), Error);
}

TEST(Vectorization, RowMajor) {
  ComplexMatrix x(2, 2);
  x << 1, 2, 3, 4;
  const ComplexVector v = vec_rowmajor(x);
  EXPECT_EQ(v(1), Complex(2.0, 0.0));
  EXPECT_EQ(v(2), Complex(3.0, 0.0));
  EXPECT_TRUE(matrices_near(unvec_rowmajor(v, 2), x, 0.0));
}
