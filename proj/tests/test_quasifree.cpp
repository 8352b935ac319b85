#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynsub/quasifree.hpp"
#include "dynsub/randgen.hpp"
#include "testing.hpp"

using namespace dynsub;
using namespace dynsub::qf;
using dynsub::testing::diag;
using dynsub::testing::matrices_near;

namespace {

// Normalized wedge product e_S in (C^n)^{(x)k}.
ComplexVector wedge(const std::vector<int>& s, int n) {
  const int k = static_cast<int>(s.size());
  Eigen::Index dim = 1;
  for (int i = 0; i < k; ++i) dim *= n;
  ComplexVector v = ComplexVector::Zero(dim);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  double count = 0.0;
  do {
    int inversions = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    Eigen::Index idx = 0;
    for (int a = 0; a < k; ++a) idx = idx * n + s[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])];
    v(idx) += (inversions % 2 == 0) ? 1.0 : -1.0;
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return v / std::sqrt(count);
}

ComplexMatrix tensor_power(const ComplexMatrix& a, int k) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

// Restriction of A^{(x)k} to the antisymmetric subspace by explicit projection.
ComplexMatrix antisymmetrizer_oracle(const ComplexMatrix& a, int k) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::vector<int>> sector;
  for (const auto& s : fock_basis(n))
    if (static_cast<int>(s.size()) == k) sector.push_back(s);
  const ComplexMatrix big = tensor_power(a, k);
  const auto d = static_cast<Eigen::Index>(sector.size());
  ComplexMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const ComplexVector ei = wedge(sector[static_cast<std::size_t>(i)], n);
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = ei.dot(big * wedge(sector[static_cast<std::size_t>(j)], n));
    }
  }
  return out;
}

ComplexMatrix fock_oracle(const ComplexMatrix& q) {
  const int n = static_cast<int>(q.rows());
  const ComplexMatrix one_minus = identity(n) - q;
  const ComplexMatrix a = q * one_minus.inverse();
  ComplexMatrix rho = ComplexMatrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  Eigen::Index off = 0;
  for (int k = 0; k <= n; ++k) {
    const ComplexMatrix blk = antisymmetrizer_oracle(a, k);
    rho.block(off, off, blk.rows(), blk.cols()) = blk;
    off += blk.rows();
  }
  return one_minus.determinant() * rho;
}

Symbol half(int n) { return Symbol::validated(0.5 * identity(n)); }

}  // namespace

TEST(QfValidate, Cases) {
  rng::RngStream r(81, 0);
  const ComplexMatrix u = rng::haar_unitary(3, r);
  EXPECT_NO_THROW(qf_validate(u, ComplexMatrix::Zero(3, 3)));
  EXPECT_NO_THROW(qf_validate(ComplexMatrix::Zero(3, 3), 0.5 * identity(3)));
  try {
    qf_validate(identity(3), 0.5 * identity(3));
    FAIL() << "expected ConstraintError";
  } catch (const ConstraintError& e) {
    EXPECT_NE(std::string(e.what()).find("Z <= 1 - R^dagger R"), std::string::npos);
  }
  try {
    qf_validate(ComplexMatrix::Zero(2, 2), -0.1 * identity(2));
    FAIL() << "expected ConstraintError";
  } catch (const ConstraintError& e) {
    EXPECT_NE(std::string(e.what()).find("0 <= Z"), std::string::npos);
  }
  EXPECT_THROW(qf_validate(identity(2), ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST(Symbol, Validation) {
  EXPECT_THROW(Symbol::validated(diag({1.2, 0.5})), ConstraintError);
  EXPECT_THROW(Symbol::validated(diag({-0.2, 0.5})), ConstraintError);
  EXPECT_NO_THROW(Symbol::validated(diag({0.0, 1.0})));
}

TEST(QfApply, Cases) {
  rng::RngStream r(82, 0);
  const ComplexMatrix u = rng::haar_unitary(3, r);
  const Symbol q = rng::random_symbol(3, r);
  const Symbol out = qf_apply(qf_validate(u, ComplexMatrix::Zero(3, 3)), q);
  const Spectrum a = eigenvalues_hermitian(q.matrix());
  const Spectrum b = eigenvalues_hermitian(out.matrix());
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(a.values[k], b.values[k], 1e-12);

  const Map dep = qf_validate(ComplexMatrix::Zero(3, 3), 0.5 * identity(3));
  EXPECT_TRUE(matrices_near(qf_apply(dep, q).matrix(), 0.5 * identity(3), 0.0));

  const Map bi = qf_bistochastic(rng::random_contraction(3, r));
  EXPECT_TRUE(matrices_near(qf_apply(bi, half(3)).matrix(), 0.5 * identity(3), 1e-14));
}

TEST(QfCompose, UnitaryLaterAndDepolarizer) {
  rng::RngStream r(83, 0);
  const Map earlier = rng::random_qf_map(3, r, rng::QfKind::Interior);
  const ComplexMatrix u = rng::haar_unitary(3, r);
  const Map c = qf_compose(qf_validate(u, ComplexMatrix::Zero(3, 3)), earlier);
  EXPECT_TRUE(matrices_near(c.r(), earlier.r() * u, 1e-14));
  EXPECT_TRUE(matrices_near(c.z(), u.adjoint() * earlier.z() * u, 1e-14));

  const Map dep = qf_validate(ComplexMatrix::Zero(2, 2), 0.5 * identity(2));
  const Map dd = qf_compose(dep, dep);
  EXPECT_TRUE(matrices_near(dd.r(), dep.r(), 0.0));
  EXPECT_TRUE(matrices_near(dd.z(), dep.z(), 0.0));
}

TEST(QfCompose, ApplyOracle) {
  rng::RngStream r(84, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Map m1 = rng::random_qf_map(4, r, rng::QfKind::Interior);
    const Map m2 = rng::random_qf_map(4, r, rng::QfKind::Extreme);
    const Map c = qf_compose(m2, m1);
    for (int s = 0; s < 20; ++s) {
      const Symbol q = rng::random_symbol(4, r);
      EXPECT_TRUE(matrices_near(qf_apply(c, q).matrix(), qf_apply(m2, qf_apply(m1, q)).matrix(), 1e-12));
    }
  }
}

// The printed product order R_later R_earlier fails the apply oracle.
TEST(QfCompose, PrintedOrderFailsOracle) {
  rng::RngStream r(85, 0);
  const Map m1 = rng::random_qf_map(3, r, rng::QfKind::Bistochastic);
  const Map m2 = rng::random_qf_map(3, r, rng::QfKind::Bistochastic);
  const Symbol q = rng::random_symbol(3, r);
  const ComplexMatrix wrong_r = m2.r() * m1.r();
  const ComplexMatrix via_wrong = wrong_r.adjoint() * q.matrix() * wrong_r;
  const ComplexMatrix c_r = qf_compose(m2, m1).r();
  const ComplexMatrix via_right = c_r.adjoint() * q.matrix() * c_r;
  const ComplexMatrix two_step_r = m2.r().adjoint() * (m1.r().adjoint() * q.matrix() * m1.r()) * m2.r();
  EXPECT_TRUE(matrices_near(via_right, two_step_r, 1e-12));
  EXPECT_GT(max_abs(via_wrong - two_step_r), 1e-6);
}

TEST(QfJamSymbol, Cases) {
  for (int n = 1; n <= 3; ++n) {
    const Symbol id = qf_jam_symbol(qf_validate(identity(n), ComplexMatrix::Zero(n, n)));
    ComplexMatrix expected(2 * n, 2 * n);
    expected << identity(n), identity(n), identity(n), identity(n);
    EXPECT_TRUE(matrices_near(id.matrix(), 0.5 * expected, 0.0));
    EXPECT_TRUE(matrices_near(id.matrix() * id.matrix(), id.matrix(), 1e-15));

    const Symbol dep = qf_jam_symbol(qf_validate(ComplexMatrix::Zero(n, n), 0.5 * identity(n)));
    EXPECT_TRUE(matrices_near(dep.matrix(), 0.5 * identity(2 * n), 0.0));
  }
  rng::RngStream r(86, 0);
  const Symbol s = qf_jam_symbol(rng::random_qf_map(3, r, rng::QfKind::Interior));
  EXPECT_TRUE(matrices_near(s.matrix().topLeftCorner(3, 3), 0.5 * identity(3), 0.0));
}

TEST(QfJamSymbol, BistochasticSpectrum) {
  rng::RngStream r(87, 0);
  const ComplexMatrix rr = rng::random_contraction(4, r);
  const Spectrum s = eigenvalues_hermitian(qf_jam_symbol(qf_bistochastic(rr)).matrix());
  std::vector<double> expected;
  for (double l : singular_values(rr)) {
    expected.push_back(0.5 * (1.0 + l));
    expected.push_back(0.5 * (1.0 - l));
  }
  std::sort(expected.begin(), expected.end());
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(s.values[k], expected[k], 1e-10);
}

TEST(QfOdotSymbol, AgreesWithComposition) {
  rng::RngStream r(88, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Map m1 = rng::random_qf_map(3, r, rng::QfKind::Interior);
    const Map m2 = rng::random_qf_map(3, r, rng::QfKind::Interior);
    EXPECT_TRUE(matrices_near(qf_odot_symbol(qf_jam_symbol(m2), qf_jam_symbol(m1)).matrix(),
                              qf_jam_symbol(qf_compose(m2, m1)).matrix(), 1e-12));
  }
}

TEST(QfOdotSymbol, NeutralAndAbsorbing) {
  rng::RngStream r(89, 0);
  const Symbol id = qf_jam_symbol(qf_validate(identity(3), ComplexMatrix::Zero(3, 3)));
  const Symbol s = qf_jam_symbol(rng::random_qf_map(3, r, rng::QfKind::Interior));
  EXPECT_TRUE(matrices_near(qf_odot_symbol(s, id).matrix(), s.matrix(), 1e-14));
  EXPECT_TRUE(matrices_near(qf_odot_symbol(id, s).matrix(), s.matrix(), 1e-14));

  const Symbol dep = qf_jam_symbol(qf_validate(ComplexMatrix::Zero(3, 3), 0.5 * identity(3)));
  EXPECT_TRUE(matrices_near(qf_odot_symbol(dep, s).matrix(), 0.5 * identity(6), 1e-14));
}

TEST(QfOdotSymbol, RejectsWrongBlockForm) {
  rng::RngStream r(90, 0);
  const Symbol s = qf_jam_symbol(rng::random_qf_map(2, r, rng::QfKind::Interior));
  EXPECT_THROW(qf_odot_symbol(s, rng::random_symbol(4, r)), BlockFormError);
  EXPECT_THROW(qf_odot_symbol(s, half(3)), DimensionError);
  EXPECT_THROW(qf_odot_symbol(half(3), half(3)), BlockFormError);
}

TEST(QfStateEntropy, Values) {
  EXPECT_NEAR(qf_state_entropy(Symbol::validated(diag({1.0, 0.0, 1.0}))), 0.0, 1e-15);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(qf_state_entropy(half(n)), n * std::log(2.0), 1e-14);
  const double direct = 2.0 * (eta(0.25) + eta(0.75));
  EXPECT_NEAR(qf_state_entropy(Symbol::validated(diag({0.25, 0.75}))), direct, 1e-15);
}

TEST(QfMapEntropy, Values) {
  rng::RngStream r(91, 0);
  for (int n = 1; n <= 4; ++n) {
    EXPECT_NEAR(qf_map_entropy(qf_validate(rng::haar_unitary(n, r), ComplexMatrix::Zero(n, n))), 0.0, 1e-9);
    EXPECT_NEAR(qf_map_entropy(qf_validate(ComplexMatrix::Zero(n, n), 0.5 * identity(n))), 2.0 * n * std::log(2.0), 1e-12);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix rr = rng::random_contraction(5, r);
    const double closed = qf_bistochastic_entropy_closed(rr);
    EXPECT_NEAR(qf_map_entropy(qf_bistochastic(rr)), closed, 1e-10);
    EXPECT_NEAR(qf_map_entropy(qf_bistochastic(rr.adjoint())), closed, 1e-10);
  }
}

TEST(QfMapEntropy, ExtremeClosedForm) {
  rng::RngStream r(92, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix rr = rng::random_contraction(3, r);
    const ComplexMatrix p = rng::random_projector(3, trial % 4, r);
    EXPECT_NEAR(qf_map_entropy(qf_extreme(rr, p)), qf_extreme_entropy_closed(rr, p), 1e-9);
  }
}

TEST(QfSamplers, BistochasticAndExtreme) {
  EXPECT_TRUE(matrices_near(qf_bistochastic(ComplexMatrix::Zero(3, 3)).z(), 0.5 * identity(3), 0.0));
  rng::RngStream r(93, 0);
  const ComplexMatrix rr = rng::random_contraction(3, r);
  EXPECT_TRUE(matrices_near(qf_extreme(rr, ComplexMatrix::Zero(3, 3)).z(), ComplexMatrix::Zero(3, 3), 0.0));
  EXPECT_TRUE(matrices_near(qf_extreme(rr, identity(3)).z(), identity(3) - rr.adjoint() * rr, 1e-12));
  EXPECT_THROW(qf_bistochastic(2.0 * identity(2)), NormError);
  EXPECT_THROW(qf_extreme(0.5 * identity(2), 0.5 * identity(2)), ProjectorError);
}

TEST(QfSubadditivity, BistochasticPairs) {
  rng::RngStream r(94, 0);
  for (int n : {2, 4, 16}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Map m1 = qf_bistochastic(rng::random_contraction(n, r));
      const Map m2 = qf_bistochastic(rng::random_contraction(n, r));
      const double s1 = qf_map_entropy(m1);
      const double s2 = qf_map_entropy(m2);
      const double s21 = qf_map_entropy(qf_compose(m2, m1));
      EXPECT_LE(std::max(s1, s2) - 1e-8, s21);
      EXPECT_LE(s21, s1 + s2 + 1e-8);
    }
  }
}

TEST(FockBasis, Ordering) {
  const auto b = fock_basis(3);
  ASSERT_EQ(b.size(), 8u);
  EXPECT_TRUE(b[0].empty());
  EXPECT_EQ(b[1], std::vector<int>{0});
  EXPECT_EQ(b[4], (std::vector<int>{0, 1}));
  EXPECT_EQ(b[6], (std::vector<int>{1, 2}));
  EXPECT_EQ(b[7], (std::vector<int>{0, 1, 2}));
}

TEST(AntisymmetricPower, MatchesExplicitAntisymmetrizer) {
  rng::RngStream r(95, 0);
  for (int n = 1; n <= 4; ++n) {
    const ComplexMatrix a = rng::ginibre(n, r);
    for (int k = 0; k <= n; ++k) {
      EXPECT_TRUE(matrices_near(antisymmetric_power(a, k), antisymmetrizer_oracle(a, k), 1e-12))
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(FockDensity, OneModeAndTracial) {
  const DensityMatrix one = fock_density(Symbol::validated(diag({0.3})));
  EXPECT_TRUE(matrices_near(one.matrix(), diag({0.7, 0.3}), 1e-15));
  for (int n = 1; n <= 4; ++n) {
    const double d = std::pow(2.0, n);
    EXPECT_TRUE(matrices_near(fock_density(half(n)).matrix(), identity(1 << n) / d, 1e-14));
  }
}

TEST(FockDensity, ProjectorIsPureInSector) {
  rng::RngStream r(96, 0);
  const ComplexMatrix p = rng::random_projector(2, 1, r);
  const DensityMatrix rho = fock_density(Symbol::validated(p));
  EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-9);
  EXPECT_NEAR(rho.matrix().block(1, 1, 2, 2).trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(rho.matrix()(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(rho.matrix()(3, 3)), 0.0, 1e-15);
}

TEST(FockDensity, MatchesOracleAndEntropy) {
  rng::RngStream r(97, 0);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const Symbol q = rng::random_symbol(n, r);
      const DensityMatrix rho = fock_density(q);
      EXPECT_TRUE(matrices_near(rho.matrix(), fock_oracle(q.matrix()), 1e-10));
      EXPECT_NEAR(von_neumann_entropy(rho), qf_state_entropy(q), 1e-8);
    }
  }
}

TEST(FockDensity, Refusals) {
  rng::RngStream r(98, 0);
  EXPECT_THROW(fock_density(half(5)), ModeLimitError);
  EXPECT_THROW(fock_density(Symbol::validated(diag({1.0, 0.5}))), SingularSymbolError);
}
