#pragma once

// Dense complex linear algebra used by every other module.
//
// Index convention: 0-based, row-major vectorization. A matrix entry X(m, mu)
// of an N-dimensional matrix sits at vector position m*N + mu, and every
// composite index on C^N (x) C^N is written (first*N + second).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dynsub/errors.hpp"

namespace dynsub {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Eigenvalues in [-kClampTol, 0] are treated as zero.
inline constexpr double kClampTol = 1e-9;
// Relative tolerance on |X - X^dagger| accepted by eig_hermitian.
inline constexpr double kHermitianTol = 1e-10;

enum class Side { A, B };

/// Ascending list of eigenvalues.
struct Spectrum {
  std::vector<double> values;

  std::size_t dimension() const { return values.size(); }
  double min() const { return values.front(); }
  double max() const { return values.back(); }
};

struct HermitianEigen {
  Spectrum spectrum;
  ComplexMatrix vectors;  // column k belongs to spectrum.values[k]
};

// ---------------------------------------------------------------------------
// shape helpers

/// N such that N*N == d, or DimensionError.
int square_root_dim(Eigen::Index d);

void require_square(const ComplexMatrix& x, const char* what);
void require_finite(const ComplexMatrix& x, const char* what);

double max_abs(const ComplexMatrix& x);
double hermiticity_defect(const ComplexMatrix& x);

ComplexMatrix identity(int n);

/// Row-major vectorization: out[m*N + mu] = x(m, mu).
ComplexVector vec_rowmajor(const ComplexMatrix& x);
ComplexMatrix unvec_rowmajor(const ComplexVector& v, int n);

// ---------------------------------------------------------------------------
// structural operations

/// The reshuffling involution on C^N (x) C^N:
/// out[m*N+n, mu*N+nu] = x[m*N+mu, n*N+nu].
ComplexMatrix reshuffle(const ComplexMatrix& x);

/// Partial trace of a square bipartite matrix. Side::A traces out the first
/// factor, Side::B the second.
ComplexMatrix partial_trace(const ComplexMatrix& x, Side side);

/// Partial trace on C^dim_a (x) C^dim_b.
ComplexMatrix partial_trace(const ComplexMatrix& x, int dim_a, int dim_b, Side side);

/// Kronecker product with composite index (i*M + k, j*M + l).
ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

// ---------------------------------------------------------------------------
// spectral routines

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized before
/// decomposition; a defect above hermit_tol * max(1, |X|_max) is an error.
HermitianEigen eig_hermitian(const ComplexMatrix& x, double hermit_tol = kHermitianTol);
Spectrum eigenvalues_hermitian(const ComplexMatrix& x, double hermit_tol = kHermitianTol);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& x);

/// Largest singular value, from the top eigenvalue of X^dagger X.
double operator_norm(const ComplexMatrix& x);

/// f(X) for Hermitian X via its eigendecomposition.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& x, F&& f) {
  const HermitianEigen e = eig_hermitian(x);
  RealVector mapped(static_cast<Eigen::Index>(e.spectrum.dimension()));
  for (Eigen::Index k = 0; k < mapped.size(); ++k) {
    mapped(k) = f(e.spectrum.values[static_cast<std::size_t>(k)]);
  }
  return e.vectors * mapped.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

/// Principal square root of a positive semidefinite matrix (negative noise
/// within kClampTol is clamped).
ComplexMatrix psd_sqrt(const ComplexMatrix& x);

// ---------------------------------------------------------------------------
// entropy primitives

/// eta(x) = -x ln x with eta(0) = 0. Arguments within clamp_tol of [0,1] are
/// clamped; anything further out is a DomainError.
double eta(double x, double clamp_tol = kClampTol);

/// Sum of eta over a probability list.
double shannon_entropy(std::span<const double> probs);

/// Validated density matrix: Hermitian, PSD and of unit trace within tol.
/// The spectrum computed during validation is kept for entropy evaluation.
class DensityMatrix {
 public:
  static DensityMatrix validated(ComplexMatrix x, double tol = kClampTol);

  const ComplexMatrix& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Spectrum& spectrum() const { return spectrum_; }
  double tolerance() const { return tol_; }

 private:
  DensityMatrix(ComplexMatrix m, Spectrum s, double tol)
      : mat_(std::move(m)), spectrum_(std::move(s)), tol_(tol) {}

  ComplexMatrix mat_;
  Spectrum spectrum_;
  double tol_;
};

/// Maximally mixed state 1/N.
DensityMatrix maximally_mixed(int n);

/// S(rho) = sum_i eta(lambda_i) over the clamped spectrum, in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// Convenience: validate then take the entropy.
double von_neumann_entropy(const ComplexMatrix& rho, double tol = kClampTol);

/// Entropy of a spectrum given as a list of eigenvalues of a density matrix.
double spectral_entropy(std::span<const double> eigenvalues, double clamp_tol = kClampTol);

}  // namespace dynsub
