#pragma once

// Quasi-free (Gaussian) fermionic states and maps on N modes.
//
// A quasi-free state is fixed by its symbol Q, 0 <= Q <= 1. A quasi-free
// CPTP map is a pair (R, Z) with 0 <= Z <= 1 - R^dagger R acting on symbols
// as Q -> R^dagger Q R + Z.

#include <vector>

#include "dynsub/matcore.hpp"

namespace dynsub::qf {

inline constexpr double kSymbolTol = 1e-9;
inline constexpr int kMaxFockModes = 4;

class Map;

class Symbol {
 public:
  /// Hermitian with spectrum in [0,1] up to tol.
  static Symbol validated(ComplexMatrix q, double tol = kSymbolTol);

  const ComplexMatrix& matrix() const { return q_; }
  int modes() const { return static_cast<int>(q_.rows()); }

 private:
  friend Symbol qf_jam_symbol(const Map& m);
  explicit Symbol(ComplexMatrix q) : q_(std::move(q)) {}
  ComplexMatrix q_;
};

class Map {
 public:
  const ComplexMatrix& r() const { return r_; }
  const ComplexMatrix& z() const { return z_; }
  int modes() const { return static_cast<int>(r_.rows()); }

 private:
  friend Map qf_validate(ComplexMatrix r, ComplexMatrix z, double tol);
  Map(ComplexMatrix r, ComplexMatrix z) : r_(std::move(r)), z_(std::move(z)) {}

  ComplexMatrix r_;
  ComplexMatrix z_;
};

/// Checks 0 <= Z and Z <= 1 - R^dagger R; ConstraintError names the failing side.
Map qf_validate(ComplexMatrix r, ComplexMatrix z, double tol = kSymbolTol);

/// R^dagger Q R + Z.
Symbol qf_apply(const Map& m, const Symbol& q);

/// The map acting as later after earlier:
///   R = R_earlier R_later,  Z = R_later^dagger Z_earlier R_later + Z_later.
Map qf_compose(const Map& later, const Map& earlier);

/// Symbol of the associated bipartite state on 2N modes:
///   1/2 [[1, R], [R^dagger, R^dagger R + 2Z]].
/// A validated map always yields a valid symbol, so it is not re-checked.
Symbol qf_jam_symbol(const Map& m);

/// Composition of two 2N-mode symbols of block form 1/2 [[1, X1], [X1^dagger, X2]].
/// With earlier = 1/2[[1, A1], [., A2]] and later = 1/2[[1, B1], [., B2]]
/// the result has blocks
///   C1 = A1 B1,  C2 = B1^dagger (A2 - 1) B1 + B2,
/// so that qf_odot_symbol(jam(L), jam(E)) == jam(qf_compose(L, E)).
Symbol qf_odot_symbol(const Symbol& later_sym, const Symbol& earlier_sym);

/// tr(eta(Q) + eta(1 - Q)).
double qf_state_entropy(const Symbol& q);
/// Entropy of the Jamiolkowski symbol.
double qf_map_entropy(const Map& m);

/// 2 sum_j [eta((1 + l_j)/2) + eta((1 - l_j)/2)], l_j the singular values of R.
double qf_bistochastic_entropy_closed(const ComplexMatrix& r);
/// S^qf((1 + |R|^2 - 2 |R| P |R|) / 2) for the extreme map built from (R, P).
double qf_extreme_entropy_closed(const ComplexMatrix& r, const ComplexMatrix& p);

/// Z = (1 - R^dagger R) / 2. Requires |R| <= 1.
Map qf_bistochastic(const ComplexMatrix& r);
/// Z = sqrt(1 - R^dagger R) P sqrt(1 - R^dagger R) with P an orthogonal projector.
Map qf_extreme(const ComplexMatrix& r, const ComplexMatrix& p);

/// Occupation subsets of {0..N-1}, grouped by particle number and ordered
/// lexicographically inside each sector. Index k of the Fock density matrix
/// belongs to fock_basis(N)[k].
std::vector<std::vector<int>> fock_basis(int modes);

/// Density matrix of the quasi-free state on the 2^N-dimensional Fock space:
///   det(1 - Q) { 1 (+) A (+) Lambda^2 A (+) ... },  A = Q (1 - Q)^{-1},
/// or Lambda^k(P) in sector k = rank P for a projector symbol P.
/// Symbols with an eigenvalue at 1 that are not projectors are refused.
DensityMatrix fock_density(const Symbol& q);

/// Restriction of A^{(x)k} to the antisymmetric subspace, in the basis of
/// normalized wedge products e_S ordered as in fock_basis.
ComplexMatrix antisymmetric_power(const ComplexMatrix& a, int k);

}  // namespace dynsub::qf
