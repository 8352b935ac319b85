#pragma once

// The composition of bipartite operators induced by concatenation of maps:
//
//   X (.) Y = (X^R Y^R)^R
//
// At the Choi level D_{Phi o Psi} = D_Phi (.) D_Psi. For unit-trace states the
// raw product has trace 1/N, so the state-level product rescales by N.

#include "dynsub/matcore.hpp"

namespace dynsub {

inline constexpr double kMembershipTol = 1e-8;

/// Square matrix on C^N (x) C^N.
class BipartiteOperator {
 public:
  explicit BipartiteOperator(ComplexMatrix m);

  int n() const { return n_; }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  int n_;
  ComplexMatrix mat_;
};

enum class StateLabel { General, DI, DII };

struct StateClass {
  StateLabel label;
  double tolerance;
};

const char* to_string(StateLabel label);

/// (X^R Y^R)^R without rescaling.
BipartiteOperator odot_raw(const BipartiteOperator& x, const BipartiteOperator& y);

/// N * odot_raw(s1, s2) for states whose first marginal is maximally mixed.
/// Throws ClassError when either operand is outside that class.
DensityMatrix odot_state(const DensityMatrix& s1, const DensityMatrix& s2,
                         double tol = kMembershipTol);

/// DI: tr_A s = 1/N within tol. DII: additionally tr_B s = 1/N.
StateClass membership(const DensityMatrix& s, double tol = kMembershipTol);

/// rho0 (x) 1 / N.
BipartiteOperator idempotent_extension(const DensityMatrix& rho0);

/// |s (.) s - s s|_max, nonzero for generic s.
double not_square_witness(const DensityMatrix& s);

/// Projector onto (1/sqrt N) sum_m |m>|m>.
ComplexMatrix maximally_entangled_projector(int n);

}  // namespace dynsub
