#include "dynsub/statecomp.hpp"

#include <cmath>
#include <sstream>

namespace dynsub {

namespace {

bool marginal_is_flat(const ComplexMatrix& s, Side side, double tol) {
  const ComplexMatrix marg = partial_trace(s, side);
  const auto n = static_cast<int>(marg.rows());
  return max_abs(marg - identity(n) / static_cast<double>(n)) <= tol;
}

}  // namespace

BipartiteOperator::BipartiteOperator(ComplexMatrix m) : n_(0), mat_(std::move(m)) {
  require_square(mat_, "BipartiteOperator");
  n_ = square_root_dim(mat_.rows());
}

const char* to_string(StateLabel label) {
  switch (label) {
    case StateLabel::General: return "GENERAL";
    case StateLabel::DI: return "D_I";
    case StateLabel::DII: return "D_II";
  }
  return "?";
}

BipartiteOperator odot_raw(const BipartiteOperator& x, const BipartiteOperator& y) {
  if (x.n() != y.n()) {
    std::ostringstream os;
    os << "odot_raw: operands act on different spaces (N=" << x.n() << " vs N=" << y.n() << ")";
    throw DimensionError(os.str());
  }
  return BipartiteOperator(reshuffle(reshuffle(x.matrix()) * reshuffle(y.matrix())));
}

StateClass membership(const DensityMatrix& s, double tol) {
  require_square(s.matrix(), "membership");
  square_root_dim(s.matrix().rows());
  StateLabel label = StateLabel::General;
  if (marginal_is_flat(s.matrix(), Side::A, tol)) {
    label = marginal_is_flat(s.matrix(), Side::B, tol) ? StateLabel::DII : StateLabel::DI;
  }
  return StateClass{label, tol};
}

DensityMatrix odot_state(const DensityMatrix& s1, const DensityMatrix& s2, double tol) {
  if (membership(s1, tol).label == StateLabel::General ||
      membership(s2, tol).label == StateLabel::General) {
    throw ClassError("odot_state: operands must have a maximally mixed first marginal");
  }
  const BipartiteOperator raw = odot_raw(BipartiteOperator(s1.matrix()), BipartiteOperator(s2.matrix()));
  return DensityMatrix::validated(raw.matrix() * static_cast<double>(raw.n()), kClampTol);
}

BipartiteOperator idempotent_extension(const DensityMatrix& rho0) {
  const int n = rho0.dim();
  return BipartiteOperator(kron(rho0.matrix(), identity(n)) / static_cast<double>(n));
}

double not_square_witness(const DensityMatrix& s) {
  const BipartiteOperator op(s.matrix());
  return max_abs(odot_raw(op, op).matrix() - s.matrix() * s.matrix());
}

ComplexMatrix maximally_entangled_projector(int n) {
  const ComplexVector psi = vec_rowmajor(identity(n)) / std::sqrt(static_cast<double>(n));
  return psi * psi.adjoint();
}

}  // namespace dynsub
