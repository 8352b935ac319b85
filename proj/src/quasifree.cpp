#include "dynsub/quasifree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dynsub::qf {

namespace {

void require_modes(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.rows() << " vs " << b.rows() << ")";
    throw DimensionError(os.str());
  }
}

double symbol_entropy_of_spectrum(const Spectrum& s) {
  double h = 0.0;
  for (double q : s.values) h += eta(q) + eta(1.0 - q);
  return h;
}

// k-subsets of {0..n-1} in lexicographic order.
void subsets_of_size(int n, int k, int start, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_of_size(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> sector(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets_of_size(n, k, 0, cur, out);
  return out;
}

Complex minor(const ComplexMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.empty()) return {1.0, 0.0};
  const auto k = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      sub(i, j) = a(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    }
  }
  return sub.determinant();
}

ComplexMatrix block_symbol(const ComplexMatrix& off, const ComplexMatrix& lower) {
  const auto n = off.rows();
  ComplexMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = ComplexMatrix::Identity(n, n);
  s.topRightCorner(n, n) = off;
  s.bottomLeftCorner(n, n) = off.adjoint();
  s.bottomRightCorner(n, n) = lower;
  return 0.5 * s;
}

struct Blocks {
  ComplexMatrix off;    // X1
  ComplexMatrix lower;  // X2
};

Blocks split_symbol(const Symbol& s) {
  const auto dim = s.matrix().rows();
  if (dim % 2 != 0) {
    throw BlockFormError("qf_odot_symbol: symbol dimension is odd");
  }
  const auto n = dim / 2;
  const ComplexMatrix& m = s.matrix();
  if (max_abs(m.topLeftCorner(n, n) - 0.5 * ComplexMatrix::Identity(n, n)) > kSymbolTol) {
    throw BlockFormError("qf_odot_symbol: top-left block is not 1/2");
  }
  return Blocks{2.0 * m.topRightCorner(n, n), 2.0 * m.bottomRightCorner(n, n)};
}

}  // namespace

Symbol Symbol::validated(ComplexMatrix q, double tol) {
  require_square(q, "Symbol");
  require_finite(q, "Symbol");
  const Spectrum s = eigenvalues_hermitian(q, tol);
  if (s.min() < -tol || s.max() > 1.0 + tol) {
    std::ostringstream os;
    os << "Symbol: spectrum [" << s.min() << ", " << s.max() << "] leaves [0,1]";
    throw ConstraintError(os.str());
  }
  return Symbol(std::move(q));
}

Map qf_validate(ComplexMatrix r, ComplexMatrix z, double tol) {
  require_square(r, "qf_validate");
  require_square(z, "qf_validate");
  require_modes(r, z, "qf_validate");
  require_finite(r, "qf_validate");
  require_finite(z, "qf_validate");
  if (hermiticity_defect(z) > tol * std::max(1.0, max_abs(z))) {
    throw ConstraintError("qf_validate: Z is not Hermitian");
  }
  if (eigenvalues_hermitian(z, tol).min() < -tol) {
    throw ConstraintError("qf_validate: violates 0 <= Z");
  }
  const auto n = static_cast<int>(r.rows());
  const ComplexMatrix gap = identity(n) - r.adjoint() * r - z;
  if (eigenvalues_hermitian(gap, tol).min() < -tol) {
    throw ConstraintError("qf_validate: violates Z <= 1 - R^dagger R");
  }
  return Map(std::move(r), std::move(z));
}

Symbol qf_apply(const Map& m, const Symbol& q) {
  require_modes(m.r(), q.matrix(), "qf_apply");
  return Symbol::validated(m.r().adjoint() * q.matrix() * m.r() + m.z());
}

Map qf_compose(const Map& later, const Map& earlier) {
  require_modes(later.r(), earlier.r(), "qf_compose");
  ComplexMatrix r = earlier.r() * later.r();
  ComplexMatrix z = later.r().adjoint() * earlier.z() * later.r() + later.z();
  return qf_validate(std::move(r), std::move(z));
}

Symbol qf_jam_symbol(const Map& m) {
  return Symbol(block_symbol(m.r(), m.r().adjoint() * m.r() + 2.0 * m.z()));
}

Symbol qf_odot_symbol(const Symbol& later_sym, const Symbol& earlier_sym) {
  if (later_sym.modes() != earlier_sym.modes()) {
    throw DimensionError("qf_odot_symbol: symbols on different mode counts");
  }
  const Blocks a = split_symbol(earlier_sym);
  const Blocks b = split_symbol(later_sym);
  const auto n = a.off.rows();
  const ComplexMatrix c1 = a.off * b.off;
  const ComplexMatrix c2 =
      b.off.adjoint() * (a.lower - ComplexMatrix::Identity(n, n)) * b.off + b.lower;
  return Symbol::validated(block_symbol(c1, c2));
}

double qf_state_entropy(const Symbol& q) {
  return symbol_entropy_of_spectrum(eigenvalues_hermitian(q.matrix(), kSymbolTol));
}

double qf_map_entropy(const Map& m) { return qf_state_entropy(qf_jam_symbol(m)); }

double qf_bistochastic_entropy_closed(const ComplexMatrix& r) {
  double h = 0.0;
  // Singular values of R as square roots of the spectrum of R^dagger R.
  for (double l2 : eigenvalues_hermitian(r.adjoint() * r, kSymbolTol).values) {
    const double l = std::sqrt(std::max(0.0, l2));
    h += eta(0.5 * (1.0 + l)) + eta(0.5 * (1.0 - l));
  }
  return 2.0 * h;
}

double qf_extreme_entropy_closed(const ComplexMatrix& r, const ComplexMatrix& p) {
  require_modes(r, p, "qf_extreme_entropy_closed");
  const auto n = static_cast<int>(r.rows());
  const ComplexMatrix abs_r = psd_sqrt(r.adjoint() * r);
  const ComplexMatrix arg = 0.5 * (identity(n) + abs_r * abs_r - 2.0 * abs_r * p * abs_r);
  return symbol_entropy_of_spectrum(eigenvalues_hermitian(arg, kSymbolTol));
}

Map qf_bistochastic(const ComplexMatrix& r) {
  require_square(r, "qf_bistochastic");
  if (operator_norm(r) > 1.0 + kSymbolTol) {
    throw NormError("qf_bistochastic: |R| exceeds 1");
  }
  const auto n = static_cast<int>(r.rows());
  return qf_validate(r, 0.5 * (identity(n) - r.adjoint() * r));
}

Map qf_extreme(const ComplexMatrix& r, const ComplexMatrix& p) {
  require_square(r, "qf_extreme");
  require_modes(r, p, "qf_extreme");
  if (operator_norm(r) > 1.0 + kSymbolTol) {
    throw NormError("qf_extreme: |R| exceeds 1");
  }
  if (max_abs(p * p - p) > kSymbolTol || hermiticity_defect(p) > kSymbolTol) {
    throw ProjectorError("qf_extreme: P is not an orthogonal projector");
  }
  const auto n = static_cast<int>(r.rows());
  const ComplexMatrix root = psd_sqrt(identity(n) - r.adjoint() * r);
  return qf_validate(r, root * p * root);
}

std::vector<std::vector<int>> fock_basis(int modes) {
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= modes; ++k) {
    auto s = sector(modes, k);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

ComplexMatrix antisymmetric_power(const ComplexMatrix& a, int k) {
  const auto basis = sector(static_cast<int>(a.rows()), k);
  const auto d = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = minor(a, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

DensityMatrix fock_density(const Symbol& q) {
  const int n = q.modes();
  if (n > kMaxFockModes) {
    std::ostringstream os;
    os << "fock_density: " << n << " modes exceeds the limit of " << kMaxFockModes;
    throw ModeLimitError(os.str());
  }
  const Spectrum s = eigenvalues_hermitian(q.matrix(), kSymbolTol);
  const auto dim = Eigen::Index{1} << n;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);

  if (s.max() < 1.0 - kSymbolTol) {
    const ComplexMatrix one_minus = identity(n) - q.matrix();
    const ComplexMatrix a = q.matrix() * one_minus.inverse();
    const Complex norm = one_minus.determinant();
    Eigen::Index offset = 0;
    for (int k = 0; k <= n; ++k) {
      const ComplexMatrix blk = antisymmetric_power(a, k);
      rho.block(offset, offset, blk.rows(), blk.cols()) = norm * blk;
      offset += blk.rows();
    }
    return DensityMatrix::validated(std::move(rho), 1e-8);
  }

  const bool projector = std::all_of(s.values.begin(), s.values.end(), [](double v) {
    return std::abs(v) <= kSymbolTol || std::abs(v - 1.0) <= kSymbolTol;
  });
  if (!projector) {
    throw SingularSymbolError(
        "fock_density: symbol has eigenvalue 1 but is not a projector");
  }
  const int rank = static_cast<int>(std::count_if(
      s.values.begin(), s.values.end(), [](double v) { return v > 0.5; }));
  Eigen::Index offset = 0;
  for (int k = 0; k < rank; ++k) offset += static_cast<Eigen::Index>(sector(n, k).size());
  const ComplexMatrix blk = antisymmetric_power(q.matrix(), rank);
  rho.block(offset, offset, blk.rows(), blk.cols()) = blk;
  return DensityMatrix::validated(std::move(rho), 1e-8);
}

}  // namespace dynsub::qf
