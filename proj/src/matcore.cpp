#include "dynsub/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dynsub {

int square_root_dim(Eigen::Index d) {
  if (d <= 0) {
    throw DimensionError("dimension must be positive");
  }
  auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d))));
  while (n * n > d) --n;
  while ((n + 1) * (n + 1) <= d) ++n;
  if (n * n != d) {
    std::ostringstream os;
    os << "dimension " << d << " is not a perfect square";
    throw DimensionError(os.str());
  }
  return static_cast<int>(n);
}

void require_square(const ComplexMatrix& x, const char* what) {
  if (x.rows() != x.cols() || x.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a nonempty square matrix, got " << x.rows() << "x" << x.cols();
    throw DimensionError(os.str());
  }
}

void require_finite(const ComplexMatrix& x, const char* what) {
  if (!x.allFinite()) {
    throw DomainError(std::string(what) + ": matrix has non-finite entries");
  }
}

double max_abs(const ComplexMatrix& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& x) {
  return max_abs(x - x.adjoint());
}

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

ComplexVector vec_rowmajor(const ComplexMatrix& x) {
  const Eigen::Index rows = x.rows();
  const Eigen::Index cols = x.cols();
  ComplexVector v(rows * cols);
  for (Eigen::Index m = 0; m < rows; ++m) {
    for (Eigen::Index mu = 0; mu < cols; ++mu) {
      v(m * cols + mu) = x(m, mu);
    }
  }
  return v;
}

ComplexMatrix unvec_rowmajor(const ComplexVector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    throw DimensionError("unvec_rowmajor: vector length is not n^2");
  }
  ComplexMatrix x(n, n);
  for (int m = 0; m < n; ++m) {
    for (int mu = 0; mu < n; ++mu) {
      x(m, mu) = v(m * n + mu);
    }
  }
  return x;
}

ComplexMatrix reshuffle(const ComplexMatrix& x) {
  require_square(x, "reshuffle");
  const int n = square_root_dim(x.rows());
  ComplexMatrix out(x.rows(), x.cols());
  for (int m = 0; m < n; ++m) {
    for (int nn = 0; nn < n; ++nn) {
      for (int mu = 0; mu < n; ++mu) {
        for (int nu = 0; nu < n; ++nu) {
          out(m * n + nn, mu * n + nu) = x(m * n + mu, nn * n + nu);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, Side side) {
  require_square(x, "partial_trace");
  const int n = square_root_dim(x.rows());
  return partial_trace(x, n, n, side);
}

ComplexMatrix partial_trace(const ComplexMatrix& x, int dim_a, int dim_b, Side side) {
  require_square(x, "partial_trace");
  if (dim_a <= 0 || dim_b <= 0 || x.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw DimensionError("partial_trace: factor dimensions do not match the matrix");
  }
  if (side == Side::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (int m = 0; m < dim_a; ++m) {
      out += x.block(static_cast<Eigen::Index>(m) * dim_b, static_cast<Eigen::Index>(m) * dim_b,
                     dim_b, dim_b);
    }
    return out;
  }
  ComplexMatrix out(dim_a, dim_a);
  for (int m = 0; m < dim_a; ++m) {
    for (int n = 0; n < dim_a; ++n) {
      Complex acc{0.0, 0.0};
      for (int mu = 0; mu < dim_b; ++mu) {
        acc += x(static_cast<Eigen::Index>(m) * dim_b + mu, static_cast<Eigen::Index>(n) * dim_b + mu);
      }
      out(m, n) = acc;
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

HermitianEigen eig_hermitian(const ComplexMatrix& x, double hermit_tol) {
  require_square(x, "eig_hermitian");
  require_finite(x, "eig_hermitian");
  const double scale = std::max(1.0, max_abs(x));
  const double defect = hermiticity_defect(x);
  if (defect > hermit_tol * scale) {
    std::ostringstream os;
    os << "eig_hermitian: matrix is not Hermitian (defect " << defect << ")";
    throw HermiticityError(os.str());
  }
  const ComplexMatrix sym = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  const RealVector& vals = solver.eigenvalues();
  const auto dim = static_cast<std::size_t>(vals.size());

  // Eigen already returns ascending values; the stable sort pins tie order
  // to the solver's column order.
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return vals(static_cast<Eigen::Index>(a)) < vals(static_cast<Eigen::Index>(b));
  });

  HermitianEigen out;
  out.spectrum.values.resize(dim);
  out.vectors.resize(x.rows(), x.cols());
  for (std::size_t k = 0; k < dim; ++k) {
    const auto src = static_cast<Eigen::Index>(order[k]);
    out.spectrum.values[k] = vals(src);
    out.vectors.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(src);
  }
  return out;
}

Spectrum eigenvalues_hermitian(const ComplexMatrix& x, double hermit_tol) {
  require_square(x, "eigenvalues_hermitian");
  require_finite(x, "eigenvalues_hermitian");
  const double scale = std::max(1.0, max_abs(x));
  if (hermiticity_defect(x) > hermit_tol * scale) {
    throw HermiticityError("eigenvalues_hermitian: matrix is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues_hermitian: eigensolver did not converge");
  }
  Spectrum s;
  s.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::stable_sort(s.values.begin(), s.values.end());
  return s;
}

std::vector<double> singular_values(const ComplexMatrix& x) {
  require_finite(x, "singular_values");
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  const RealVector& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double operator_norm(const ComplexMatrix& x) {
  require_finite(x, "operator_norm");
  if (x.size() == 0) return 0.0;
  const ComplexMatrix g = x.adjoint() * x;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

ComplexMatrix psd_sqrt(const ComplexMatrix& x) {
  return hermitian_function(x, [](double v) {
    if (v < -kClampTol) {
      throw PositivityError("psd_sqrt: matrix has a negative eigenvalue");
    }
    return std::sqrt(std::max(v, 0.0));
  });
}

double eta(double x, double clamp_tol) {
  if (!(x >= -clamp_tol && x <= 1.0 + clamp_tol)) {
    std::ostringstream os;
    os << "eta: argument " << x << " outside [0,1]";
    throw DomainError(os.str());
  }
  x = std::clamp(x, 0.0, 1.0);
  if (x == 0.0) return 0.0;
  return -x * std::log(x);
}

double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) h += eta(p);
  return h;
}

double spectral_entropy(std::span<const double> eigenvalues, double clamp_tol) {
  double s = 0.0;
  for (double v : eigenvalues) {
    if (v < -clamp_tol) {
      std::ostringstream os;
      os << "entropy: eigenvalue " << v << " is negative beyond tolerance";
      throw PositivityError(os.str());
    }
    s += eta(v, clamp_tol);
  }
  return s;
}

DensityMatrix DensityMatrix::validated(ComplexMatrix x, double tol) {
  require_square(x, "DensityMatrix");
  require_finite(x, "DensityMatrix");
  const double scale = std::max(1.0, max_abs(x));
  const double defect = hermiticity_defect(x);
  if (defect > tol * scale) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (defect " << defect << ")";
    throw HermiticityError(os.str());
  }
  const double tr = x.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw TraceError(os.str());
  }
  Spectrum s = eigenvalues_hermitian(x, tol);
  if (s.min() < -tol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << s.min();
    throw PositivityError(os.str());
  }
  return DensityMatrix(std::move(x), std::move(s), tol);
}

DensityMatrix maximally_mixed(int n) {
  return DensityMatrix::validated(identity(n) / static_cast<double>(n));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return spectral_entropy(rho.spectrum().values, rho.tolerance());
}

double von_neumann_entropy(const ComplexMatrix& rho, double tol) {
  return von_neumann_entropy(DensityMatrix::validated(rho, tol));
}

}  // namespace dynsub
