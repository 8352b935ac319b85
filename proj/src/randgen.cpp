#include "dynsub/randgen.hpp"

#include <cmath>
#include <sstream>

namespace dynsub::rng {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<double> dirichlet_ones(int n, RngStream& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& v : w) {
    v = expo(rng.engine());
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

// (tr W)^{-1/2} restricted to the marginal of the given side.
ComplexMatrix inverse_sqrt_marginal(const ComplexMatrix& w, Side side) {
  return hermitian_function(partial_trace(w, side), [](double v) {
    if (v <= 0.0) {
      throw ConvergenceError("sinkhorn: marginal is singular");
    }
    return 1.0 / std::sqrt(v);
  });
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(stream_index + 0x5851F42D4C957F2DULL))) {}

double RngStream::normal() { return normal_(engine_); }
double RngStream::uniform() { return uniform_(engine_); }
int RngStream::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

ComplexMatrix ginibre(int rows, int cols, RngStream& rng) {
  const double s = std::sqrt(0.5);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex{s * re, s * im};
    }
  }
  return g;
}

ComplexMatrix ginibre(int n, RngStream& rng) { return ginibre(n, n, rng); }

ComplexMatrix haar_unitary(int n, RngStream& rng) {
  const ComplexMatrix g = ginibre(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

DensityMatrix random_density(int n, RngStream& rng) {
  const ComplexMatrix g = ginibre(n, rng);
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix::validated(std::move(w));
}

DensityMatrix random_pure_state(int n, RngStream& rng) {
  ComplexVector psi = ginibre(n, 1, rng).col(0);
  psi.normalize();
  return DensityMatrix::validated(psi * psi.adjoint());
}

Channel random_channel(int n, RngStream& rng) {
  const ComplexMatrix g = ginibre(n * n, rng);
  const ComplexMatrix w = g * g.adjoint();
  const ComplexMatrix s = kron(identity(n), inverse_sqrt_marginal(w, Side::A));
  ComplexMatrix d = s * w * s;
  d = 0.5 * (d + d.adjoint());
  return Channel(std::move(d));
}

Channel sinkhorn_bistochastic(const ComplexMatrix& w, int max_iter, double tol) {
  require_square(w, "sinkhorn_bistochastic");
  const int n = square_root_dim(w.rows());
  const ComplexMatrix one = identity(n);
  ComplexMatrix d = w * (static_cast<double>(n) / w.trace().real());
  for (int it = 0; it < max_iter; ++it) {
    const ComplexMatrix sa = kron(one, inverse_sqrt_marginal(d, Side::A));
    d = sa * d * sa;
    const ComplexMatrix sb = kron(inverse_sqrt_marginal(d, Side::B), one);
    d = sb * d * sb;
    d = 0.5 * (d + d.adjoint());
    const double err_a = max_abs(partial_trace(d, Side::A) - one);
    const double err_b = max_abs(partial_trace(d, Side::B) - one);
    if (err_a <= tol && err_b <= tol) {
      return Channel(std::move(d));
    }
  }
  std::ostringstream os;
  os << "sinkhorn_bistochastic: no convergence within " << max_iter << " iterations";
  throw ConvergenceError(os.str());
}

Channel random_unitary_mixture(int n, int k, RngStream& rng) {
  const std::vector<double> p = dirichlet_ones(k, rng);
  ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
  for (int i = 0; i < k; ++i) {
    const ComplexVector v = vec_rowmajor(haar_unitary(n, rng));
    choi.noalias() += p[static_cast<std::size_t>(i)] * (v * v.adjoint());
  }
  return Channel(std::move(choi));
}

Channel random_bistochastic_channel(int n, RngStream& rng, BistochasticMethod method) {
  if (method == BistochasticMethod::UnitaryMixture) {
    return random_unitary_mixture(n, n * n, rng);
  }
  const ComplexMatrix g = ginibre(n * n, rng);
  return sinkhorn_bistochastic(g * g.adjoint());
}

classical::StochasticMatrix random_stochastic(int n, RngStream& rng) {
  RealMatrix t(n, n);
  for (int j = 0; j < n; ++j) {
    const std::vector<double> col = dirichlet_ones(n, rng);
    for (int i = 0; i < n; ++i) t(i, j) = col[static_cast<std::size_t>(i)];
  }
  return classical::StochasticMatrix::validated(std::move(t));
}

classical::StochasticMatrix sinkhorn_matrix(const RealMatrix& positive, double tol, int max_iter) {
  RealMatrix t = positive;
  for (int it = 0; it < max_iter; ++it) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) t.row(i) /= t.row(i).sum();
    for (Eigen::Index j = 0; j < t.cols(); ++j) t.col(j) /= t.col(j).sum();
    const double row_err = (t.rowwise().sum().array() - 1.0).abs().maxCoeff();
    if (row_err <= tol) {
      return classical::StochasticMatrix::validated(std::move(t));
    }
  }
  throw ConvergenceError("sinkhorn_matrix: no convergence");
}

classical::StochasticMatrix random_bistochastic_matrix(int n, RngStream& rng) {
  std::exponential_distribution<double> expo(1.0);
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = expo(rng.engine()) + 1e-300;
  }
  return sinkhorn_matrix(m);
}

classical::ProbVector random_prob_vector(int n, RngStream& rng) {
  return classical::ProbVector::validated(dirichlet_ones(n, rng));
}

qf::Symbol random_symbol(int modes, RngStream& rng) {
  const ComplexMatrix u = haar_unitary(modes, rng);
  RealVector q(modes);
  for (int j = 0; j < modes; ++j) q(j) = rng.uniform();
  ComplexMatrix sym = u * q.cast<Complex>().asDiagonal() * u.adjoint();
  sym = 0.5 * (sym + sym.adjoint());
  return qf::Symbol::validated(std::move(sym));
}

ComplexMatrix random_projector(int n, int rank, RngStream& rng) {
  const ComplexMatrix u = haar_unitary(n, rng);
  const ComplexMatrix cols = u.leftCols(rank);
  return cols * cols.adjoint();
}

ComplexMatrix random_contraction(int n, RngStream& rng) {
  const ComplexMatrix g = ginibre(n, rng);
  const double u = 1.0 - rng.uniform();  // (0, 1]
  return g * (u / operator_norm(g));
}

qf::Map random_qf_map(int modes, RngStream& rng, QfKind kind) {
  const ComplexMatrix r = random_contraction(modes, rng);
  switch (kind) {
    case QfKind::Bistochastic:
      return qf::qf_bistochastic(r);
    case QfKind::Extreme: {
      const int rank = rng.uniform_int(0, modes);
      return qf::qf_extreme(r, random_projector(modes, rank, rng));
    }
    case QfKind::Interior: {
      const ComplexMatrix root = psd_sqrt(identity(modes) - r.adjoint() * r);
      const qf::Symbol x = random_symbol(modes, rng);
      return qf::qf_validate(r, root * x.matrix() * root);
    }
  }
  throw DomainError("random_qf_map: unknown kind");
}

}  // namespace dynsub::rng
