#include "dynsub/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dynsub::classical {

namespace {

constexpr double kInvariantMultiplicityTol = 1e-8;
constexpr double kInvariantClampTol = 1e-10;

void require_bistochastic(const StochasticMatrix& t, const char* what) {
  if (!t.is_bistochastic()) {
    throw BistochasticityError(std::string(what) + ": matrix is not bistochastic");
  }
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a << " vs " << b;
    throw DimensionError(os.str());
  }
}

}  // namespace

ProbVector ProbVector::validated(std::vector<double> probs, double tol) {
  if (probs.empty()) {
    throw DimensionError("ProbVector: empty");
  }
  double sum = 0.0;
  for (double& p : probs) {
    if (!std::isfinite(p) || p < -tol) {
      std::ostringstream os;
      os << "ProbVector: invalid entry " << p;
      throw StochasticityError(os.str());
    }
    p = std::max(p, 0.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream os;
    os << "ProbVector: entries sum to " << sum;
    throw StochasticityError(os.str());
  }
  return ProbVector(std::move(probs));
}

ProbVector ProbVector::uniform(int n) {
  return ProbVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

ProbVector ProbVector::basis(int n, int k) {
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  p.at(static_cast<std::size_t>(k)) = 1.0;
  return ProbVector(std::move(p));
}

RealVector ProbVector::as_vector() const {
  return Eigen::Map<const RealVector>(probs_.data(), static_cast<Eigen::Index>(probs_.size()));
}

StochasticMatrix StochasticMatrix::validated(RealMatrix t, double tol) {
  if (t.rows() != t.cols() || t.rows() == 0) {
    throw DimensionError("StochasticMatrix: expected a nonempty square matrix");
  }
  if (!t.allFinite()) {
    throw StochasticityError("StochasticMatrix: non-finite entry");
  }
  if (t.minCoeff() < -tol) {
    throw StochasticityError("StochasticMatrix: negative entry");
  }
  t = t.cwiseMax(0.0);
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    const double s = t.col(j).sum();
    if (std::abs(s - 1.0) > tol) {
      std::ostringstream os;
      os << "StochasticMatrix: column " << j << " sums to " << s;
      throw StochasticityError(os.str());
    }
  }
  return StochasticMatrix(std::move(t));
}

StochasticMatrix StochasticMatrix::identity(int n) {
  return StochasticMatrix(RealMatrix::Identity(n, n));
}

StochasticMatrix StochasticMatrix::flat(int n) {
  return StochasticMatrix(RealMatrix::Constant(n, n, 1.0 / n));
}

bool StochasticMatrix::is_bistochastic(double tol) const {
  for (Eigen::Index i = 0; i < t_.rows(); ++i) {
    if (std::abs(t_.row(i).sum() - 1.0) > tol) return false;
  }
  return true;
}

std::vector<double> StochasticMatrix::column(int j) const {
  std::vector<double> c(static_cast<std::size_t>(t_.rows()));
  for (Eigen::Index i = 0; i < t_.rows(); ++i) c[static_cast<std::size_t>(i)] = t_(i, j);
  return c;
}

double shannon_entropy(const ProbVector& p) { return dynsub::shannon_entropy(p.values()); }

ProbVector apply(const StochasticMatrix& t, const ProbVector& p) {
  require_same_dim(t.dim(), p.size(), "apply");
  const RealVector out = t.matrix() * p.as_vector();
  return ProbVector::validated(std::vector<double>(out.data(), out.data() + out.size()), 1e-9);
}

StochasticMatrix multiply(const StochasticMatrix& later, const StochasticMatrix& earlier) {
  require_same_dim(later.dim(), earlier.dim(), "multiply");
  return StochasticMatrix::validated(later.matrix() * earlier.matrix(), 1e-9);
}

double entropy_uniform(const StochasticMatrix& t) {
  // Same operation order as entropy_weighted at P_*, so the two agree exactly.
  const double w = 1.0 / t.dim();
  double h = 0.0;
  for (int j = 0; j < t.dim(); ++j) h += w * dynsub::shannon_entropy(t.column(j));
  return h;
}

ProbVector invariant_state(const StochasticMatrix& t) {
  const int n = t.dim();
  const RealMatrix a = t.matrix() - RealMatrix::Identity(n, n);
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  int null_dim = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= kInvariantMultiplicityTol) ++null_dim;
  }
  if (null_dim != 1) {
    std::ostringstream os;
    os << "invariant_state: eigenvalue 1 has multiplicity " << null_dim;
    throw NonUniqueInvariantError(os.str());
  }
  // Singular values are sorted descending, so the kernel is the last column.
  RealVector x = svd.matrixV().col(n - 1);
  x /= x.sum();
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (x(i) < -kInvariantClampTol) {
      std::ostringstream os;
      os << "invariant_state: negative component " << x(i);
      throw NumericalError(os.str());
    }
    p[static_cast<std::size_t>(i)] = std::max(x(i), 0.0);
  }
  double sum = 0.0;
  for (double v : p) sum += v;
  for (double& v : p) v /= sum;
  return ProbVector::validated(std::move(p));
}

double entropy_weighted(const StochasticMatrix& t, const ProbVector& p) {
  require_same_dim(t.dim(), p.size(), "entropy_weighted");
  double h = 0.0;
  for (int j = 0; j < t.dim(); ++j) {
    h += p[j] * dynsub::shannon_entropy(t.column(j));
  }
  return h;
}

double entropy_invariant(const StochasticMatrix& t) {
  return entropy_weighted(t, invariant_state(t));
}

SlomczynskiBounds slomczynski_bounds(const StochasticMatrix& t, const ProbVector& p) {
  const double hp_t = entropy_weighted(t, p);
  const double h_p = shannon_entropy(p);
  return SlomczynskiBounds{
      .lower = hp_t,
      .upper = hp_t + h_p,
      .weak_upper = hp_t + 2.0 * h_p,
      .actual = shannon_entropy(apply(t, p)),
  };
}

ProductBounds product_bounds(const StochasticMatrix& t2, const StochasticMatrix& t1) {
  require_same_dim(t2.dim(), t1.dim(), "product_bounds");
  const ProbVector flat = ProbVector::uniform(t1.dim());
  const ProbVector p1 = apply(t1, flat);
  const ProbVector p21 = apply(t2, p1);
  const double h1 = entropy_uniform(t1);
  const double h2 = entropy_uniform(t2);
  const double h2_weighted = entropy_weighted(t2, p1);

  ProductBounds b{};
  b.delta1 = shannon_entropy(p21) - shannon_entropy(p1);
  b.delta2 = h2_weighted - h2;
  b.lower = h1 + b.delta1;
  b.upper = h2 + h1 + b.delta2;
  b.loose_upper = h1 + h2_weighted + shannon_entropy(p1);
  b.actual = entropy_uniform(multiply(t2, t1));
  return b;
}

double symmetric_bound_slack(const StochasticMatrix& t1, const StochasticMatrix& t2) {
  require_bistochastic(t1, "symmetric bound");
  require_bistochastic(t2, "symmetric bound");
  const double lhs = std::max(entropy_uniform(t1), entropy_uniform(t2));
  const double rhs = std::min(entropy_uniform(multiply(t1, t2)), entropy_uniform(multiply(t2, t1)));
  return rhs - lhs;
}

bool check_symmetric_bound(const StochasticMatrix& t1, const StochasticMatrix& t2, double tol) {
  return symmetric_bound_slack(t1, t2) >= -tol;
}

double strong_subadd_slack(const StochasticMatrix& t1, const StochasticMatrix& t2,
                           const StochasticMatrix& t3) {
  require_bistochastic(t1, "strong subadditivity");
  require_bistochastic(t2, "strong subadditivity");
  require_bistochastic(t3, "strong subadditivity");
  const StochasticMatrix t32 = multiply(t3, t2);
  const StochasticMatrix t21 = multiply(t2, t1);
  const double lhs = entropy_uniform(multiply(t32, t1)) + entropy_uniform(t2);
  const double rhs = entropy_uniform(t32) + entropy_uniform(t21);
  return rhs - lhs;
}

bool check_strong_subadd(const StochasticMatrix& t1, const StochasticMatrix& t2,
                         const StochasticMatrix& t3, double tol) {
  return strong_subadd_slack(t1, t2, t3) >= -tol;
}

}  // namespace dynsub::classical
