#pragma once

// Classical layer: column-stochastic matrices acting on probability vectors
// as P' = T P, their entropies and the bounds relating them.

#include <vector>

#include "dynsub/matcore.hpp"

namespace dynsub::classical {

inline constexpr double kSumTol = 1e-10;

class ProbVector {
 public:
  /// Entries must be >= -tol (clamped to 0) and sum to 1 within tol.
  static ProbVector validated(std::vector<double> probs, double tol = kSumTol);
  static ProbVector uniform(int n);
  static ProbVector basis(int n, int k);

  const std::vector<double>& values() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
  RealVector as_vector() const;

 private:
  explicit ProbVector(std::vector<double> p) : probs_(std::move(p)) {}
  std::vector<double> probs_;
};

/// Nonnegative N x N matrix with unit column sums.
class StochasticMatrix {
 public:
  static StochasticMatrix validated(RealMatrix t, double tol = kSumTol);
  static StochasticMatrix identity(int n);
  /// T_* with every entry 1/N.
  static StochasticMatrix flat(int n);

  const RealMatrix& matrix() const { return t_; }
  int dim() const { return static_cast<int>(t_.rows()); }
  double operator()(int i, int j) const { return t_(i, j); }
  /// Row sums are also 1 within tol.
  bool is_bistochastic(double tol = kSumTol) const;
  std::vector<double> column(int j) const;

 private:
  explicit StochasticMatrix(RealMatrix t) : t_(std::move(t)) {}
  RealMatrix t_;
};

double shannon_entropy(const ProbVector& p);

ProbVector apply(const StochasticMatrix& t, const ProbVector& p);
StochasticMatrix multiply(const StochasticMatrix& later, const StochasticMatrix& earlier);

/// H(T) = -(1/N) sum_ij T_ij ln T_ij.
double entropy_uniform(const StochasticMatrix& t);

/// The unique P with T P = P. Throws NonUniqueInvariantError when the
/// eigenvalue 1 is degenerate (geometric multiplicity > 1 within 1e-8).
ProbVector invariant_state(const StochasticMatrix& t);

/// H_I(T): column entropies weighted by the invariant state.
double entropy_invariant(const StochasticMatrix& t);

/// H_P(T): column entropies weighted by P. P need not be stationary.
double entropy_weighted(const StochasticMatrix& t, const ProbVector& p);

struct SlomczynskiBounds {
  double lower;       // H_P(T)
  double upper;       // H_P(T) + H(P)
  double weak_upper;  // H_P(T) + 2 H(P), the bound inherited from the quantum case
  double actual;      // H(T P)
};
SlomczynskiBounds slomczynski_bounds(const StochasticMatrix& t, const ProbVector& p);

struct ProductBounds {
  double delta1;  // H(T2 T1 P_*) - H(T1 P_*)
  double delta2;  // H_{T1 P_*}(T2) - H(T2)
  double lower;   // H(T1) + delta1
  double upper;   // H(T2) + H(T1) + delta2
  double loose_upper;  // H(T1) + H_{T1 P_*}(T2) + H(T1 P_*)
  double actual;  // H(T2 T1)
};
ProductBounds product_bounds(const StochasticMatrix& t2, const StochasticMatrix& t1);

/// max(H(T1), H(T2)) <= min(H(T1 T2), H(T2 T1)) + tol for bistochastic pairs.
bool check_symmetric_bound(const StochasticMatrix& t1, const StochasticMatrix& t2,
                           double tol = 1e-9);
/// Signed slack of the symmetric bound (negative = violation).
double symmetric_bound_slack(const StochasticMatrix& t1, const StochasticMatrix& t2);

/// H(T3 T2 T1) + H(T2) <= H(T3 T2) + H(T2 T1) + tol for bistochastic triples.
bool check_strong_subadd(const StochasticMatrix& t1, const StochasticMatrix& t2,
                         const StochasticMatrix& t3, double tol = 1e-9);
double strong_subadd_slack(const StochasticMatrix& t1, const StochasticMatrix& t2,
                           const StochasticMatrix& t3);

}  // namespace dynsub::classical
