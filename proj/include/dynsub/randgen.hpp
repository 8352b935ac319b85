#pragma once

// Seeded samplers for every random object the verification suites draw.
// Each sample owns its stream, keyed by (master_seed, stream_index), so
// results never depend on evaluation order or thread count.

#include <cstdint>
#include <random>

#include "dynsub/channels.hpp"
#include "dynsub/classical.hpp"
#include "dynsub/matcore.hpp"
#include "dynsub/quasifree.hpp"

namespace dynsub::rng {

class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  double normal();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

enum class BistochasticMethod { Sinkhorn, UnitaryMixture };
enum class QfKind { Bistochastic, Extreme, Interior };

inline constexpr double kSinkhornTol = 1e-10;
inline constexpr int kSinkhornMaxIter = 1000;

/// i.i.d. standard complex Gaussian entries (real and imaginary parts each N(0, 1/2)).
ComplexMatrix ginibre(int n, RngStream& rng);
ComplexMatrix ginibre(int rows, int cols, RngStream& rng);

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
ComplexMatrix haar_unitary(int n, RngStream& rng);

/// G G^dagger / tr(G G^dagger).
DensityMatrix random_density(int n, RngStream& rng);
/// Random pure state |psi><psi|.
DensityMatrix random_pure_state(int n, RngStream& rng);

/// Random CP-TP channel: W = G G^dagger, D = (1 (x) S) W (1 (x) S) with
/// S = (tr_A W)^{-1/2}.
Channel random_channel(int n, RngStream& rng);

/// Random CP-TP-unital channel. Sinkhorn alternately normalizes both
/// marginals until they are within 1e-10 of the identity; UnitaryMixture
/// draws N^2 Haar unitaries with Dirichlet weights.
Channel random_bistochastic_channel(int n, RngStream& rng,
                                    BistochasticMethod method = BistochasticMethod::Sinkhorn);
/// sum_i p_i U_i . U_i^dagger with k unitaries.
Channel random_unitary_mixture(int n, int k, RngStream& rng);

/// Operator Sinkhorn scaling of a positive definite Choi matrix.
Channel sinkhorn_bistochastic(const ComplexMatrix& w, int max_iter = kSinkhornMaxIter,
                              double tol = kSinkhornTol);

/// Columns drawn from Dirichlet(1, ..., 1).
classical::StochasticMatrix random_stochastic(int n, RngStream& rng);
/// Sinkhorn row/column normalization of a matrix with Exp(1) entries.
classical::StochasticMatrix random_bistochastic_matrix(int n, RngStream& rng);
classical::StochasticMatrix sinkhorn_matrix(const RealMatrix& positive, double tol = 1e-12,
                                            int max_iter = 100000);
classical::ProbVector random_prob_vector(int n, RngStream& rng);

/// Q = U diag(q) U^dagger with q_j uniform in (0, 1).
qf::Symbol random_symbol(int modes, RngStream& rng);
/// Haar-random projector of the given rank.
ComplexMatrix random_projector(int n, int rank, RngStream& rng);
/// Ginibre matrix scaled to operator norm u, u uniform in (0, 1].
ComplexMatrix random_contraction(int n, RngStream& rng);
qf::Map random_qf_map(int modes, RngStream& rng, QfKind kind);

}  // namespace dynsub::rng
