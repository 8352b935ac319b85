#pragma once

// Quantum maps on N-dimensional matrices stored by their Choi (dynamical)
// matrix D of dimension N^2, with
//
//   D[m*N + n, mu*N + nu] = Phi[m*N + mu, n*N + nu],
//
// where Phi is the superoperator acting on row-major vectorized matrices.
// Trace preservation reads tr_A D = 1 and unitality tr_B D = 1.

#include <atomic>
#include <cstdint>
#include <vector>

#include "dynsub/classical.hpp"
#include "dynsub/matcore.hpp"

namespace dynsub {

inline constexpr double kChannelTol = 1e-9;
inline constexpr double kKrausCutoff = 1e-10;

class Channel {
 public:
  /// Wraps a Choi matrix; the dimension must be a perfect square. Structural
  /// flags are computed on first use and cached.
  explicit Channel(ComplexMatrix choi);

  Channel(const Channel& other);
  Channel& operator=(const Channel& other);
  Channel(Channel&&) noexcept;
  Channel& operator=(Channel&&) noexcept;
  ~Channel() = default;

  int dim() const { return dim_; }
  const ComplexMatrix& choi() const { return choi_; }
  ComplexMatrix superop() const { return reshuffle(choi_); }

  /// Choi matrix PSD: smallest eigenvalue >= -1e-9.
  bool is_cp() const;
  /// |tr_A D - 1|_max <= 1e-9.
  bool is_tp() const;
  /// |tr_B D - 1|_max <= 1e-9.
  bool is_unital() const;
  bool is_bistochastic() const { return is_cp() && is_tp() && is_unital(); }

  /// Drops cached flags so the next query recomputes them.
  void revalidate() const;

 private:
  friend Channel channel_from_kraus(const std::vector<ComplexMatrix>& ops);

  // -1 unknown, 0 false, 1 true
  struct FlagCache {
    std::atomic<std::int8_t> cp{-1};
    std::atomic<std::int8_t> tp{-1};
    std::atomic<std::int8_t> unital{-1};
  };
  void copy_flags_from(const Channel& other);

  int dim_;
  ComplexMatrix choi_;
  mutable FlagCache flags_;
};

/// Canonical Kraus form: operators A_k = sqrt(d_k) unvec(v_k) from the Choi
/// eigenpairs with d_k > 1e-10, ordered by descending weight.
struct KrausSet {
  int dim = 0;
  std::vector<ComplexMatrix> operators;
  std::vector<double> weights;

  std::size_t size() const { return operators.size(); }
};

struct LindbladBounds {
  double lower;   // |S(sigma_hat) - S(rho)|
  double upper;   // S(sigma_hat) + S(rho)
  double actual;  // S(Phi(rho))
};

// ---------------------------------------------------------------------------
// representations

Channel channel_from_superop(const ComplexMatrix& superop);
Channel channel_from_kraus(const std::vector<ComplexMatrix>& ops);
KrausSet to_kraus(const Channel& c);

/// Phi(rho) through the superoperator.
ComplexMatrix apply(const Channel& c, const ComplexMatrix& rho);
/// sum_k A_k rho A_k^dagger.
ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho);

/// Channel of later o earlier.
Channel compose(const Channel& later, const Channel& earlier);
/// Phi^dagger(rho) = (Phi(rho^*))^*, whose Choi matrix is the entry-wise
/// conjugate of D_Phi. CP, TP and unitality are all preserved.
Channel adjoint(const Channel& c);
/// Hilbert-Schmidt dual, tr(Phi(X)^dagger Y) = tr(X^dagger Phi*(Y)). Kraus
/// operators A become A^dagger, so TP and unital swap roles.
Channel dual(const Channel& c);

// ---------------------------------------------------------------------------
// states and entropies attached to a channel

/// D / N for a CP-TP channel.
DensityMatrix jam_state(const Channel& c);
/// S(D / N), in [0, 2 ln N].
double map_entropy(const Channel& c);

/// sigma_hat[a, b] = tr(rho A_b^dagger A_a) over the canonical Kraus set;
/// its dimension is the Kraus count.
DensityMatrix sigma_hat(const Channel& c, const DensityMatrix& rho);
DensityMatrix sigma_hat(const KrausSet& k, const DensityMatrix& rho);
double entropy_exchange(const Channel& c, const DensityMatrix& rho);

/// Entropy of (id (x) Phi)|phi><phi| for the purification
/// |phi> = sum_i sqrt(p_i) |e_i> (x) |e_i> over the eigenbasis of rho.
double purified_exchange_entropy(const Channel& c, const DensityMatrix& rho);

/// omega = sum_ab A_a rho A_b^dagger (x) |a><b| on C^N (x) C^M, M = Kraus count.
DensityMatrix lindblad_omega(const Channel& c, const DensityMatrix& rho);
LindbladBounds lindblad_bounds(const Channel& c, const DensityMatrix& rho);

/// S(Phi(rho)) - S(sigma_hat(Phi, rho)).
double coherent_information(const Channel& c, const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// named channels

Channel identity_channel(int n);
/// Sends every state to 1/N.
Channel depolarizing(int n);
/// Removes all off-diagonal entries.
Channel coarse_graining(int n);
/// Sends every state to rho0; Choi matrix rho0 (x) 1.
Channel contraction(const DensityMatrix& rho0);
/// rho -> U rho U^dagger.
Channel unitary_channel(const ComplexMatrix& u);

// ---------------------------------------------------------------------------
// classical embedding

/// T_ij = D[i*N + j, i*N + j]; requires a TP channel.
classical::StochasticMatrix stochastic_from_channel(const Channel& c);
/// Diagonal Choi matrix with D[(a,b),(a,b)] = T_ab.
Channel diag_channel_from_stochastic(const classical::StochasticMatrix& t);

}  // namespace dynsub
