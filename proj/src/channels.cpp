#include "dynsub/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dynsub {

namespace {

constexpr double kPhaseFixTol = 1e-10;

std::int8_t to_flag(bool b) { return b ? 1 : 0; }

bool marginal_is_identity(const ComplexMatrix& choi, Side side) {
  const ComplexMatrix marg = partial_trace(choi, side);
  return max_abs(marg - identity(static_cast<int>(marg.rows()))) <= kChannelTol;
}

void require_same_dim(const Channel& a, const Channel& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": channel dimensions differ (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(os.str());
  }
}

void require_cptp(const Channel& c, const char* what) {
  if (!c.is_cp()) {
    throw PositivityError(std::string(what) + ": channel is not completely positive");
  }
  if (!c.is_tp()) {
    throw TraceError(std::string(what) + ": channel is not trace preserving");
  }
}

void require_state_dim(const Channel& c, const ComplexMatrix& rho, const char* what) {
  if (rho.rows() != c.dim() || rho.cols() != c.dim()) {
    std::ostringstream os;
    os << what << ": state of dimension " << rho.rows() << " for a channel on dimension " << c.dim();
    throw DimensionError(os.str());
  }
}

// Rotate v so that its first component of non-negligible modulus is real
// and positive.
void fix_phase(ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > kPhaseFixTol) {
      v *= std::conj(v(i)) / mag;
      return;
    }
  }
}

}  // namespace

Channel::Channel(ComplexMatrix choi) : dim_(0), choi_(std::move(choi)) {
  require_square(choi_, "Channel");
  require_finite(choi_, "Channel");
  dim_ = square_root_dim(choi_.rows());
}

void Channel::copy_flags_from(const Channel& other) {
  flags_.cp.store(other.flags_.cp.load());
  flags_.tp.store(other.flags_.tp.load());
  flags_.unital.store(other.flags_.unital.load());
}

Channel::Channel(const Channel& other) : dim_(other.dim_), choi_(other.choi_) {
  copy_flags_from(other);
}

Channel& Channel::operator=(const Channel& other) {
  if (this != &other) {
    dim_ = other.dim_;
    choi_ = other.choi_;
    copy_flags_from(other);
  }
  return *this;
}

Channel::Channel(Channel&& other) noexcept : dim_(other.dim_), choi_(std::move(other.choi_)) {
  copy_flags_from(other);
}

Channel& Channel::operator=(Channel&& other) noexcept {
  if (this != &other) {
    dim_ = other.dim_;
    choi_ = std::move(other.choi_);
    copy_flags_from(other);
  }
  return *this;
}

bool Channel::is_cp() const {
  std::int8_t f = flags_.cp.load();
  if (f < 0) {
    const double scale = std::max(1.0, max_abs(choi_));
    bool cp = hermiticity_defect(choi_) <= kHermitianTol * scale;
    if (cp) cp = eigenvalues_hermitian(choi_).min() >= -kClampTol;
    f = to_flag(cp);
    flags_.cp.store(f);
  }
  return f == 1;
}

bool Channel::is_tp() const {
  std::int8_t f = flags_.tp.load();
  if (f < 0) {
    f = to_flag(marginal_is_identity(choi_, Side::A));
    flags_.tp.store(f);
  }
  return f == 1;
}

bool Channel::is_unital() const {
  std::int8_t f = flags_.unital.load();
  if (f < 0) {
    f = to_flag(marginal_is_identity(choi_, Side::B));
    flags_.unital.store(f);
  }
  return f == 1;
}

void Channel::revalidate() const {
  flags_.cp.store(-1);
  flags_.tp.store(-1);
  flags_.unital.store(-1);
}

Channel channel_from_superop(const ComplexMatrix& superop) {
  require_square(superop, "channel_from_superop");
  return Channel(reshuffle(superop));
}

Channel channel_from_kraus(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) {
    throw DimensionError("channel_from_kraus: no operators");
  }
  const auto n = ops.front().rows();
  ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
  for (const ComplexMatrix& a : ops) {
    if (a.rows() != n || a.cols() != n) {
      throw DimensionError("channel_from_kraus: operators have mixed dimensions");
    }
    const ComplexVector v = vec_rowmajor(a);
    choi.noalias() += v * v.adjoint();
  }
  Channel c(std::move(choi));
  c.flags_.cp.store(1);
  return c;
}

KrausSet to_kraus(const Channel& c) {
  if (!c.is_cp()) {
    throw PositivityError("to_kraus: channel is not completely positive");
  }
  const HermitianEigen e = eig_hermitian(c.choi());
  KrausSet out;
  out.dim = c.dim();
  const auto count = static_cast<Eigen::Index>(e.spectrum.dimension());
  for (Eigen::Index k = count - 1; k >= 0; --k) {
    const double d = e.spectrum.values[static_cast<std::size_t>(k)];
    if (d <= kKrausCutoff) break;
    ComplexVector v = e.vectors.col(k);
    fix_phase(v);
    out.operators.push_back(std::sqrt(d) * unvec_rowmajor(v, c.dim()));
    out.weights.push_back(d);
  }
  return out;
}

ComplexMatrix apply(const Channel& c, const ComplexMatrix& rho) {
  require_state_dim(c, rho, "apply");
  return unvec_rowmajor(c.superop() * vec_rowmajor(rho), c.dim());
}

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho) {
  if (rho.rows() != k.dim || rho.cols() != k.dim) {
    throw DimensionError("apply_kraus: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(k.dim, k.dim);
  for (const ComplexMatrix& a : k.operators) out.noalias() += a * rho * a.adjoint();
  return out;
}

Channel compose(const Channel& later, const Channel& earlier) {
  require_same_dim(later, earlier, "compose");
  return Channel(reshuffle(later.superop() * earlier.superop()));
}

Channel adjoint(const Channel& c) { return Channel(c.choi().conjugate()); }

Channel dual(const Channel& c) {
  const int n = c.dim();
  const ComplexMatrix& d = c.choi();
  ComplexMatrix out(d.rows(), d.cols());
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
          out(m * n + k, mu * n + nu) = std::conj(d(k * n + m, nu * n + mu));
  return Channel(std::move(out));
}

DensityMatrix jam_state(const Channel& c) {
  require_cptp(c, "jam_state");
  return DensityMatrix::validated(c.choi() / static_cast<double>(c.dim()), kChannelTol);
}

double map_entropy(const Channel& c) { return von_neumann_entropy(jam_state(c)); }

DensityMatrix sigma_hat(const KrausSet& k, const DensityMatrix& rho) {
  if (rho.dim() != k.dim) {
    throw DimensionError("sigma_hat: dimension mismatch");
  }
  const auto m = static_cast<Eigen::Index>(k.size());
  std::vector<ComplexMatrix> a_rho;
  a_rho.reserve(k.size());
  for (const ComplexMatrix& a : k.operators) a_rho.push_back(a * rho.matrix());
  ComplexMatrix s(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      // tr(rho A_b^dagger A_a) = tr(A_b^dagger (A_a rho))
      s(a, b) = (k.operators[static_cast<std::size_t>(b)].adjoint() *
                 a_rho[static_cast<std::size_t>(a)]).trace();
    }
  }
  return DensityMatrix::validated(std::move(s), kChannelTol);
}

DensityMatrix sigma_hat(const Channel& c, const DensityMatrix& rho) {
  require_cptp(c, "sigma_hat");
  require_state_dim(c, rho.matrix(), "sigma_hat");
  return sigma_hat(to_kraus(c), rho);
}

double entropy_exchange(const Channel& c, const DensityMatrix& rho) {
  return von_neumann_entropy(sigma_hat(c, rho));
}

double purified_exchange_entropy(const Channel& c, const DensityMatrix& rho) {
  require_cptp(c, "purified_exchange_entropy");
  require_state_dim(c, rho.matrix(), "purified_exchange_entropy");
  const int n = c.dim();
  const HermitianEigen e = eig_hermitian(rho.matrix(), rho.tolerance());

  ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double p = std::max(e.spectrum.values[static_cast<std::size_t>(i)], 0.0);
    const ComplexVector ei = e.vectors.col(i);
    phi += std::sqrt(p) * kron(ei, ei);
  }
  const ComplexMatrix pure = phi * phi.adjoint();

  // (id (x) Phi) acts blockwise: block (i, j) of the composite matrix is the
  // second-leg operator multiplying |i><j| on the first leg.
  const ComplexMatrix sup = c.superop();
  ComplexMatrix out(pure.rows(), pure.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix block = pure.block(i * n, j * n, n, n);
      out.block(i * n, j * n, n, n) = unvec_rowmajor(sup * vec_rowmajor(block), n);
    }
  }
  return von_neumann_entropy(out, kChannelTol);
}

DensityMatrix lindblad_omega(const Channel& c, const DensityMatrix& rho) {
  require_cptp(c, "lindblad_omega");
  require_state_dim(c, rho.matrix(), "lindblad_omega");
  const KrausSet k = to_kraus(c);
  const int n = c.dim();
  const int m = static_cast<int>(k.size());
  ComplexMatrix omega(static_cast<Eigen::Index>(n) * m, static_cast<Eigen::Index>(n) * m);
  for (int a = 0; a < m; ++a) {
    const ComplexMatrix a_rho = k.operators[static_cast<std::size_t>(a)] * rho.matrix();
    for (int b = 0; b < m; ++b) {
      const ComplexMatrix blk = a_rho * k.operators[static_cast<std::size_t>(b)].adjoint();
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          omega(i * m + a, j * m + b) = blk(i, j);
        }
      }
    }
  }
  return DensityMatrix::validated(std::move(omega), kChannelTol);
}

LindbladBounds lindblad_bounds(const Channel& c, const DensityMatrix& rho) {
  const double s_sigma = entropy_exchange(c, rho);
  const double s_rho = von_neumann_entropy(rho);
  return LindbladBounds{
      .lower = std::abs(s_sigma - s_rho),
      .upper = s_sigma + s_rho,
      .actual = von_neumann_entropy(apply(c, rho.matrix()), kChannelTol),
  };
}

double coherent_information(const Channel& c, const DensityMatrix& rho) {
  const double out = von_neumann_entropy(apply(c, rho.matrix()), kChannelTol);
  return out - entropy_exchange(c, rho);
}

Channel identity_channel(int n) { return channel_from_kraus({identity(n)}); }

Channel depolarizing(int n) {
  return Channel(identity(n * n) / static_cast<double>(n));
}

Channel coarse_graining(int n) {
  ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
  for (int m = 0; m < n; ++m) choi(m * n + m, m * n + m) = 1.0;
  return Channel(std::move(choi));
}

Channel contraction(const DensityMatrix& rho0) {
  return Channel(kron(rho0.matrix(), identity(rho0.dim())));
}

Channel unitary_channel(const ComplexMatrix& u) {
  require_square(u, "unitary_channel");
  if (max_abs(u.adjoint() * u - identity(static_cast<int>(u.rows()))) > kChannelTol) {
    throw UnitarityError("unitary_channel: matrix is not unitary");
  }
  return channel_from_kraus({u});
}

classical::StochasticMatrix stochastic_from_channel(const Channel& c) {
  if (!c.is_tp()) {
    throw TraceError("stochastic_from_channel: channel is not trace preserving");
  }
  const int n = c.dim();
  RealMatrix t(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t(i, j) = c.choi()(i * n + j, i * n + j).real();
  }
  return classical::StochasticMatrix::validated(std::move(t), kChannelTol);
}

Channel diag_channel_from_stochastic(const classical::StochasticMatrix& t) {
  const int n = t.dim();
  ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) choi(a * n + b, a * n + b) = t(a, b);
  }
  return Channel(std::move(choi));
}

}  // namespace dynsub
