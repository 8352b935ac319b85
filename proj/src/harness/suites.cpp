#include <algorithm>
#include <cmath>

#include "dynsub/channels.hpp"
#include "dynsub/classical.hpp"
#include "dynsub/errors.hpp"
#include "dynsub/harness.hpp"
#include "dynsub/quasifree.hpp"
#include "dynsub/randgen.hpp"
#include "dynsub/statecomp.hpp"

namespace dynsub::harness {

namespace {

using classical::StochasticMatrix;

constexpr double kIneqTol = 1e-8;
constexpr double kClassicalTol = 1e-10;

// Sinkhorn is the default; a non-converging draw is replaced by a unitary
// mixture taken from the same stream, so the choice is reproducible.
Channel bistochastic(int n, rng::RngStream& r) {
  try {
    return rng::random_bistochastic_channel(n, r);
  } catch (const ConvergenceError&) {
    return rng::random_unitary_mixture(n, n * n, r);
  }
}

DensityMatrix as_state(const ComplexMatrix& m) { return DensityMatrix::validated(m, 1e-9); }

double entropy(const ComplexMatrix& m) { return von_neumann_entropy(as_state(m)); }

double spectrum_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.rbegin(), a.rend());
  std::sort(b.rbegin(), b.rend());
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// ---------------------------------------------------------------------------

void closed_values(const SampleContext& ctx, Recorder& rec) {
  const int n = ctx.dim;
  rec.le_fixed("closed.identity", map_entropy(identity_channel(n)), 0.0, 1e-12);
  rec.eq("closed.depolarizing", map_entropy(depolarizing(n)), 2.0 * std::log(n), 1e-10);
  rec.eq("closed.coarse_graining", map_entropy(coarse_graining(n)), std::log(n), 1e-10);
}

void embedding(const SampleContext& ctx, Recorder& rec) {
  const StochasticMatrix t = rng::random_stochastic(ctx.dim, ctx.rng);
  rec.eq("embedding", map_entropy(diag_channel_from_stochastic(t)),
         classical::entropy_uniform(t) + std::log(ctx.dim), 1e-9);
}

void dynsub_bistochastic(const SampleContext& ctx, Recorder& rec) {
  const int n = ctx.dim;
  const Channel p1 = bistochastic(n, ctx.rng);
  const Channel p2 = rng::random_channel(n, ctx.rng);
  const double s1 = map_entropy(p1);
  rec.le("subadd.upper", map_entropy(compose(p2, p1)), s1 + map_entropy(p2));

  const Channel q2 = bistochastic(n, ctx.rng);
  const double s2 = map_entropy(q2);
  const double s12 = map_entropy(compose(p1, q2));
  const double s21 = map_entropy(compose(q2, p1));
  rec.le("subadd.upper", s21, s1 + s2);
  rec.le("symmetric", std::max(s1, s2), std::min(s12, s21));

  const DensityMatrix sig1 = jam_state(p1);
  const DensityMatrix sig2 = jam_state(q2);
  const double t1 = von_neumann_entropy(sig1);
  const double t2 = von_neumann_entropy(sig2);
  const double lo = std::min(von_neumann_entropy(odot_state(sig2, sig1)),
                             von_neumann_entropy(odot_state(sig1, sig2)));
  rec.le("state_triangle.lower", std::max(t1, t2), lo);
  rec.le("state_triangle.upper", lo, t1 + t2);
}

void strong_dynsub(const SampleContext& ctx, Recorder& rec) {
  const int n = ctx.dim;
  const Channel p1 = bistochastic(n, ctx.rng);
  const Channel p2 = bistochastic(n, ctx.rng);
  const Channel p3 = bistochastic(n, ctx.rng);
  const Channel p21 = compose(p2, p1);
  const Channel p32 = compose(p3, p2);
  rec.le("strong.channel", map_entropy(compose(p3, p21)) + map_entropy(p2),
         map_entropy(p32) + map_entropy(p21));

  const DensityMatrix s1 = jam_state(p1);
  const DensityMatrix s2 = jam_state(p2);
  const DensityMatrix s3 = jam_state(p3);
  const DensityMatrix s21 = odot_state(s2, s1);
  const DensityMatrix s32 = odot_state(s3, s2);
  rec.le("strong.state", von_neumann_entropy(odot_state(s3, s21)) + von_neumann_entropy(s2),
         von_neumann_entropy(s32) + von_neumann_entropy(s21));
}

void dynsub_general(const SampleContext& ctx, Recorder& rec) {
  const int n = ctx.dim;
  const DensityMatrix mixed = maximally_mixed(n);
  {
    const Channel p1 = rng::random_channel(n, ctx.rng);
    const Channel p2 = rng::random_channel(n, ctx.rng);
    const Channel p21 = compose(p2, p1);
    const DensityMatrix out1 = as_state(dynsub::apply(p1, mixed.matrix()));
    const double s1 = map_entropy(p1);
    const double s2 = map_entropy(p2);
    const double s21 = map_entropy(p21);
    const double d1 = entropy(dynsub::apply(p2, out1.matrix())) - von_neumann_entropy(out1);
    const double d2 = entropy_exchange(p2, out1) - s2;
    rec.le("general.lower", s1 + d1, s21);
    rec.le("general.upper", s21, s1 + s2 + d2);

    const Channel p3 = rng::random_channel(n, ctx.rng);
    const Channel p32 = compose(p3, p2);
    rec.le("general.ssa_exchange",
           entropy_exchange(compose(p3, p21), mixed) + entropy_exchange(p2, out1),
           entropy_exchange(p21, mixed) + entropy_exchange(p32, out1));
  }
  {
    // Both corrections vanish when the first map is unital.
    const Channel b1 = bistochastic(n, ctx.rng);
    const Channel b2 = bistochastic(n, ctx.rng);
    const DensityMatrix out1 = as_state(dynsub::apply(b1, mixed.matrix()));
    const double d1 = entropy(dynsub::apply(b2, out1.matrix())) - von_neumann_entropy(out1);
    const double d2 = entropy_exchange(b2, out1) - map_entropy(b2);
    rec.eq("general.bistochastic_delta1", d1, 0.0, 1e-9);
    rec.eq("general.bistochastic_delta2", d2, 0.0, 1e-9);
  }
}

void lindblad(const SampleContext& ctx, Recorder& rec) {
  const int n = ctx.dim;
  const Channel c = rng::random_channel(n, ctx.rng);
  const DensityMatrix rho = rng::random_density(n, ctx.rng);
  const LindbladBounds b = lindblad_bounds(c, rho);
  rec.le("lindblad.lower", b.lower, b.actual);
  rec.le("lindblad.upper", b.actual, b.upper);
  rec.eq("exchange.purification", purified_exchange_entropy(c, rho), entropy_exchange(c, rho), 1e-9);
  rec.eq("exchange.jam_spectrum",
         spectrum_distance(sigma_hat(c, maximally_mixed(n)).spectrum().values,
                           jam_state(c).spectrum().values),
         0.0, 1e-9);
}

void data_processing(const SampleContext& ctx, Recorder& rec) {
  const int n = ctx.dim;
  const Channel c1 = rng::random_channel(n, ctx.rng);
  const Channel c2 = rng::random_channel(n, ctx.rng);
  const DensityMatrix rho = rng::random_density(n, ctx.rng);
  rec.le("data_processing", coherent_information(compose(c2, c1), rho),
         coherent_information(c1, rho));
}

void classical_suite(const SampleContext& ctx, Recorder& rec) {
  using namespace classical;
  const int n = ctx.dim;
  const StochasticMatrix t1 = rng::random_stochastic(n, ctx.rng);
  const StochasticMatrix t2 = rng::random_stochastic(n, ctx.rng);
  const ProductBounds pb = product_bounds(t2, t1);
  rec.le("classical.product.lower", pb.lower, pb.actual);
  rec.le("classical.product.upper", pb.actual, pb.upper);

  const StochasticMatrix b1 = rng::random_bistochastic_matrix(n, ctx.rng);
  const StochasticMatrix b2 = rng::random_bistochastic_matrix(n, ctx.rng);
  const StochasticMatrix b3 = rng::random_bistochastic_matrix(n, ctx.rng);
  const double h1 = entropy_uniform(b1);
  const double h2 = entropy_uniform(b2);
  const StochasticMatrix b21 = multiply(b2, b1);
  const StochasticMatrix b32 = multiply(b3, b2);
  const double h21 = entropy_uniform(b21);
  const double h12 = entropy_uniform(multiply(b1, b2));
  rec.le("classical.subadd.lower", h1, h21);
  rec.le("classical.subadd.upper", h21, h1 + h2);
  rec.le("classical.symmetric", std::max(h1, h2), std::min(h12, h21));
  rec.le("classical.strong", entropy_uniform(multiply(b3, b21)) + h2,
         entropy_uniform(b32) + h21);

  const ProbVector p = rng::random_prob_vector(n, ctx.rng);
  const SlomczynskiBounds sb = slomczynski_bounds(t1, p);
  rec.le("classical.slomczynski.lower", sb.lower, sb.actual);
  rec.le("classical.slomczynski.upper", sb.actual, sb.upper);

  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) rho(i, i) = p[i];
  const double s_hat = entropy_exchange(diag_channel_from_stochastic(t1), as_state(rho));
  rec.eq("classical.exchange_identity", s_hat, entropy_weighted(t1, p) + shannon_entropy(p), 1e-9);
}

void quasifree(const SampleContext& ctx, Recorder& rec) {
  const int n = ctx.dim;
  const qf::Map m1 = rng::random_qf_map(n, ctx.rng, rng::QfKind::Bistochastic);
  const qf::Map m2 = rng::random_qf_map(n, ctx.rng, rng::QfKind::Bistochastic);
  const qf::Map m21 = qf::qf_compose(m2, m1);
  const double s1 = qf::qf_map_entropy(m1);
  const double s2 = qf::qf_map_entropy(m2);
  const double s21 = qf::qf_map_entropy(m21);
  const double s12 = qf::qf_map_entropy(qf::qf_compose(m1, m2));
  rec.le("qf.subadd", s21, s1 + s2);
  rec.le("qf.max_lower", std::max(s1, s2), std::min(s12, s21));
  rec.eq("qf.closed_form", qf::qf_bistochastic_entropy_closed(m1.r()), s1, 1e-10);

  // The oracle checks below are O(N^3) several times over; past a few
  // modes every tenth sample is enough to cover them.
  const bool oracles = n <= 8 || ctx.index % 10 == 0;
  if (oracles) {
    const qf::Symbol q = rng::random_symbol(n, ctx.rng);
    const ComplexMatrix direct = qf::qf_apply(m21, q).matrix();
    const ComplexMatrix stepwise = qf::qf_apply(m2, qf::qf_apply(m1, q)).matrix();
    rec.eq("qf.compose_oracle", max_abs(direct - stepwise), 0.0, 1e-12);
    rec.eq("qf.odot",
           max_abs(qf::qf_odot_symbol(qf::qf_jam_symbol(m2), qf::qf_jam_symbol(m1)).matrix() -
                   qf::qf_jam_symbol(m21).matrix()),
           0.0, 1e-12);
  }

  // Fock-space realization only exists at small mode counts.
  const int k = static_cast<int>(ctx.index % qf::kMaxFockModes) + 1;
  const qf::Symbol small = rng::random_symbol(k, ctx.rng);
  rec.eq("qf.fock_entropy", von_neumann_entropy(qf::fock_density(small)),
         qf::qf_state_entropy(small), 1e-8);

  if (!oracles) return;
  // A unitary R gives the maximally entangled quasi-free state.
  const ComplexMatrix u = ctx.index == 0 ? identity(n) : rng::haar_unitary(n, ctx.rng);
  const ComplexMatrix j = qf::qf_jam_symbol(qf::qf_bistochastic(u)).matrix();
  const ComplexMatrix half = 0.5 * identity(n);
  rec.eq("qf.entangled.projector", max_abs(j * j - j), 0.0, 1e-12);
  rec.eq("qf.entangled.marginals",
         std::max(max_abs(j.topLeftCorner(n, n) - half), max_abs(j.bottomRightCorner(n, n) - half)),
         0.0, 1e-12);
}

void statecomp_algebra(const SampleContext& ctx, Recorder& rec) {
  const int n = ctx.dim;
  const int d = n * n;
  const BipartiteOperator x(rng::random_density(d, ctx.rng).matrix());
  const BipartiteOperator y(rng::random_density(d, ctx.rng).matrix());
  const BipartiteOperator z(rng::random_density(d, ctx.rng).matrix());
  const ComplexMatrix left = odot_raw(odot_raw(x, y), z).matrix();
  const ComplexMatrix right = odot_raw(x, odot_raw(y, z)).matrix();
  rec.eq("algebra.associativity", max_abs(left - right), 0.0, 1e-10);

  const ComplexMatrix xy = odot_raw(x, y).matrix();
  rec.eq("algebra.hermiticity", hermiticity_defect(xy), 0.0, 1e-12);
  rec.le_fixed("algebra.positivity", 0.0, eigenvalues_hermitian(xy, 1e-10).min(), 1e-9);

  const BipartiteOperator unit(static_cast<double>(n) * maximally_entangled_projector(n));
  rec.eq("algebra.neutral",
         std::max(max_abs(odot_raw(unit, x).matrix() - x.matrix()),
                  max_abs(odot_raw(x, unit).matrix() - x.matrix())),
         0.0, 1e-12);

  const DensityMatrix e =
      DensityMatrix::validated(idempotent_extension(rng::random_density(n, ctx.rng)).matrix());
  rec.eq("algebra.idempotent", max_abs(odot_state(e, e).matrix() - e.matrix()), 0.0, 1e-10);

  const ComplexMatrix flat = identity(n) / static_cast<double>(n);
  const DensityMatrix a1 = jam_state(rng::random_channel(n, ctx.rng));
  const DensityMatrix a2 = jam_state(rng::random_channel(n, ctx.rng));
  const DensityMatrix a12 = odot_state(a1, a2);
  rec.eq("algebra.closure_DI", max_abs(partial_trace(a12.matrix(), Side::A) - flat), 0.0,
         kMembershipTol);

  const DensityMatrix b1 = jam_state(bistochastic(n, ctx.rng));
  const DensityMatrix b2 = jam_state(bistochastic(n, ctx.rng));
  const ComplexMatrix b12 = odot_state(b1, b2).matrix();
  rec.eq("algebra.closure_DII",
         std::max(max_abs(partial_trace(b12, Side::A) - flat),
                  max_abs(partial_trace(b12, Side::B) - flat)),
         0.0, kMembershipTol);

  const DensityMatrix sigma = rng::random_density(d, ctx.rng);
  rec.le_fixed("algebra.not_square", 1e-6, not_square_witness(sigma), 0.0);
}

void corollary(const SampleContext& ctx, Recorder& rec) {
  const Channel phi = bistochastic(ctx.dim, ctx.rng);
  const double s = map_entropy(phi);
  Channel power = phi;
  for (int k = 2; k <= 5; ++k) {
    power = compose(phi, power);
    rec.le("corollary", map_entropy(power), k * s);
  }
}

}  // namespace

const std::vector<SuiteSpec>& suites() {
  static const std::vector<SuiteSpec> all = {
      {"closed_values", "map entropies of identity, depolarizing and coarse-graining channels",
       {2, 3, 4, 5}, 1, kIneqTol, closed_values},
      {"embedding", "S(diagonal channel) = H(T) + ln N", {2, 3, 4, 5}, 200, kIneqTol, embedding},
      {"dynsub_bistochastic", "subadditivity with a bistochastic first map, symmetric bound",
       {2, 3}, 1000, kIneqTol, dynsub_bistochastic},
      {"strong_dynsub", "strong subadditivity for bistochastic triples", {2, 3}, 500, kIneqTol,
       strong_dynsub},
      {"dynsub_general", "two-sided bound for stochastic pairs", {2, 3}, 1000, kIneqTol,
       dynsub_general},
      {"lindblad", "Lindblad bounds and exchange-entropy identities", {2, 3}, 500, kIneqTol, lindblad},
      {"data_processing", "coherent information under concatenation", {2, 3}, 500, kIneqTol,
       data_processing},
      {"classical", "stochastic-matrix entropy bounds", {2, 3, 4, 5, 6}, 1000, kClassicalTol,
       classical_suite},
      {"quasifree", "quasi-free maps: subadditivity, composition and Fock checks", {4, 64}, 1000,
       kIneqTol, quasifree},
      {"statecomp_algebra", "algebra of the composition product", {2, 3}, 500, kIneqTol,
       statecomp_algebra},
      {"corollary", "S(Phi^n) <= n S(Phi) for n <= 5", {2, 3}, 100, kIneqTol, corollary},
  };
  return all;
}

}  // namespace dynsub::harness
