// dynsub: single-object computations and the randomized verification suites.
//
// Exit codes: 0 success, 1 contract violation or failing suite, 2 malformed
// input. Results go to stdout as JSON with scalars printed to 12 decimals.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynsub/channels.hpp"
#include "dynsub/classical.hpp"
#include "dynsub/errors.hpp"
#include "dynsub/harness.hpp"
#include "dynsub/matrix_io.hpp"
#include "dynsub/quasifree.hpp"
#include "dynsub/randgen.hpp"
#include "dynsub/report.hpp"

using namespace dynsub;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitMalformed = 2;

std::string fixed12(double v) {
  if (std::abs(v) < 5e-13) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

// nlohmann prints doubles in shortest round-trip form; results here use a
// fixed number of decimals instead.
void dump(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ", ";
        first = false;
        out += json(k).dump();
        out += ": ";
        dump(v, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += fixed12(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

void emit(const json& j) {
  std::string out;
  dump(j, out);
  std::cout << out << '\n';
}

classical::ProbVector read_prob_vector(const std::string& path) {
  const RealMatrix m = io::read_real(path);
  if (m.rows() != 1 && m.cols() != 1) throw DimensionError("probability vector must be a single row or column");
  std::vector<double> p(m.data(), m.data() + m.size());
  return classical::ProbVector::validated(std::move(p));
}

bool is_qf_map_file(const json& j) { return j.is_object() && j.contains("R") && j.contains("Z"); }

qf::Map read_qf_map(const json& j) {
  if (!is_qf_map_file(j)) throw ParseError("quasi-free map file needs \"R\" and \"Z\"");
  return qf::qf_validate(io::complex_from_json(j["R"]), io::complex_from_json(j["Z"]));
}

json qf_map_json(const qf::Map& m) { return {{"R", io::to_json(m.r())}, {"Z", io::to_json(m.z())}}; }

rng::QfKind parse_kind(const std::string& s) {
  if (s == "bistochastic") return rng::QfKind::Bistochastic;
  if (s == "extreme") return rng::QfKind::Extreme;
  if (s == "interior") return rng::QfKind::Interior;
  throw ParseError("unknown quasi-free map kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  bool all = false;
  std::vector<int> dims;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string json_path;
  bool timing = false;
  std::optional<std::uint64_t> replay;
  int threads = 0;
  bool list = false;
};

int run_replay(const VerifyArgs& a) {
  if (a.suite.empty() || a.dims.size() != 1)
    throw ParseError("--replay needs --suite and exactly one --dim");
  const auto& spec = harness::find_suite(a.suite);
  const auto r = harness::run_sample(spec, a.seed, a.dims.front(), *a.replay,
                                     a.tol.value_or(spec.default_tol));
  json checks = json::array();
  bool pass = !r.error.has_value();
  for (const auto& c : r.checks) {
    checks.push_back({{"tag", c.tag}, {"slack", c.slack}, {"tolerance", c.tolerance}});
    pass = pass && c.slack >= -c.tolerance;
  }
  const harness::Check* w = harness::worst_check(r);
  json out = {{"suite", spec.name},
              {"seed", a.seed},
              {"dim", r.dim},
              {"index", r.index},
              {"worst_violation", w ? w->slack : 0.0},
              {"tag", w ? w->tag : std::string()},
              {"checks", checks},
              {"pass", pass}};
  if (r.error) out["error"] = *r.error;
  std::cout << out.dump() << '\n';
  return pass ? kExitOk : kExitViolation;
}

int run_verify(const VerifyArgs& a) {
  if (a.list) {
    for (const auto& s : harness::suites()) std::cout << s.name << "  " << s.description << '\n';
    return kExitOk;
  }
  if (a.replay) return run_replay(a);
  std::vector<const harness::SuiteSpec*> chosen;
  if (a.all) {
    for (const auto& s : harness::suites()) chosen.push_back(&s);
  } else if (!a.suite.empty()) {
    chosen.push_back(&harness::find_suite(a.suite));
  } else {
    throw ParseError("verify needs --suite NAME or --all");
  }

  std::vector<harness::SuiteReport> reports;
  bool pass = true;
  for (const auto* spec : chosen) {
    harness::SuiteConfig cfg;
    cfg.dims = a.dims;
    cfg.samples = a.samples;
    cfg.seed = a.seed;
    cfg.tol = a.tol;
    cfg.threads = a.threads;
    reports.push_back(harness::run_suite(*spec, cfg));
    const auto& r = reports.back();
    std::cout << harness::summary_line(r);
    if (a.timing) std::cout << "  wall_time=" << r.wall_time << "s";
    std::cout << '\n';
    for (const auto& e : r.errors)
      std::cout << "  error dim=" << e.at.dim << " index=" << e.at.index << ": " << e.message << '\n';
    pass = pass && r.pass;
  }
  if (!a.json_path.empty()) {
    std::ofstream out(a.json_path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + a.json_path + "'");
    out << harness::to_json(reports, a.seed, a.timing).dump(2) << '\n';
  }
  std::cout << (pass ? "all suites passed" : "some suites failed") << '\n';
  return pass ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy of quantum maps: computations and inequality checks"};
  app.require_subcommand(1);
  int status = kExitOk;

  // verify
  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run randomized verification suites");
  auto* suite_opt = verify->add_option("--suite", va.suite, "suite name");
  verify->add_flag("--all", va.all, "run every suite")->excludes(suite_opt);
  verify->add_option("--dim", va.dims, "dimension (repeatable); modes for quasifree");
  verify->add_option("--samples", va.samples, "samples per dimension")->check(CLI::PositiveNumber);
  verify->add_option("--seed", va.seed, "master seed");
  verify->add_option("--tol", va.tol, "inequality tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--json", va.json_path, "write the report to PATH");
  verify->add_flag("--timing", va.timing, "include wall times");
  verify->add_option("--replay", va.replay, "re-run a single sample index");
  verify->add_option("--threads", va.threads, "worker threads (default: DYNSUB_THREADS or hardware)")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--list", va.list, "list suites");
  verify->callback([&] { status = run_verify(va); });

  // channel
  auto* channel = app.add_subcommand("channel", "operations on Choi matrices")->require_subcommand(1);
  std::string choi_path, second_path;
  auto* ch_entropy = channel->add_subcommand("entropy", "map entropy of a CP-TP channel");
  ch_entropy->add_option("choi", choi_path)->required();
  ch_entropy->callback([&] {
    const Channel c(io::read_complex(choi_path));
    emit({{"dim", c.dim()},
          {"entropy", map_entropy(c)},
          {"cp", c.is_cp()},
          {"tp", c.is_tp()},
          {"unital", c.is_unital()}});
  });
  auto* ch_kraus = channel->add_subcommand("kraus", "canonical Kraus operators");
  ch_kraus->add_option("choi", choi_path)->required();
  ch_kraus->callback([&] {
    const KrausSet k = to_kraus(Channel(io::read_complex(choi_path)));
    json ops = json::array();
    for (const auto& a : k.operators) ops.push_back(io::to_json(a));
    emit({{"weights", k.weights}, {"operators", ops}});
  });
  auto* ch_compose = channel->add_subcommand("compose", "Choi matrix of LATER after EARLIER");
  ch_compose->add_option("later", choi_path)->required();
  ch_compose->add_option("earlier", second_path)->required();
  ch_compose->callback([&] {
    const Channel later(io::read_complex(choi_path));
    const Channel earlier(io::read_complex(second_path));
    emit(io::to_json(compose(later, earlier).choi()));
  });
  auto* ch_apply = channel->add_subcommand("apply", "image of a density matrix");
  ch_apply->add_option("choi", choi_path)->required();
  ch_apply->add_option("rho", second_path)->required();
  ch_apply->callback([&] {
    const Channel c(io::read_complex(choi_path));
    const DensityMatrix rho = DensityMatrix::validated(io::read_complex(second_path));
    emit(io::to_json(dynsub::apply(c, rho.matrix())));
  });

  // classical
  auto* classical_cmd =
      app.add_subcommand("classical", "column-stochastic matrices")->require_subcommand(1);
  std::string t_path, t1_path, p_path;
  auto* cl_entropy = classical_cmd->add_subcommand("entropy", "H(T) and, when unique, H_I(T)");
  cl_entropy->add_option("matrix", t_path)->required();
  cl_entropy->callback([&] {
    const auto t = classical::StochasticMatrix::validated(io::read_real(t_path));
    json out = {{"dim", t.dim()},
                {"entropy", classical::entropy_uniform(t)},
                {"bistochastic", t.is_bistochastic()}};
    try {
      out["entropy_invariant"] = classical::entropy_invariant(t);
    } catch (const NonUniqueInvariantError&) {
      out["entropy_invariant"] = nullptr;
    }
    emit(out);
  });
  auto* cl_bounds = classical_cmd->add_subcommand("bounds", "bounds on H(T2 T1); with --p, on H(T P)");
  cl_bounds->add_option("t2", t_path)->required();
  cl_bounds->add_option("t1", t1_path)->required();
  cl_bounds->add_option("--p", p_path, "probability vector file");
  cl_bounds->callback([&] {
    const auto t2 = classical::StochasticMatrix::validated(io::read_real(t_path));
    const auto t1 = classical::StochasticMatrix::validated(io::read_real(t1_path));
    const auto b = classical::product_bounds(t2, t1);
    json out = {{"product",
                 {{"delta1", b.delta1},
                  {"delta2", b.delta2},
                  {"lower", b.lower},
                  {"actual", b.actual},
                  {"upper", b.upper}}}};
    if (!p_path.empty()) {
      const auto s = classical::slomczynski_bounds(t1, read_prob_vector(p_path));
      out["state"] = {{"lower", s.lower}, {"actual", s.actual}, {"upper", s.upper}, {"weak_upper", s.weak_upper}};
    }
    emit(out);
  });

  // qf
  auto* qf_cmd = app.add_subcommand("qf", "quasi-free maps and symbols")->require_subcommand(1);
  std::string qf_path, qf_path2;
  auto* qf_entropy = qf_cmd->add_subcommand("entropy", "entropy of a map file or a symbol file");
  qf_entropy->add_option("file", qf_path)->required();
  qf_entropy->callback([&] {
    const json j = io::read_json_file(qf_path);
    if (is_qf_map_file(j)) {
      const qf::Map m = read_qf_map(j);
      emit({{"modes", m.modes()}, {"entropy", qf::qf_map_entropy(m)}});
    } else {
      const qf::Symbol q = qf::Symbol::validated(io::complex_from_json(j));
      emit({{"modes", q.modes()}, {"entropy", qf::qf_state_entropy(q)}});
    }
  });
  auto* qf_compose_cmd = qf_cmd->add_subcommand("compose", "map LATER after EARLIER");
  qf_compose_cmd->add_option("later", qf_path)->required();
  qf_compose_cmd->add_option("earlier", qf_path2)->required();
  qf_compose_cmd->callback([&] {
    const qf::Map later = read_qf_map(io::read_json_file(qf_path));
    const qf::Map earlier = read_qf_map(io::read_json_file(qf_path2));
    emit(qf_map_json(qf::qf_compose(later, earlier)));
  });
  auto* qf_fock = qf_cmd->add_subcommand("fock", "Fock-space density matrix of a symbol");
  qf_fock->add_option("symbol", qf_path)->required();
  qf_fock->callback([&] {
    const qf::Symbol q = qf::Symbol::validated(io::read_complex(qf_path));
    const DensityMatrix rho = qf::fock_density(q);
    emit({{"entropy", von_neumann_entropy(rho)}, {"density", io::to_json(rho.matrix())}});
  });

  // random
  auto* random = app.add_subcommand("random", "seeded samples")->require_subcommand(1);
  int rdim = 2;
  std::uint64_t rseed = 0, rindex = 0;
  bool rbist = false;
  std::string rkind = "bistochastic";
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--dim", rdim, "dimension or mode count")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", rseed, "master seed");
    cmd->add_option("--index", rindex, "stream index");
  };
  auto* r_channel = random->add_subcommand("channel", "random CP-TP Choi matrix");
  add_common(r_channel);
  r_channel->add_flag("--bistochastic", rbist, "also unital");
  r_channel->callback([&] {
    rng::RngStream r(rseed, rindex);
    const Channel c = rbist ? rng::random_bistochastic_channel(rdim, r) : rng::random_channel(rdim, r);
    emit(io::to_json(c.choi()));
  });
  auto* r_matrix = random->add_subcommand("matrix", "random column-stochastic matrix");
  add_common(r_matrix);
  r_matrix->add_flag("--bistochastic", rbist, "also row-stochastic");
  r_matrix->callback([&] {
    rng::RngStream r(rseed, rindex);
    const auto t = rbist ? rng::random_bistochastic_matrix(rdim, r) : rng::random_stochastic(rdim, r);
    emit(io::to_json(t.matrix()));
  });
  auto* r_qf = random->add_subcommand("qfmap", "random quasi-free map");
  add_common(r_qf);
  r_qf->add_option("--kind", rkind, "bistochastic, extreme or interior");
  r_qf->callback([&] {
    rng::RngStream r(rseed, rindex);
    emit(qf_map_json(rng::random_qf_map(rdim, r, parse_kind(rkind))));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return status;
}
