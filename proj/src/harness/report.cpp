#include "dynsub/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include "dynsub/errors.hpp"

namespace dynsub::harness {

void Recorder::le(const std::string& tag, double lhs, double rhs) {
  checks_.push_back({tag, rhs - lhs, tol_});
}

void Recorder::eq(const std::string& tag, double a, double b, double tol) {
  checks_.push_back({tag, -std::abs(a - b), tol});
}

void Recorder::le_fixed(const std::string& tag, double value, double bound, double tol) {
  checks_.push_back({tag, bound - value, tol});
}

const Check* worst_check(const SampleResult& r) {
  const Check* w = nullptr;
  for (const auto& c : r.checks)
    if (!w || c.slack + c.tolerance < w->slack + w->tolerance) w = &c;
  return w;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("DYNSUB_THREADS")) {
    int cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    if (std::from_chars(env, end, cap).ec == std::errc{} && cap > 0) return std::min(cap, hw);
  }
  return hw;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// a is better (more violating) than b when its margin is smaller; ties go to
// the earlier case so the result does not depend on evaluation order.
bool worse(double margin_a, const CaseRef& a, double margin_b, const CaseRef& b) {
  if (margin_a != margin_b) return margin_a < margin_b;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.index < b.index;
}

}  // namespace

rng::RngStream sample_stream(std::uint64_t seed, const std::string& suite, int dim,
                             std::uint64_t index) {
  const std::uint64_t key = splitmix(splitmix(seed) ^ fnv1a(suite)) ^
                            splitmix(static_cast<std::uint64_t>(dim) + 0x632be59bd9b4e019ULL);
  return rng::RngStream(key, index);
}

SampleResult run_sample(const SuiteSpec& spec, std::uint64_t seed, int dim, std::uint64_t index,
                        double tol) {
  SampleResult out;
  out.dim = dim;
  out.index = index;
  rng::RngStream stream = sample_stream(seed, spec.name, dim, index);
  Recorder rec(tol);
  try {
    spec.sample(SampleContext{dim, index, stream}, rec);
  } catch (const Error& e) {
    out.error = e.what();
  }
  out.checks = std::move(rec.checks());
  return out;
}

SuiteReport run_suite(const SuiteSpec& spec, const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = spec.name;
  rep.seed = config.seed;
  rep.dims = config.dims.empty() ? spec.default_dims : config.dims;
  rep.samples_per_dim = config.samples.value_or(spec.default_samples);
  const double tol = config.tol.value_or(spec.default_tol);

  struct Job {
    int dim;
    std::uint64_t index;
  };
  std::vector<Job> jobs;
  jobs.reserve(rep.dims.size() * rep.samples_per_dim);
  for (int d : rep.dims)
    for (std::size_t i = 0; i < rep.samples_per_dim; ++i) jobs.push_back({d, i});

  std::vector<SampleResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++)
      results[k] = run_sample(spec, config.seed, jobs[k].dim, jobs[k].index, tol);
  };
  const int nthreads =
      std::min<int>(resolve_threads(config.threads), static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }

  // Aggregation walks the slots in job order, so thread count never matters.
  std::map<std::string, std::size_t> slot;
  bool have_worst = false;
  double worst_margin = 0.0;
  for (const auto& r : results) {
    ++rep.samples_run;
    const CaseRef here{r.dim, r.index};
    if (r.error) rep.errors.push_back({here, *r.error});
    for (const auto& c : r.checks) {
      auto [it, fresh] = slot.try_emplace(c.tag, rep.checks.size());
      if (fresh) {
        TagSummary t;
        t.tag = c.tag;
        t.tolerance = c.tolerance;
        t.worst_violation = c.slack;
        t.worst_case = here;
        rep.checks.push_back(t);
      }
      TagSummary& t = rep.checks[it->second];
      ++t.evaluated;
      if (!fresh && worse(c.slack + c.tolerance, here, t.worst_violation + t.tolerance, t.worst_case)) {
        t.worst_violation = c.slack;
        t.tolerance = c.tolerance;
        t.worst_case = here;
      }
      const double margin = c.slack + c.tolerance;
      if (!have_worst || worse(margin, here, worst_margin, rep.worst_case)) {
        have_worst = true;
        worst_margin = margin;
        rep.worst_violation = c.slack;
        rep.tolerance = c.tolerance;
        rep.worst_tag = c.tag;
        rep.worst_case = here;
      }
    }
  }
  if (!have_worst) rep.tolerance = tol;
  for (auto& t : rep.checks) t.pass = t.worst_violation >= -t.tolerance;
  rep.pass = rep.errors.empty() && rep.worst_violation >= -rep.tolerance;
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

const SuiteSpec& find_suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return s;
  throw ParseError("unknown suite '" + name + "'");
}

// ---------------------------------------------------------------------------
// output

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const SuiteReport& r, bool timing) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& t : r.checks) {
    checks.push_back({{"tag", t.tag},
                      {"evaluated", t.evaluated},
                      {"tolerance", t.tolerance},
                      {"worst_violation", t.worst_violation},
                      {"worst_case", {{"dim", t.worst_case.dim}, {"index", t.worst_case.index}}},
                      {"pass", t.pass}});
  }
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : r.errors)
    errors.push_back({{"dim", e.at.dim}, {"index", e.at.index}, {"message", e.message}});
  nlohmann::json j = {{"suite", r.suite},
                      {"seed", r.seed},
                      {"dims", r.dims},
                      {"samples", r.samples_per_dim},
                      {"samples_run", r.samples_run},
                      {"tolerance", r.tolerance},
                      {"worst_violation", r.worst_violation},
                      {"worst_case",
                       {{"dim", r.worst_case.dim}, {"index", r.worst_case.index}, {"tag", r.worst_tag}}},
                      {"pass", r.pass},
                      {"checks", checks},
                      {"errors", errors}};
  if (timing) j["wall_time"] = r.wall_time;
  return j;
}

nlohmann::json to_json(const std::vector<SuiteReport>& reports, std::uint64_t seed, bool timing) {
  nlohmann::json suites_j = nlohmann::json::array();
  bool pass = true;
  for (const auto& r : reports) {
    suites_j.push_back(to_json(r, timing));
    pass = pass && r.pass;
  }
  return {{"seed", seed}, {"suites", suites_j}, {"pass", pass}};
}

std::string summary_line(const SuiteReport& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS " : "FAIL ") << r.suite << "  samples=" << r.samples_run
     << "  worst_violation=" << format_double(r.worst_violation)
     << "  tol=" << format_double(r.tolerance);
  if (!r.worst_tag.empty())
    os << "  at=" << r.worst_tag << " dim=" << r.worst_case.dim << " index=" << r.worst_case.index;
  if (!r.errors.empty()) os << "  errors=" << r.errors.size();
  return os.str();
}

}  // namespace dynsub::harness
