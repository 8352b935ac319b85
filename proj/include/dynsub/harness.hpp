#pragma once

// Randomized verification suites. Every sample draws from its own stream
// keyed by (seed, suite, dim, index), so a report is a pure function of the
// configuration and any sample can be replayed on its own.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dynsub/randgen.hpp"

namespace dynsub::harness {

/// One evaluated inequality or equality. slack < 0 is a violation; the check
/// passes while slack >= -tolerance.
struct Check {
  std::string tag;
  double slack;
  double tolerance;
};

struct SampleResult {
  int dim = 0;
  std::uint64_t index = 0;
  std::vector<Check> checks;
  std::optional<std::string> error;
};

struct CaseRef {
  int dim = 0;
  std::uint64_t index = 0;
};

struct TagSummary {
  std::string tag;
  double tolerance = 0.0;
  double worst_violation = 0.0;
  CaseRef worst_case;
  std::size_t evaluated = 0;
  bool pass = true;
};

struct SampleError {
  CaseRef at;
  std::string message;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  std::size_t samples_per_dim = 0;
  std::size_t samples_run = 0;
  // Taken from the check with the smallest margin slack + tolerance, so that
  // pass == (worst_violation >= -tolerance) whenever no sample errored.
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::string worst_tag;
  CaseRef worst_case;
  bool pass = true;
  std::vector<TagSummary> checks;
  std::vector<SampleError> errors;
  double wall_time = 0.0;
};

struct SuiteConfig {
  std::vector<int> dims;             // empty: suite default
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::optional<double> tol;         // overrides the inequality tolerance
  int threads = 0;                   // 0: DYNSUB_THREADS or hardware
};

/// Records checks for one sample.
class Recorder {
 public:
  explicit Recorder(double inequality_tol) : tol_(inequality_tol) {}

  /// lhs <= rhs within the inequality tolerance.
  void le(const std::string& tag, double lhs, double rhs);
  /// |a - b| <= tol.
  void eq(const std::string& tag, double a, double b, double tol);
  /// value <= bound, with a fixed tolerance.
  void le_fixed(const std::string& tag, double value, double bound, double tol);

  std::vector<Check>& checks() { return checks_; }
  double inequality_tolerance() const { return tol_; }

 private:
  double tol_;
  std::vector<Check> checks_;
};

struct SampleContext {
  int dim;
  std::uint64_t index;
  rng::RngStream& rng;
};

using SampleFn = std::function<void(const SampleContext&, Recorder&)>;

struct SuiteSpec {
  std::string name;
  std::string description;
  std::vector<int> default_dims;
  std::size_t default_samples;
  double default_tol;
  SampleFn sample;
};

/// All suites in the order `verify --all` runs them.
const std::vector<SuiteSpec>& suites();
const SuiteSpec& find_suite(const std::string& name);

/// Stream used for sample `index` of `suite` at `dim`.
rng::RngStream sample_stream(std::uint64_t seed, const std::string& suite, int dim,
                             std::uint64_t index);

SampleResult run_sample(const SuiteSpec& spec, std::uint64_t seed, int dim, std::uint64_t index,
                        double tol);
SuiteReport run_suite(const SuiteSpec& spec, const SuiteConfig& config);

/// Worker count: config value, else DYNSUB_THREADS, else hardware concurrency.
int resolve_threads(int requested);

/// The check of a sample with the smallest slack + tolerance, first one on
/// ties; the same rule picks a suite's worst case. Null when nothing was
/// recorded.
const Check* worst_check(const SampleResult& r);

}  // namespace dynsub::harness
