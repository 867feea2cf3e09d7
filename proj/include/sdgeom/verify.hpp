#pragma once

// Scenario files, deterministic sampling, and the residual report.
//
// A scenario is an INI-like text file:
//
//   [scenario]   name, ansatz, description
//   [fields]     ansatz-specific field data (expressions or built-in names)
//   [sampling]   domain, lo, hi, rho, count, seed, exclude
//   [assertions] one line per check, `name = threshold` or `name(args) = threshold`
//
// See docs/scenario_format.md for the keys accepted by each ansatz and
// docs/report_schema.md for the report layout and the sampling recurrence.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdgeom/chart.hpp"

namespace sdgeom {

enum class Ansatz { GH, WARPED, BELTRAMI, BRYANT, HALF_SD, DIRAC, BELTRAMI_PDE };

const char* ansatz_name(Ansatz a);
/// Throws ConfigError for unknown names.
Ansatz ansatz_from_name(const std::string& name);

/// Invalid scenario file or options; the message carries file and line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Domain { Box, Shell, Sphere };

struct SamplingBox {
  Domain domain = Domain::Box;
  Chart chart = Chart::R4_CARTESIAN;
  std::vector<double> lo, hi;  // Box: one interval per chart coordinate
  double rho_lo = 1.0, rho_hi = 1.0;  // Shell (R^4 minus a ball)
  double radius = 1.0;                // Sphere
};

/// Uniform samples in the box; Shell and Sphere draw directions by
/// normalizing four Gaussians. Throws ConfigError for an empty box or count < 1.
std::vector<ChartPoint> sample_points(const SamplingBox& box, int count, std::uint64_t seed);

struct AssertionSpec {
  std::string label;  // as written, e.g. "beltrami_zero(2)"
  std::string name;   // e.g. "beltrami_zero"
  std::vector<double> args;
  std::string word;   // non-numeric argument (classification)
  double threshold = 0.0;
  int line = 0;
};

struct FieldEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Model;  // built fields, defined in verify.cpp

struct Scenario {
  std::string path;
  std::string name;
  std::string description;
  Ansatz ansatz = Ansatz::GH;
  std::vector<FieldEntry> fields;
  SamplingBox sampling;
  int count = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> exclude;  // declared singular sets
  std::vector<AssertionSpec> assertions;
  std::shared_ptr<const Model> model;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin);

struct RunOptions {
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  double tol_scale = 1.0;  // multiplies upper-bound thresholds only
  int threads = 0;         // 0: hardware concurrency
  bool timing = true;
};

struct AssertionResult {
  std::string name;
  int samples = 0;
  double max = 0.0, median = 0.0, mean = 0.0;
  double threshold = 0.0;
  bool pass = false;
  int failed = 0;  // points where the residual could not be evaluated
  std::string note;
};

struct VerificationReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<AssertionResult> assertions;
  std::string weyl_half = "n/a";       // "plus", "minus", "mixed", "n/a"
  // Sign validated by the checks, empty if no check decided it, 0 if the
  // sampled points disagree.
  std::optional<int> laplacian_sign;
  std::optional<int> hodge_h_sign;
  long long runtime_ms = 0;
  std::vector<ChartPoint> points;
  std::vector<std::vector<double>> per_point;  // [assertion][point], NaN where failed

  bool pass() const;
};

VerificationReport run_scenario(const Scenario& s, const RunOptions& opt = {});

inline constexpr int kReportSchemaVersion = 1;

std::string report_json(const VerificationReport& r);
std::string report_csv(const VerificationReport& r);

/// Directory holding the bundled scenarios (SDGEOM_SCENARIOS overrides the
/// compiled-in default).
std::string scenario_directory();
std::vector<std::string> bundled_scenarios();

struct SelftestLine {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Jet kernels against the scalar reference, and AD against central
/// differences on the expression corpus.
std::vector<SelftestLine> run_selftest(std::uint64_t seed = 1);

}  // namespace sdgeom
