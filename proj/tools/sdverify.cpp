#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sdgeom/verify.hpp"

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

void print_summary(const sdgeom::VerificationReport& r) {
  std::printf("scenario %s (seed %llu)\n", r.scenario.c_str(), static_cast<unsigned long long>(r.seed));
  for (const auto& a : r.assertions) {
    std::printf("  %-4s %-28s max %-11.4g median %-11.4g threshold %-9.3g", a.pass ? "PASS" : "FAIL", a.name.c_str(),
                a.max, a.median, a.threshold);
    if (a.failed) std::printf(" failed %d", a.failed);
    std::printf("\n");
    if (!a.note.empty()) std::printf("       %s\n", a.note.c_str());
  }
  auto sign = [](const std::optional<int>& s) -> std::string {
    if (!s) return "undecided";
    if (*s == 0) return "mixed";
    return *s > 0 ? "+1" : "-1";
  };
  std::printf("  conventions: weyl_half %s, laplacian_sign %s, hodge_h_sign %s\n", r.weyl_half.c_str(),
              sign(r.laplacian_sign).c_str(), sign(r.hodge_h_sign).c_str());
  std::printf("%s\n", r.pass() ? "all assertions passed" : "assertion failure");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual checks for self-dual and Einstein four-metrics"};
  app.require_subcommand(1);

  std::string file, report, csv;
  int samples = 0, threads = 0;
  unsigned long long seed = 0;
  double tol_scale = 1.0;
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify", "Run a scenario file");
  verify->add_option("scenario", file, "Scenario file")->required();
  auto* o_samples = verify->add_option("--samples", samples, "Override the sample count")->check(CLI::PositiveNumber);
  auto* o_seed = verify->add_option("--seed", seed, "Override the sampling seed");
  verify->add_option("--tol-scale", tol_scale, "Multiply upper-bound thresholds")->check(CLI::PositiveNumber);
  verify->add_option("--report", report, "Write the JSON report here");
  verify->add_option("--csv", csv, "Write per-point residuals here");
  verify->add_option("--threads", threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  verify->add_flag("--no-timing", no_timing, "Report runtime_ms as 0 (byte-identical reruns)");

  auto* list = app.add_subcommand("list-scenarios", "List the bundled scenarios");
  unsigned long long st_seed = 1;
  auto* selftest = app.add_subcommand("selftest", "Jet kernel and AD-vs-FD oracle checks");
  selftest->add_option("--seed", st_seed, "Corpus seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*verify) {
    try {
      const sdgeom::Scenario s = sdgeom::load_scenario(file);
      sdgeom::RunOptions opt;
      if (*o_samples) opt.samples = samples;
      if (*o_seed) opt.seed = seed;
      opt.tol_scale = tol_scale;
      opt.threads = threads;
      opt.timing = !no_timing;
      const sdgeom::VerificationReport r = sdgeom::run_scenario(s, opt);
      print_summary(r);
      if (!report.empty() && !write_file(report, sdgeom::report_json(r))) {
        std::fprintf(stderr, "error: cannot write %s\n", report.c_str());
        return 2;
      }
      if (!csv.empty() && !write_file(csv, sdgeom::report_csv(r))) {
        std::fprintf(stderr, "error: cannot write %s\n", csv.c_str());
        return 2;
      }
      return r.pass() ? 0 : 1;
    } catch (const sdgeom::ConfigError& e) {
      std::fprintf(stderr, "configuration error: %s\n", e.what());
      return 2;
    }
  }

  if (*list) {
    const auto files = sdgeom::bundled_scenarios();
    if (files.empty()) {
      std::fprintf(stderr, "no scenarios found in %s\n", sdgeom::scenario_directory().c_str());
      return 2;
    }
    for (const auto& f : files) {
      try {
        const sdgeom::Scenario s = sdgeom::load_scenario(f);
        std::printf("%-28s %-13s %s\n", s.name.c_str(), sdgeom::ansatz_name(s.ansatz), f.c_str());
      } catch (const sdgeom::ConfigError& e) {
        std::printf("%-28s %-13s %s\n", "(invalid)", "-", e.what());
      }
    }
    return 0;
  }

  if (*selftest) {
    bool ok = true;
    for (const auto& l : sdgeom::run_selftest(st_seed)) {
      std::printf("%s %-28s %.3g (threshold %.3g)\n", l.pass ? "PASS" : "FAIL", l.name.c_str(), l.value, l.threshold);
      ok = ok && l.pass;
    }
    return ok ? 0 : 1;
  }
  return 2;
}
