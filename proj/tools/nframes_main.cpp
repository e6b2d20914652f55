#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "nframes/config.hpp"
#include "nframes/errors.hpp"
#include "nframes/runner.hpp"
#include "nframes/suites.hpp"
#include "nframes/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw nframes::InputError("cannot open output file: " + path);
  }
  file << content;
  if (!file) {
    throw nframes::InputError("failed writing output file: " + path);
  }
}

int run_command(const std::string& config_path, const std::string& out_path,
                std::optional<uint64_t> seed, std::optional<double> tol) {
  nframes::ExperimentConfig config = nframes::load_config_file(config_path);
  if (tol) config.frame_tol = *tol;
  const nframes::RunOutcome outcome = nframes::run_experiment(config, seed);
  write_file(out_path, outcome.report_text);
  return outcome.all_checks_passed ? kExitOk : kExitCheckFailed;
}

int spectrum_command(const std::string& config_path,
                     const std::string& csv_path,
                     std::optional<uint64_t> seed,
                     std::optional<double> tol) {
  nframes::ExperimentConfig config = nframes::load_config_file(config_path);
  if (tol) config.frame_tol = *tol;
  write_file(csv_path, nframes::spectrum_csv(config, seed));
  return kExitOk;
}

int verify_command(const std::string& suite, uint64_t seed) {
  const auto results = nframes::run_suites(suite, seed);
  bool all_pass = true;
  for (const auto& result : results) {
    for (const auto& check : result.checks) {
      std::printf("%-4s %s/%s  residual=%.3e  tolerance=%.3e\n",
                  check.pass ? "ok" : "FAIL", result.name.c_str(),
                  check.id.c_str(), check.residual, check.tolerance);
      if (!check.pass) all_pass = false;
    }
  }
  std::printf("%s\n", all_pass ? "all checks passed" : "CHECK FAILURES");
  return all_pass ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-frame computations in derived Hilbert spaces"};
  app.set_version_flag("--version", nframes::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string csv_path;
  std::string suite_name;
  std::optional<uint64_t> seed;
  std::optional<double> tol;

  CLI::App* run = app.add_subcommand(
      "run", "execute a config and write a JSON report");
  run->add_option("--config", config_path, "config JSON path")->required();
  run->add_option("--out", out_path, "report output path")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--tol", tol, "override the frame tolerance (default 1e-10)");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "emit the spectrum of the configured operator as CSV");
  spectrum->add_option("--config", config_path, "config JSON path")
      ->required();
  spectrum->add_option("--csv", csv_path, "CSV output path")->required();
  spectrum->add_option("--seed", seed, "override the config seed");
  spectrum->add_option("--tol", tol,
                       "override the frame tolerance (default 1e-10)");

  CLI::App* verify = app.add_subcommand(
      "verify", "run a named theorem suite and print its checks");
  verify->add_option("--suite", suite_name, "suite or group name, or 'all'")
      ->required();
  uint64_t verify_seed = 20240801;
  verify->add_option("--seed", verify_seed, "base seed for suite trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (run->parsed()) {
      return run_command(config_path, out_path, seed, tol);
    }
    if (spectrum->parsed()) {
      return spectrum_command(config_path, csv_path, seed, tol);
    }
    return verify_command(suite_name, verify_seed);
  } catch (const nframes::SingularFrameError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailed;
  } catch (const nframes::NotADualError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailed;
  } catch (const nframes::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitBadInput;
  }
}
