#pragma once

// Command line front end: `diffmix <subcommand> [flags]`, optionally reading a
// `key = value` config file with `[subcommand]` sections. Flags override file
// values; unknown keys are rejected.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace diffmix::app {

inline constexpr int kExitPass = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitAcceptanceFailure = 2;
inline constexpr int kExitConfigError = 3;

/// Bad flag, unknown key or a value outside a module precondition.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Resolution {
  double half_width = 40.0;
  int n_points = 1024;
};

struct ProfilesOptions {
  std::string kind = "fstar";  // fstar | selfsimilar | bbar | bbar_n | phi_star
  double amplitude = 1.0;
  double phi_d = 0.0;  // > 0 overrides amplitude
  double time_shift = 1.0;
  double t = 1.0;
  int n = 0;
  double scale = 2.0;
  double alpha = 1.0;
  double beta = 1.0;
  Resolution grid;
};

struct NormsOptions {
  std::string input;
};

struct FlowsOptions {
  std::string profile = "fA";
  double amplitude = 1.0;
  double t = 4.0;
  std::string mode = "burgers";  // burgers | heat | lin-rep | lin-direct
  std::string g = "gauss_d1";    // corpus id or unit_mass, used by the linear modes
  double dt = 1e-3;
  Resolution grid;
};

struct CoercivityOptions {
  std::vector<double> phi_d{0.5, 2.0, 5.0};
  std::vector<double> scales{2, 4, 8, 16};
  std::string corpus = "default";  // default | unit_mass
  unsigned threads = 0;
  Resolution grid;
};

struct RGMixOptions {
  double phi_d = 2.0;
  double delta = 0.05;
  double scale = 2.0;
  int n_max = 14;
  std::string perturbation = "none";
  double eps0 = 0.0;
  std::uint64_t seed = 0;
  std::string w = "default";  // default | random (seeded)
  double dt = 2e-3;
  int fit_first = 4;
  int fit_last = 12;
  Resolution grid{400.0, 8192};
};

struct SpectraOptions {
  std::string system = "lambda-omega";
  double q = 1.0;
  double omega0 = 1.0;
  double k = 0.2;
  int modes = 32;
  int xi_points = 65;
  double xi_range = 0.0;  // 0 = k/2 (0.1 when k = 0)
  unsigned threads = 0;
};

struct ReportOptions {
  std::string suite = "core";
  std::uint64_t seed = 0;
};

struct RunConfig {
  std::string command;
  std::string out;  // file (or directory for report); empty = stdout
  std::string config_file;
  ProfilesOptions profiles;
  NormsOptions norms;
  FlowsOptions flows;
  CoercivityOptions coercivity;
  RGMixOptions rg_mix;
  SpectraOptions spectra;
  ReportOptions report;
};

/// Parses and validates. Throws ConfigError; `--help` throws HelpRequested.
RunConfig parse_config(const std::vector<std::string>& args);

struct HelpRequested {
  std::string text;
};

/// Runs a parsed configuration and returns the exit code.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config + execute with errors mapped to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diffmix::app
