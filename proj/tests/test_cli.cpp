// Configuration parsing, precedence and the subcommand outputs.

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "checks.hpp"
#include "commands.hpp"

using namespace diffmix::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "diffmix_cli_tests";
  fs::create_directories(d);
  return d;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << body;
  return p;
}

int run(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::string read(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("rg-mix flags") {
  const auto c = parse_config({"rg-mix", "--phi-d", "2", "--L", "2", "--n-max", "14"});
  CHECK(c.command == "rg-mix");
  CHECK(c.rg_mix.phi_d == 2.0);
  CHECK(c.rg_mix.scale == 2.0);
  CHECK(c.rg_mix.n_max == 14);
}

TEST_CASE("constraint violations are configuration errors") {
  CHECK_THROWS_AS(parse_config({"rg-mix", "--L", "1.5"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"rg-mix", "--delta", "2"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"rg-mix", "--perturbation", "quartic"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"coercivity", "--L", "2,3"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"spectra", "--xi-points", "64"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"profiles", "--N", "1000"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"rg-mix", "--n-max", "many"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"frobnicate"}), ConfigError);
  CHECK(run({"rg-mix", "--L", "1.5"}) == kExitConfigError);
}

TEST_CASE("flags override the config file") {
  const auto ini = write_file("precedence.ini", "[rg-mix]\nL = 2\nn-max = 5\nfit-first = 1\nfit-last = 5\n");
  const auto from_file = parse_config({"--config", ini.string(), "rg-mix"});
  CHECK(from_file.rg_mix.scale == 2.0);
  CHECK(from_file.rg_mix.n_max == 5);
  const auto c = parse_config({"--config", ini.string(), "rg-mix", "--L", "4"});
  CHECK(c.rg_mix.scale == 4.0);
  CHECK(c.rg_mix.n_max == 5);
  CHECK(c.config_file == ini.string());
}

TEST_CASE("unknown config keys are rejected") {
  const auto ini = write_file("unknown.ini", "[rg-mix]\nL = 2\nwarp = 9\n");
  CHECK_THROWS_AS(parse_config({"--config", ini.string(), "rg-mix"}), ConfigError);
  const auto bad = write_file("badvalue.ini", "[rg-mix]\nL = 1.5\n");
  CHECK_THROWS_AS(parse_config({"--config", bad.string(), "rg-mix"}), ConfigError);
}

TEST_CASE("help is not an error") {
  std::string out;
  CHECK(run({"--help"}, &out) == kExitPass);
  CHECK(out.find("rg-mix") != std::string::npos);
}

TEST_CASE("profiles and norms round trip through CSV") {
  const fs::path f = scratch_dir() / "fstar.csv";
  CHECK(run({"profiles", "--A", "1", "--out", f.string()}) == kExitPass);
  const std::string body = read(f);
  CHECK(body.rfind("# X=40,N=1024,t=1", 0) == 0);

  std::string out;
  CHECK(run({"norms", "--in", f.string()}, &out) == kExitPass);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["norms"]["L1"]["value"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK_FALSE(j["norms"]["H2(2)"]["tail_flag"].get<bool>());
}

TEST_CASE("flows emit diagnostics") {
  std::string out;
  const fs::path f = scratch_dir() / "flow.csv";
  CHECK(run({"flows", "--profile", "fA", "--A", "1", "--t", "4", "--mode", "burgers", "--out", f.string()}, &out) ==
        kExitPass);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["mass_after"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(read(f).rfind("# X=40,N=1024,t=4", 0) == 0);
  CHECK(run({"flows", "--mode", "lin-direct", "--t", "2", "--g", "nope"}) == kExitConfigError);
}

TEST_CASE("coercivity table") {
  const fs::path f = scratch_dir() / "table.csv";
  std::string out;
  CHECK(run({"coercivity", "--phi-d", "2", "--L", "2,4", "--out", f.string()}, &out) == kExitPass);
  const std::string body = read(f);
  CHECK(body[0] == '#');
  CHECK(body.find("\nphi_d,L,g_id,ratio,kappa\n") != std::string::npos);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["slopes"].size() == 7);
}

TEST_CASE("spectra curves and report") {
  const fs::path f = scratch_dir() / "curves.csv";
  std::string out;
  CHECK(run({"spectra", "--k", "0.2", "--M", "8", "--out", f.string()}, &out) == kExitPass);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["pass"].get<bool>());
  CHECK(j["group_velocity"].get<double>() == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(read(f).find("\nxi,j,re,im\n") != std::string::npos);
}

TEST_CASE("seeded perturbation is reproducible and mean-zero") {
  std::vector<double> x(1024);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = -40.0 + 0.078125 * static_cast<double>(i);
  const auto a = seeded_perturbation(x, 11, 0.1);
  const auto b = seeded_perturbation(x, 11, 0.1);
  const auto c = seeded_perturbation(x, 12, 0.1);
  CHECK(a == b);
  CHECK(a != c);
  double mass = 0.0, peak = 0.0;
  for (double v : a) {
    mass += v * 0.078125;
    peak = std::max(peak, std::abs(v));
  }
  CHECK(std::abs(mass) <= 1e-12);
  CHECK(peak == doctest::Approx(0.1));
}

TEST_CASE("suite composition") {
  CHECK(parse_suite("core") == Suite::core);
  CHECK(parse_suite("extended") == Suite::extended);
  CHECK_THROWS_AS(parse_suite("full"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config({"report", "--suite", "full"}), ConfigError);
}

TEST_CASE("check formatting") {
  CheckResult r;
  r.id = 3;
  r.name = "demo";
  r.value = 0.5;
  r.relation = "<=";
  r.threshold = 1.0;
  r.pass = true;
  CHECK(format_line(r).rfind("[PASS] 3 demo: value=0.5 <= 1", 0) == 0);
  const std::string csv = checks_csv({r});
  CHECK(csv == "# checks\nid,name,value,relation,threshold,pass\n3,demo,0.5,<=,1,1\n");
}

}  // TEST_SUITE
