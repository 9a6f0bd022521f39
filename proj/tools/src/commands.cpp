#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "checks.hpp"
#include "diffmix/errors.hpp"
#include "diffmix/field_io.hpp"
#include "diffmix/flows.hpp"
#include "diffmix/mixing.hpp"
#include "diffmix/norms.hpp"
#include "diffmix/profiles.hpp"
#include "diffmix/renorm.hpp"
#include "diffmix/spectra.hpp"

#ifndef DIFFMIX_VERSION
#define DIFFMIX_VERSION "unknown"
#endif

namespace diffmix::app {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

void add_resolution(CLI::App* sub, Resolution& r) {
  sub->add_option("--X", r.half_width, "Half width of the truncated line")->capture_default_str();
  sub->add_option("--N", r.n_points, "Number of grid points (power of two)")->capture_default_str();
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool is_integer_scale(double l) { return l >= 2.0 && std::floor(l) == l; }

void validate_resolution(const Resolution& r) {
  try {
    (void)SpectralGrid(r.half_width, static_cast<std::size_t>(std::max(r.n_points, 0)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void validate(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "profiles") {
    const auto& p = c.profiles;
    require(p.kind == "fstar" || p.kind == "selfsimilar" || p.kind == "bbar" || p.kind == "bbar_n" ||
                p.kind == "phi_star",
            "profiles: --kind must be fstar|selfsimilar|bbar|bbar_n|phi_star");
    require(p.amplitude > 0.0, "profiles: A must be > 0");
    require(p.phi_d >= 0.0, "profiles: phi-d must be > 0");
    require(p.time_shift >= 1.0, "profiles: T0 must be >= 1");
    require(p.t >= 1.0, "profiles: t must be >= 1");
    require(p.n >= 0, "profiles: n must be >= 0");
    require(p.scale >= 1.0, "profiles: L must be >= 1");
    require(p.alpha > 0.0 && p.beta != 0.0, "profiles: need alpha > 0 and beta != 0");
    validate_resolution(p.grid);
  } else if (cmd == "norms") {
    require(!c.norms.input.empty(), "norms: --in is required");
  } else if (cmd == "flows") {
    const auto& f = c.flows;
    require(f.profile == "fA", "flows: only --profile fA is available");
    require(f.mode == "burgers" || f.mode == "heat" || f.mode == "lin-rep" || f.mode == "lin-direct",
            "flows: --mode must be burgers|heat|lin-rep|lin-direct");
    require(f.amplitude > 0.0, "flows: A must be > 0");
    require(f.t >= 1.0, "flows: t must be >= 1");
    require(f.dt > 0.0, "flows: dt must be > 0");
    validate_resolution(f.grid);
  } else if (cmd == "coercivity") {
    const auto& o = c.coercivity;
    require(!o.phi_d.empty() && !o.scales.empty(), "coercivity: empty --phi-d or --L list");
    for (double p : o.phi_d) require(p > 0.0, "coercivity: phi-d must be > 0");
    for (double l : o.scales) {
      const auto li = static_cast<std::size_t>(l);
      require(is_integer_scale(l) && (li & (li - 1)) == 0, "coercivity: L must be a power of two >= 2");
    }
    require(o.corpus == "default" || o.corpus == "unit_mass", "coercivity: --corpus must be default|unit_mass");
    validate_resolution(o.grid);
  } else if (cmd == "rg-mix") {
    const auto& o = c.rg_mix;
    require(o.phi_d > 0.0, "rg-mix: phi-d must be > 0");
    require(o.delta > 0.0 && o.delta < 1.0, "rg-mix: delta must lie in (0,1)");
    require(is_integer_scale(o.scale), "rg-mix: L must be an integer >= 2");
    require(o.n_max >= 1, "rg-mix: n-max must be >= 1");
    require(o.eps0 >= 0.0, "rg-mix: eps0 must be >= 0");
    require(o.w == "default" || o.w == "random", "rg-mix: --w must be default|random");
    require(o.dt > 0.0, "rg-mix: dt must be > 0");
    require(o.fit_first >= 0 && o.fit_last > o.fit_first && o.fit_last <= o.n_max,
            "rg-mix: need 0 <= fit-first < fit-last <= n-max");
    try {
      (void)parse_perturbation(o.perturbation);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("rg-mix: ") + e.what());
    }
    validate_resolution(o.grid);
  } else if (cmd == "spectra") {
    const auto& o = c.spectra;
    require(o.system == "lambda-omega", "spectra: only --system lambda-omega is available");
    require(o.k >= 0.0 && o.k < 1.0, "spectra: k must lie in [0,1)");
    require(o.modes >= 1, "spectra: M must be >= 1");
    require(o.xi_points >= 3 && o.xi_points % 2 == 1, "spectra: xi-points must be odd and >= 3");
    require(o.xi_range >= 0.0, "spectra: xi-range must be >= 0");
  } else if (cmd == "report") {
    try {
      (void)parse_suite(c.report.suite);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

// Writes to `path`, or to `fallback` when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  write(os);
}

// Write to a sibling temporary and rename, so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& body) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << body;
  }
  fs::rename(tmp, path);
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

SpectralGrid grid_of(const Resolution& r) {
  return SpectralGrid(r.half_width, static_cast<std::size_t>(r.n_points));
}

std::string kv(const char* key, double v) { return std::string(key) + '=' + format_number(v); }

int cmd_profiles(const RunConfig& c, std::ostream& out) {
  const auto& o = c.profiles;
  BurgersParams p = o.phi_d > 0.0 ? BurgersParams::from_phase_offset(o.phi_d) : BurgersParams::from_amplitude(o.amplitude);
  p.time_shift = o.time_shift;
  p.alpha = o.alpha;
  p.beta = o.beta;
  const auto g = grid_of(o.grid);
  Field f = Field::zeros(g);
  if (o.kind == "fstar") f = f_star(p, g);
  else if (o.kind == "selfsimilar") f = burgers_selfsimilar(p, o.t, g);
  else if (o.kind == "bbar") f = bbar(p, o.t, g);
  else if (o.kind == "bbar_n") f = bbar_n(p, o.scale, o.n, o.t, g);
  else f = phi_star(p, o.t, g);
  std::string extra = "profile=" + o.kind + ',' + kv("A", p.amplitude) + ',' + kv("T0", p.time_shift);
  if (o.kind == "bbar_n") extra += ',' + kv("L", o.scale) + ",n=" + std::to_string(o.n);
  if (o.kind == "phi_star") extra += ',' + kv("alpha", p.alpha) + ',' + kv("beta", p.beta);
  emit(c.out, out, [&](std::ostream& os) { write_field_csv(os, f.with_time(o.t), extra); });
  return kExitPass;
}

int cmd_norms(const RunConfig& c, std::ostream& out) {
  std::ifstream is(c.norms.input);
  if (!is) throw ConfigError("norms: cannot open " + c.norms.input);
  const Field f = read_field_csv(is);
  json j;
  j["input"] = c.norms.input;
  for (const auto& n : all_norms(f)) j["norms"][n.name] = {{"value", n.value}, {"tail_flag", n.tail_flag}};
  emit(c.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return kExitPass;
}

Field corpus_member(const std::string& id, const SpectralGrid& g) {
  if (id == "unit_mass") return unit_mass_probe(g);
  for (auto& e : default_corpus(g)) {
    if (e.id == id) return e.g;
  }
  throw ConfigError("unknown corpus id '" + id + "'");
}

int cmd_flows(const RunConfig& c, std::ostream& out) {
  const auto& o = c.flows;
  const auto g = grid_of(o.grid);
  const Field b0 = f_star(BurgersParams::from_amplitude(o.amplitude), g);
  Field result = b0;
  json diag{{"mode", o.mode}, {"A", o.amplitude}, {"t", o.t}};
  if (o.mode == "burgers") {
    const auto r = burgers_flow(b0, o.t);
    result = r.field;
    diag["mass_before"] = r.mass_before;
    diag["mass_after"] = r.mass_after;
    diag["tail"] = r.tail;
  } else {
    const Field a0 = corpus_member(o.g, g);
    diag["g"] = o.g;
    diag["mass_before"] = quadrature(o.mode == "heat" ? b0 : a0);
    if (o.mode == "heat") {
      result = heat_propagate(b0, o.t - 1.0);
    } else if (o.mode == "lin-rep") {
      result = linflow_rep(b0, a0, o.t);
    } else {
      result = linflow_direct(b0, a0, o.t, o.dt);
      diag["dt"] = o.dt;
    }
    diag["mass_after"] = quadrature(result);
    diag["tail"] = tail_mass(result);
  }
  diag["l2"] = l2_norm(result);
  diag["linf"] = linf_norm(result);
  const std::string extra = "mode=" + o.mode + ',' + kv("A", o.amplitude);
  if (c.out.empty() || c.out == "-") {
    out << diag.dump(2) << '\n';
  } else {
    emit(c.out, out, [&](std::ostream& os) { write_field_csv(os, result.with_time(o.t), extra); });
    out << diag.dump(2) << '\n';
  }
  return kExitPass;
}

int cmd_coercivity(const RunConfig& c, std::ostream& out) {
  const auto& o = c.coercivity;
  const auto g = grid_of(o.grid);
  std::vector<CorpusEntry> corpus;
  MeanGate gate = MeanGate::enforce;
  if (o.corpus == "default") {
    corpus = default_corpus(g);
  } else {
    corpus.push_back({"unit_mass", unit_mass_probe(g)});
    gate = MeanGate::skip;
  }
  std::vector<std::size_t> scales;
  for (double l : o.scales) scales.push_back(static_cast<std::size_t>(l));
  const auto t = coercivity_sweep(o.phi_d, scales, corpus, gate, o.threads);

  emit(c.out, out, [&](std::ostream& os) {
    os << "# corpus=" << o.corpus << ",X=" << format_number(o.grid.half_width) << ",N=" << o.grid.n_points
       << ",T0=1\nphi_d,L,g_id,ratio,kappa\n";
    for (const auto& r : t.rows) {
      os << format_number(r.phi_d) << ',' << r.scale << ',' << r.g_id << ',' << format_number(r.ratio) << ','
         << format_number(r.kappa) << '\n';
    }
  });
  json j;
  for (const auto& s : t.slopes) {
    j["slopes"].push_back({{"phi_d", s.phi_d}, {"g_id", s.g_id}, {"slope", s.fit.slope}, {"residual", s.fit.residual}});
  }
  for (const auto& s : t.spreads) {
    j["kappa"].push_back({{"phi_d", s.phi_d}, {"sup_kappa", s.sup_kappa}, {"spread", s.spread}});
  }
  if (!(c.out.empty() || c.out == "-")) out << j.dump(2) << '\n';
  return kExitPass;
}

int cmd_rg_mix(const RunConfig& c, std::ostream& out) {
  const auto& o = c.rg_mix;
  RGConfig cfg;
  cfg.scale = static_cast<std::size_t>(o.scale);
  cfg.n_max = o.n_max;
  cfg.params = BurgersParams::with_smallness(o.phi_d, o.delta);
  cfg.perturbation = parse_perturbation(o.perturbation);
  cfg.eps0 = o.eps0;
  cfg.dt = o.dt;
  cfg.half_width = o.grid.half_width;
  cfg.n_points = static_cast<std::size_t>(o.grid.n_points);
  cfg.fit_first = o.fit_first;
  cfg.fit_last = o.fit_last;
  cfg.validate();

  Field w = default_perturbation(cfg);
  if (o.w == "random") {
    const auto g = cfg.grid();
    w = Field(g, seeded_perturbation(g.nodes(), o.seed, 0.1));
  }
  const auto rep = run_mixing(cfg, w);

  emit(c.out, out, [&](std::ostream& os) {
    os << "# phi_d=" << format_number(o.phi_d) << ",delta=" << format_number(o.delta) << ",L=" << cfg.scale
       << ",perturbation=" << o.perturbation << ",eps0=" << format_number(o.eps0) << ",w=" << o.w
       << ",seed=" << o.seed << ",X=" << format_number(cfg.half_width) << ",N=" << cfg.n_points
       << ",dt=" << format_number(cfg.dt) << "\nn,t,rho,distance,mass,linear_gain,deviation\n";
    for (const auto& s : rep.series) {
      os << s.n << ',' << format_number(s.t) << ',' << format_number(s.rho) << ',' << format_number(s.distance)
         << ',' << format_number(s.mass) << ',' << format_number(s.linear_gain) << ','
         << format_number(s.deviation) << '\n';
    }
  });
  const json j{{"fitted_exponent", rep.rho_fit.slope},
               {"residual", rep.rho_fit.residual},
               {"distance_exponent", rep.distance_fit.slope},
               {"final_rho", rep.final_rho},
               {"mass_drift", rep.mass_drift},
               {"initial_l1xi1", rep.initial_l1xi1},
               {"T0", cfg.params.time_shift}};
  if (!(c.out.empty() || c.out == "-")) out << j.dump(2) << '\n';
  return kExitPass;
}

int cmd_spectra(const RunConfig& c, std::ostream& out) {
  const auto& o = c.spectra;
  const auto sys = RDSystem::lambda_omega(o.q, o.omega0);
  const auto wt = solve_wavetrain(sys, o.k, lambda_omega_ansatz(o.q, o.omega0, o.k, o.modes));
  const double range = o.xi_range > 0.0 ? o.xi_range : (o.k > 0.0 ? o.k / 2.0 : 0.1);
  const auto xi = symmetric_xi_grid(range, o.xi_points);
  const auto curves = eigencurves(wt, sys, xi, o.threads);
  const auto h = spectral_stability_report(curves);

  emit(c.out, out, [&](std::ostream& os) {
    os << "# system=" << o.system << ",q=" << format_number(o.q) << ",omega0=" << format_number(o.omega0)
       << ",k=" << format_number(o.k) << ",M=" << o.modes << ",xi_points=" << o.xi_points << "\nxi,j,re,im\n";
    for (std::size_t j = 0; j < curves.curves.size(); ++j) {
      for (std::size_t i = 0; i < xi.size(); ++i) {
        os << format_number(xi[i]) << ',' << j << ',' << format_number(curves.curves[j][i].real()) << ','
           << format_number(curves.curves[j][i].imag()) << '\n';
      }
    }
  });
  json j{{"k", o.k},
         {"omega", wt.omega},
         {"newton_iterations", wt.iterations},
         {"profile_residual", wt.residual},
         {"simple_zero", h.simple_zero},
         {"lambda1_at_zero", h.lambda1_at_zero},
         {"lambda1_second_derivative", h.lambda1_second_derivative},
         {"alpha", h.alpha},
         {"alpha0", h.alpha0},
         {"xi0", h.xi0},
         {"sigma0", h.sigma0},
         {"max_re_lambda1", h.max_re_lambda1},
         {"ambiguous_matches", curves.ambiguous.size()},
         {"pass", h.pass}};
  if (std::isfinite(h.sigma_principal)) j["sigma_principal"] = h.sigma_principal;
  if (o.k > 0.0) {
    const auto dc = dispersion_coefficients(sys, o.k, 1e-2, wt);
    j["phase_speed"] = dc.phase_speed;
    j["group_velocity"] = dc.group_velocity;
    j["beta"] = dc.beta;
  }
  if (!(c.out.empty() || c.out == "-")) out << j.dump(2) << '\n';
  return h.pass ? kExitPass : kExitAcceptanceFailure;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
  const auto& o = c.report;
  const Suite suite = parse_suite(o.suite);
  const fs::path dir = c.out.empty() ? fs::path("report") : fs::path(c.out);
  fs::create_directories(dir);
  const std::string started = utc_now();

  auto run = run_checks(suite, o.seed, [&](const CheckResult& r) { out << format_line(r) << '\n' << std::flush; });
  const SuiteRun* reuse = nullptr;
  if (suite == Suite::core) reuse = &run;
  const CheckResult det = check_determinism(o.seed, reuse);
  out << format_line(det) << '\n';
  run.checks.push_back(det);
  run.artifacts["checks.csv"] = checks_csv(run.checks);

  for (const auto& [name, body] : run.artifacts) write_atomic(dir / name, body);

  bool all = true;
  int passed = 0, scored = 0;
  std::ostringstream m;
  m << "diffmix report\nversion: " << DIFFMIX_VERSION << "\nsuite: " << o.suite << "\nseed: " << o.seed
    << "\nstarted: " << started << "\nfinished: " << utc_now() << "\nconfig:";
  if (!c.config_file.empty()) m << " file=" << c.config_file;
  m << " suite=" << o.suite << " seed=" << o.seed << " out=" << dir.string() << "\nchecks:\n";
  for (const auto& r : run.checks) {
    m << "  " << format_line(r) << '\n';
    if (r.id == 0) continue;
    ++scored;
    passed += r.pass ? 1 : 0;
    all = all && r.pass;
  }
  m << "result: " << passed << '/' << scored << " criteria passed\n";
  write_atomic(dir / "manifest.txt", m.str());
  out << "result: " << passed << '/' << scored << " criteria passed; artifacts in " << dir.string() << '\n';
  return all ? kExitPass : kExitAcceptanceFailure;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Diffusive mixing of wave-train phase: profiles, flows, renormalization and spectra", "diffmix"};
  app.set_config("--config", "", "Read flags from a key = value file with [subcommand] sections");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.set_version_flag("--version", DIFFMIX_VERSION);

  auto* prof = app.add_subcommand("profiles", "Sample a closed-form profile to CSV");
  prof->add_option("--kind", c.profiles.kind, "fstar|selfsimilar|bbar|bbar_n|phi_star")->capture_default_str();
  prof->add_option("--A", c.profiles.amplitude, "Amplitude A > 0")->capture_default_str();
  prof->add_option("--phi-d", c.profiles.phi_d, "Phase offset; sets A = e^phi_d - 1");
  prof->add_option("--T0", c.profiles.time_shift, "Time shift of bbar")->capture_default_str();
  prof->add_option("--t", c.profiles.t, "Time")->capture_default_str();
  prof->add_option("--n", c.profiles.n, "RG iterate for bbar_n")->capture_default_str();
  prof->add_option("--L", c.profiles.scale, "RG scale for bbar_n")->capture_default_str();
  prof->add_option("--alpha", c.profiles.alpha, "Diffusion coefficient for phi_star")->capture_default_str();
  prof->add_option("--beta", c.profiles.beta, "Nonlinear coefficient for phi_star")->capture_default_str();
  add_resolution(prof, c.profiles.grid);

  auto* norms = app.add_subcommand("norms", "Print all norms of a field CSV as JSON");
  norms->add_option("--in", c.norms.input, "Field CSV")->required();

  auto* flows = app.add_subcommand("flows", "Burgers, heat or linearized flow of f*_A");
  flows->add_option("--profile", c.flows.profile, "Initial profile (fA)")->capture_default_str();
  flows->add_option("--A", c.flows.amplitude, "Amplitude A > 0")->capture_default_str();
  flows->add_option("--t", c.flows.t, "Final time (start at 1)")->capture_default_str();
  flows->add_option("--mode", c.flows.mode, "burgers|heat|lin-rep|lin-direct")->capture_default_str();
  flows->add_option("--g", c.flows.g, "Data for the linear modes (corpus id or unit_mass)")->capture_default_str();
  flows->add_option("--dt", c.flows.dt, "Step for lin-direct")->capture_default_str();
  add_resolution(flows, c.flows.grid);

  auto* coer = app.add_subcommand("coercivity", "Contraction table of R_L Phi_b(L^2-1)");
  coer->add_option("--phi-d", c.coercivity.phi_d, "Phase offsets")->delimiter(',')->capture_default_str();
  coer->add_option("--L", c.coercivity.scales, "Scales (powers of two)")->delimiter(',')->capture_default_str();
  coer->add_option("--corpus", c.coercivity.corpus, "default|unit_mass")->capture_default_str();
  coer->add_option("--threads", c.coercivity.threads, "Worker threads (0 = all cores)");
  add_resolution(coer, c.coercivity.grid);

  auto* rg = app.add_subcommand("rg-mix", "Renormalization-group iteration of the wavenumber equation");
  rg->add_option("--phi-d", c.rg_mix.phi_d, "Phase offset")->capture_default_str();
  rg->add_option("--delta", c.rg_mix.delta, "Smallness scale; T0 = (phi_d/delta)^2")->capture_default_str();
  rg->add_option("--L", c.rg_mix.scale, "Integer scale L >= 2")->capture_default_str();
  rg->add_option("--n-max", c.rg_mix.n_max, "Number of RG steps")->capture_default_str();
  rg->add_option("--perturbation", c.rg_mix.perturbation, "none|cubic_flux|quadratic_gradient")->capture_default_str();
  rg->add_option("--eps0", c.rg_mix.eps0, "Perturbation strength")->capture_default_str();
  rg->add_option("--seed", c.rg_mix.seed, "Seed for --w random")->capture_default_str();
  rg->add_option("--w", c.rg_mix.w, "Initial deviation: default|random")->capture_default_str();
  rg->add_option("--dt", c.rg_mix.dt, "Time step")->capture_default_str();
  rg->add_option("--fit-first", c.rg_mix.fit_first, "First n of the fit window")->capture_default_str();
  rg->add_option("--fit-last", c.rg_mix.fit_last, "Last n of the fit window")->capture_default_str();
  add_resolution(rg, c.rg_mix.grid);

  auto* spec = app.add_subcommand("spectra", "Wave train and Bloch eigencurves");
  spec->add_option("--system", c.spectra.system, "lambda-omega")->capture_default_str();
  spec->add_option("--q", c.spectra.q, "Frequency nonlinearity")->capture_default_str();
  spec->add_option("--omega0", c.spectra.omega0, "Base frequency")->capture_default_str();
  spec->add_option("--k", c.spectra.k, "Wavenumber")->capture_default_str();
  spec->add_option("--M", c.spectra.modes, "Fourier modes |m| <= M")->capture_default_str();
  spec->add_option("--xi-points", c.spectra.xi_points, "Odd number of Floquet exponents")->capture_default_str();
  spec->add_option("--xi-range", c.spectra.xi_range, "Half range of xi (default k/2)");
  spec->add_option("--threads", c.spectra.threads, "Worker threads (0 = all cores)");

  auto* rep = app.add_subcommand("report", "Run the acceptance suite");
  rep->add_option("--suite", c.report.suite, "core|extended")->capture_default_str();
  rep->add_option("--seed", c.report.seed, "Seed for the seeded corpus probe")->capture_default_str();

  for (auto* sub : {prof, norms, flows, coer, rg, spec, rep}) {
    sub->add_option("--out", c.out, sub == rep ? "Output directory" : "Output file (default stdout)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(DIFFMIX_VERSION) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
  if (auto* cfg_opt = app.get_option("--config"); cfg_opt->count() > 0) c.config_file = cfg_opt->as<std::string>();
  validate(c);
  return c;
}

int execute(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.command == "profiles") return cmd_profiles(c, out);
  if (c.command == "norms") return cmd_norms(c, out);
  if (c.command == "flows") return cmd_flows(c, out);
  if (c.command == "coercivity") return cmd_coercivity(c, out);
  if (c.command == "rg-mix") return cmd_rg_mix(c, out);
  if (c.command == "spectra") return cmd_spectra(c, out);
  if (c.command == "report") return cmd_report(c, out);
  throw ConfigError("unknown subcommand '" + c.command + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return execute(parse_config(args), out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitPass;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace diffmix::app
