#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "diffmix/colehopf.hpp"
#include "diffmix/field_io.hpp"
#include "diffmix/flows.hpp"
#include "diffmix/mixing.hpp"
#include "diffmix/norms.hpp"
#include "diffmix/profiles.hpp"
#include "diffmix/renorm.hpp"
#include "diffmix/spectra.hpp"

namespace diffmix::app {
namespace {

using Clock = std::chrono::steady_clock;
using diffmix::format_number;

constexpr double kInf = std::numeric_limits<double>::infinity();

bool compare(double value, const std::string& rel, double threshold) {
  if (!std::isfinite(value)) return false;
  if (rel == "<=") return value <= threshold;
  if (rel == "<") return value < threshold;
  if (rel == ">=") return value >= threshold;
  throw std::logic_error("unknown relation " + rel);
}

// Runs `body`, which fills value/detail and may clear `extra_ok` for
// conditions beyond the headline comparison. Exceptions become failures.
template <class Body>
CheckResult timed(int id, std::string name, std::string rel, double threshold, double budget, Body&& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  r.relation = std::move(rel);
  r.threshold = threshold;
  r.budget = budget;
  const auto t0 = Clock::now();
  bool extra_ok = true;
  try {
    body(r, extra_ok);
    r.pass = extra_ok && compare(r.value, r.relation, r.threshold);
  } catch (const std::exception& e) {
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.detail = std::string("error: ") + e.what();
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (r.budget > 0.0 && r.seconds > r.budget) {
    r.pass = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("over runtime budget");
  }
  return r;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

Field gauss_derivative(const SpectralGrid& g) {
  return Field::sample(g, [](double x) { return -0.5 * x * std::exp(-0.25 * x * x); });
}

CheckResult roundtrip() {
  return timed(1, "cole-hopf round trip", "<=", 1e-10, 1.0, [](CheckResult& r, bool&) {
    const auto g = make_grid(40.0, 1024);
    for (double a : {1.0, std::exp(2.0) - 1.0}) {
      const Field f = f_star(BurgersParams::from_amplitude(a), g);
      r.value = std::max(r.value, max_abs_difference(ch_inverse(ch_forward(f)), f));
    }
    r.detail = "max over A in {1, e^2-1}";
  });
}

CheckResult selfsimilarity(std::ostringstream& csv) {
  return timed(2, "burgers self-similarity", "<=", 1e-7, 1.0, [&](CheckResult& r, bool&) {
    const auto g = make_grid(40.0, 1024);
    const auto p = BurgersParams::from_amplitude(1.0);
    const Field f = f_star(p, g);
    csv << "# check=selfsimilarity,A=1,X=40,N=1024\nt,linf_error\n";
    for (double t : {2.0, 4.0, 16.0}) {
      const double e = max_abs_difference(burgers_flow(f, t).field, burgers_selfsimilar(p, t, g));
      csv << format_number(t) << ',' << format_number(e) << '\n';
      r.value = std::max(r.value, e);
    }
  });
}

CheckResult uniform_decay(std::ostringstream& csv) {
  // value = max_t sqrt(t) |b(t)|_inf / (|b0|_1 e^{|b0|_1}); the bound holds when <= 1.
  return timed(3, "uniform decay bound", "<=", 1.0, 1.0, [&](CheckResult& r, bool&) {
    const auto g = make_grid(160.0, 4096);
    csv << "# check=uniform_decay,X=160,N=4096\nA,t,scaled_sup,bound\n";
    const double times[] = {1.0, 4.0, 16.0, 64.0};
    for (double a : {1.0, std::exp(2.0) - 1.0}) {
      const Field b0 = f_star(BurgersParams::from_amplitude(a), g);
      const double m = l1_norm(b0);
      const double bound = m * std::exp(m);
      const auto flow = burgers_flow(b0, 64.0, times);
      for (std::size_t i = 0; i < flow.trajectory.size(); ++i) {
        const double s = std::sqrt(times[i]) * linf_norm(flow.trajectory[i]);
        csv << format_number(a) << ',' << format_number(times[i]) << ',' << format_number(s) << ','
            << format_number(bound) << '\n';
        r.value = std::max(r.value, s / bound);
      }
    }
    r.detail = "ratio to |b0|_1 exp(|b0|_1)";
  });
}

CheckResult representation() {
  return timed(4, "representation vs direct", "<=", 1e-4, 30.0, [](CheckResult& r, bool&) {
    const auto g = make_grid(40.0, 1024);
    const Field b0 = f_star(BurgersParams::from_amplitude(1.0), g);
    const Field a0 = gauss_derivative(g);
    const Field rep = linflow_rep(b0, a0, 2.0);
    const Field direct = linflow_direct(b0, a0, 2.0, 1e-3);
    r.value = l2_norm(rep - direct) / l2_norm(direct);
    r.detail = "dt=1e-3";
    if (r.value > r.threshold) {
      // Richardson extrapolation of the second-order stepper.
      const Field half = linflow_direct(b0, a0, 2.0, 5e-4);
      const Field extrap = (4.0 * half - direct) * (1.0 / 3.0);
      r.value = l2_norm(rep - extrap) / l2_norm(extrap);
      r.detail = "Richardson from dt=1e-3, 5e-4";
    }
  });
}

CheckResult heat_closed_form() {
  return timed(5, "heat contraction 1/L", "<=", 1e-8, 1.0, [](CheckResult& r, bool&) {
    const auto g = make_grid(40.0, 1024);
    const Field a = gauss_derivative(g);
    for (std::size_t l : {2U, 4U, 8U}) {
      r.value = std::max(r.value, std::abs(heat_contraction(a, l) - 1.0 / static_cast<double>(l)));
    }
  });
}

void write_table(std::ostringstream& csv, const ContractionTable& t, const std::string& header) {
  csv << "# " << header << "\nphi_d,L,g_id,ratio,kappa\n";
  for (const auto& row : t.rows) {
    csv << format_number(row.phi_d) << ',' << row.scale << ',' << row.g_id << ',' << format_number(row.ratio)
        << ',' << format_number(row.kappa) << '\n';
  }
}

void write_slopes(std::ostringstream& csv, const ContractionTable& t) {
  csv << "# slopes\nphi_d,g_id,slope,residual\n";
  for (const auto& s : t.slopes) {
    csv << format_number(s.phi_d) << ',' << s.g_id << ',' << format_number(s.fit.slope) << ','
        << format_number(s.fit.residual) << '\n';
  }
}

const std::size_t kScales[] = {2, 4, 8, 16};

CheckResult coercivity(const std::vector<double>& phis, Artifacts& out) {
  // value = max |slope + 1|; the kappa spread condition is checked alongside.
  return timed(6, "mean-zero coercivity slope", "<=", 0.1, 300.0, [&](CheckResult& r, bool& ok) {
    const auto g = make_grid(40.0, 1024);
    const auto corpus = default_corpus(g);
    const auto t = coercivity_sweep(phis, kScales, corpus);
    std::ostringstream csv;
    write_table(csv, t, "check=coercivity,corpus=default,X=40,N=1024,T0=1");
    write_slopes(csv, t);
    out["coercivity.csv"] = csv.str();

    std::string worst;
    for (const auto& s : t.slopes) {
      const double d = std::abs(s.fit.slope + 1.0);
      if (d > r.value) {
        r.value = d;
        worst = s.g_id + " at phi_d=" + num(s.phi_d) + " slope=" + num(s.fit.slope);
      }
    }
    double spread = 0.0;
    for (const auto& s : t.spreads) spread = std::max(spread, s.spread);
    ok = spread < 2.0;
    r.detail = "worst " + worst + "; max kappa spread=" + num(spread) + " (need < 2)";
  });
}

CheckResult unit_mass(const std::vector<double>& phis, Artifacts& out) {
  return timed(7, "unit-mass slope (no contraction)", ">=", -0.2, 60.0, [&](CheckResult& r, bool&) {
    const auto g = make_grid(40.0, 1024);
    const CorpusEntry probe{"unit_mass", unit_mass_probe(g)};
    const auto t = coercivity_sweep(phis, kScales, std::span(&probe, 1), MeanGate::skip);
    std::ostringstream csv;
    write_table(csv, t, "check=unit_mass,X=40,N=1024,T0=1");
    write_slopes(csv, t);
    out["unit_mass.csv"] = csv.str();
    r.value = kInf;
    for (const auto& s : t.slopes) r.value = std::min(r.value, s.fit.slope);
    r.detail = "min slope over phi_d";
  });
}

CheckResult smoothing(Artifacts& out) {
  // value = worst max/min ratio of the two weighted norms over t-1 = 2^-1..2^-8.
  return timed(8, "smoothing gains flat", "<", 10.0, 60.0, [&](CheckResult& r, bool&) {
    const auto g = make_grid(40.0, 1024);
    const Field b0 = f_star(BurgersParams::from_amplitude(1.0), g);
    const double l = 0.25;
    const Field a0 = Field::sample(g, [l](double x) { return -x / (2 * l * l) * std::exp(-x * x / (4 * l * l)); });
    std::vector<double> elapsed;
    for (int k = 1; k <= 8; ++k) elapsed.push_back(std::ldexp(1.0, -k));
    const auto rows = smoothing_probe(b0, a0, 1, elapsed);
    std::ostringstream csv;
    csv << "# check=smoothing,A=1,probe=dx exp(-x^2/(4*0.0625)),X=40,N=1024\n"
           "elapsed,derivative_gain,interpolation_gain\n";
    double lo1 = kInf, hi1 = 0, lo2 = kInf, hi2 = 0;
    for (const auto& row : rows) {
      csv << format_number(row.elapsed) << ',' << format_number(row.derivative_gain) << ','
          << format_number(row.interpolation_gain) << '\n';
      lo1 = std::min(lo1, row.derivative_gain);
      hi1 = std::max(hi1, row.derivative_gain);
      lo2 = std::min(lo2, row.interpolation_gain);
      hi2 = std::max(hi2, row.interpolation_gain);
    }
    out["smoothing.csv"] = csv.str();
    r.value = std::max(hi1 / lo1, hi2 / lo2);
    r.detail = "derivative ratio=" + num(hi1 / lo1) + ", interpolation ratio=" + num(hi2 / lo2);
  });
}

CheckResult rg_decay(Artifacts& out) {
  // value = worst rho exponent; distance exponent and mass drift checked alongside.
  return timed(9, "RG mixing decay", "<=", -0.8, 600.0, [&](CheckResult& r, bool& ok) {
    r.value = -kInf;
    std::string detail;
    for (double eps : {0.0, 0.1}) {
      RGConfig cfg;
      cfg.n_max = 12;
      cfg.perturbation = Perturbation::cubic_flux;
      cfg.eps0 = eps;
      const auto rep = run_mixing(cfg, default_perturbation(cfg));
      std::ostringstream csv;
      csv << "# check=rg_mix,phi_d=2,delta=0.05,L=2,perturbation=cubic_flux,eps0=" << format_number(eps)
          << ",X=" << format_number(cfg.half_width) << ",N=" << cfg.n_points << ",dt=" << format_number(cfg.dt)
          << "\nn,t,rho,distance,mass,linear_gain,deviation\n";
      for (const auto& s : rep.series) {
        csv << s.n << ',' << format_number(s.t) << ',' << format_number(s.rho) << ',' << format_number(s.distance)
            << ',' << format_number(s.mass) << ',' << format_number(s.linear_gain) << ','
            << format_number(s.deviation) << '\n';
      }
      out["rg_eps" + format_number(eps) + ".csv"] = csv.str();
      r.value = std::max(r.value, rep.rho_fit.slope);
      ok = ok && rep.distance_fit.slope <= -0.4 && rep.mass_drift <= 1e-7;
      detail += (detail.empty() ? "" : "; ") + std::string("eps0=") + num(eps) + ": rho exp=" +
                num(rep.rho_fit.slope) + ", distance exp=" + num(rep.distance_fit.slope) +
                ", mass drift=" + num(rep.mass_drift);
    }
    r.detail = detail;
  });
}

CheckResult grow(Artifacts& out) {
  return timed(10, "bbar convergence bounded", "<", 10.0, 10.0, [&](CheckResult& r, bool&) {
    const auto g = make_grid(320.0, 8192);
    auto p = BurgersParams::from_phase_offset(2.0);
    p.time_shift = 1600.0;
    std::ostringstream csv;
    csv << "# check=grow,phi_d=2,T0=1600,X=320,N=8192\nt,scaled_distance\n";
    double lo = kInf, hi = 0.0;
    for (double t : {10.0, 100.0, 1000.0, 10000.0}) {
      const double d = std::sqrt(t) * grow_distance(p, t, g);
      csv << format_number(t) << ',' << format_number(d) << '\n';
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    out["grow.csv"] = csv.str();
    r.value = hi / lo;
    r.detail = "max/min of sqrt(t) distance";
  });
}

CheckResult spectra(Artifacts& out) {
  // value = lambda_1(0); curvature, gap, beta and c_g are checked alongside.
  return timed(11, "wave-train spectrum", "<=", 1e-8, 60.0, [&](CheckResult& r, bool& ok) {
    const auto sys = RDSystem::lambda_omega(1.0, 1.0);
    const double k0 = 0.2;
    const auto wt = solve_wavetrain(sys, k0, lambda_omega_ansatz(1.0, 1.0, k0, 32));
    const auto xi = symmetric_xi_grid(k0 / 2.0, 65);
    const auto curves = eigencurves(wt, sys, xi);
    const auto h = spectral_stability_report(curves);
    const auto dc = dispersion_coefficients(sys, k0, 1e-2, wt);

    std::ostringstream csv;
    csv << "# check=spectra,system=lambda-omega,q=1,omega0=1,k=0.2,M=32,xi_points=65\nxi,j,re,im\n";
    for (std::size_t j = 0; j < curves.curves.size(); ++j) {
      for (std::size_t i = 0; i < xi.size(); ++i) {
        const auto l = curves.curves[j][i];
        csv << format_number(xi[i]) << ',' << j << ',' << format_number(l.real()) << ','
            << format_number(l.imag()) << '\n';
      }
    }
    out["spectra.csv"] = csv.str();

    r.value = std::abs(h.lambda1_at_zero);
    const bool curvature = h.lambda1_second_derivative < 0.0;
    const bool gap = h.sigma0 > 0.0;
    const bool beta = std::abs(dc.beta + 1.0) <= 1e-6;
    const bool cg = std::abs(dc.group_velocity - 0.4) <= 1e-6;
    ok = h.simple_zero && curvature && gap && beta && cg;
    r.detail = "lambda''(0)=" + num(h.lambda1_second_derivative) + ", sigma0=" + num(h.sigma0) +
               ", beta=" + num(dc.beta) + ", c_g=" + num(dc.group_velocity) +
               (h.simple_zero ? "" : ", zero not simple");
  });
}

// Mean-zero combination of shifted Gaussian derivatives with seeded
// coefficients; informational only, outside the frozen corpus.
CheckResult seeded_probe(std::uint64_t seed, Artifacts& out) {
  return timed(0, "seeded corpus probe slope", "<=", 0.0, 0.0, [&](CheckResult& r, bool&) {
    const auto g = make_grid(40.0, 1024);
    const CorpusEntry e{"seeded", Field(g, seeded_perturbation(g.nodes(), seed, 1.0))};
    const double phis[] = {2.0};
    const auto t = coercivity_sweep(phis, kScales, std::span(&e, 1));
    std::ostringstream csv;
    write_table(csv, t, "check=seeded_probe,seed=" + std::to_string(seed));
    out["seeded_probe.csv"] = csv.str();
    r.value = t.slopes.front().fit.slope;
    r.detail = "phi_d=2, informational";
  });
}

}  // namespace

std::vector<double> seeded_perturbation(const std::vector<double>& nodes, std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> coef(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  double c[3], s[3];
  for (int i = 0; i < 3; ++i) {
    c[i] = coef(rng);
    s[i] = shift(rng);
  }
  std::vector<double> w(nodes.size());
  double peak = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double y = nodes[k] - s[i];
      v += c[i] * -0.5 * y * std::exp(-0.25 * y * y);
    }
    w[k] = v;
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 0.0) {
    for (double& v : w) v *= amplitude / peak;
  }
  return w;
}

Suite parse_suite(const std::string& name) {
  if (name == "core") return Suite::core;
  if (name == "extended") return Suite::extended;
  throw std::invalid_argument("unknown suite '" + name + "' (core|extended)");
}

std::string to_string(Suite s) { return s == Suite::core ? "core" : "extended"; }

SuiteRun run_checks(Suite suite, std::uint64_t seed, const Progress& progress) {
  SuiteRun run;
  std::ostringstream c2, c3;
  std::vector<double> phis{0.5, 2.0};
  if (suite == Suite::extended) phis.push_back(5.0);

  auto add = [&](CheckResult r) {
    if (progress) progress(r);
    run.checks.push_back(std::move(r));
  };
  add(roundtrip());
  add(selfsimilarity(c2));
  run.artifacts["selfsimilarity.csv"] = c2.str();
  add(uniform_decay(c3));
  run.artifacts["uniform_decay.csv"] = c3.str();
  add(representation());
  add(heat_closed_form());
  add(coercivity(phis, run.artifacts));
  add(unit_mass(phis, run.artifacts));
  add(smoothing(run.artifacts));
  add(rg_decay(run.artifacts));
  add(grow(run.artifacts));
  add(spectra(run.artifacts));
  add(seeded_probe(seed, run.artifacts));
  run.artifacts["checks.csv"] = checks_csv(run.checks);
  return run;
}

CheckResult check_determinism(std::uint64_t seed, const SuiteRun* first) {
  return timed(12, "determinism of core CSV bodies", "<=", 0.0, 0.0, [&](CheckResult& r, bool&) {
    const SuiteRun a = first ? *first : run_checks(Suite::core, seed);
    const SuiteRun b = run_checks(Suite::core, seed);
    std::vector<std::string> differing;
    for (const auto& [name, body] : a.artifacts) {
      const auto it = b.artifacts.find(name);
      if (it == b.artifacts.end() || it->second != body) differing.push_back(name);
    }
    if (a.artifacts.size() != b.artifacts.size()) differing.push_back("<file set>");
    r.value = static_cast<double>(differing.size());
    r.detail = std::to_string(a.artifacts.size()) + " files compared";
    for (const auto& d : differing) r.detail += ", differs: " + d;
  });
}

std::string checks_csv(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  os << "# checks\nid,name,value,relation,threshold,pass\n";
  for (const auto& c : checks) {
    os << c.id << ',' << c.name << ',' << format_number(c.value) << ',' << c.relation << ','
       << format_number(c.threshold) << ',' << (c.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string format_line(const CheckResult& r) {
  std::ostringstream os;
  os << (r.id == 0 ? "[INFO]" : r.pass ? "[PASS]" : "[FAIL]") << ' ';
  if (r.id > 0) os << r.id << ' ';
  os << r.name << ": value=" << num(r.value) << ' ' << r.relation << ' ' << num(r.threshold);
  os.precision(3);
  os << " (" << std::fixed << r.seconds << " s";
  if (r.budget > 0.0) os << " / " << std::defaultfloat << r.budget << " s";
  os << ')';
  if (!r.detail.empty()) os << " - " << r.detail;
  return os.str();
}

}  // namespace diffmix::app
