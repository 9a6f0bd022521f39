#include "diffmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "diffmix/errors.hpp"
#include "diffmix/flows.hpp"
#include "diffmix/norms.hpp"
#include "diffmix/renorm.hpp"
#include "fft.hpp"

namespace diffmix {
namespace {

using cplx = std::complex<double>;

double scale_of(const RGConfig& cfg) { return static_cast<double>(cfg.scale); }

Field background_at(const RGConfig& cfg, int n, double t) {
  return bbar_n(cfg.params, scale_of(cfg), n, t, cfg.grid(), kNoTailCheck);
}

RGSample measure(const RGState& s, const RGConfig& cfg) {
  RGSample r;
  r.n = s.n;
  r.t = std::pow(scale_of(cfg), 2.0 * s.n);
  r.rho = h22_norm(s.g, kNoTailCheck);
  const Field u = state_profile(s, cfg);
  r.distance = h22_norm(u - f_star(cfg.params, cfg.grid()), kNoTailCheck);
  r.mass = quadrature(u);
  return r;
}

}  // namespace

Perturbation parse_perturbation(const std::string& name) {
  if (name == "none") return Perturbation::none;
  if (name == "cubic_flux") return Perturbation::cubic_flux;
  if (name == "quadratic_gradient") return Perturbation::quadratic_gradient;
  throw std::invalid_argument("unknown perturbation '" + name + "'");
}

std::string to_string(Perturbation p) {
  switch (p) {
    case Perturbation::none: return "none";
    case Perturbation::cubic_flux: return "cubic_flux";
    case Perturbation::quadratic_gradient: return "quadratic_gradient";
  }
  return "none";
}

void RGConfig::validate() const {
  if (scale < 2) throw std::invalid_argument("RGConfig: L must be >= 2");
  if (n_max < 0) throw std::invalid_argument("RGConfig: n_max must be >= 0");
  if (!(eps0 >= 0.0)) throw std::invalid_argument("RGConfig: eps0 must be >= 0");
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("RGConfig: sigma must lie in (0,1)");
  if (!(dt > 0.0)) throw std::invalid_argument("RGConfig: dt must be positive");
  if (!(rho_budget > 0.0)) throw std::invalid_argument("RGConfig: rho budget must be positive");
  if (fit_first < 0 || fit_last < fit_first + 1) throw std::invalid_argument("RGConfig: bad fit window");
  params.validate();
  (void)grid();
}

SpectralGrid RGConfig::grid() const { return SpectralGrid(half_width, n_points); }

RGState init_data(const RGConfig& cfg, const Field& w) {
  cfg.validate();
  if (!(w.grid() == cfg.grid())) throw std::invalid_argument("init_data: w must live on the RG grid");
  require_mean_zero(w, "init_data");
  // The widest background is the first one; it has to fit on the grid.
  const Field b0 = bbar_n(cfg.params, scale_of(cfg), 0, 1.0, cfg.grid());
  const double size = h22_norm(w, kNoTailCheck);
  if (size > cfg.rho_budget) {
    throw DomainError("init_data: ||w||_{H^2(2)} = " + std::to_string(size) + " exceeds the budget");
  }
  RGState s{0, w.with_time(1.0), cfg.eps0, l1xi1_norm(b0 + w), {}};
  s.series.push_back(measure(s, cfg));
  return s;
}

Field state_profile(const RGState& state, const RGConfig& cfg) {
  return background_at(cfg, state.n, 1.0) + state.g;
}

Field integrate_deviation(const Field& a0, double t0, double t1, double eps, Perturbation p,
                          double dt, const Background& background) {
  if (!(t1 >= t0)) throw std::invalid_argument("integrate_deviation: t1 must be >= t0");
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_deviation: dt must be positive");
  const auto& grid = a0.grid();
  const std::size_t n = grid.size();
  const std::size_t half = n / 2;
  const double limit = 1e6;
  const bool perturbed = eps != 0.0 && p != Perturbation::none;

  std::vector<double> a(a0.values().begin(), a0.values().end());
  std::vector<double> flux(n), u(n), a_star(n);
  detail::Spectrum spec(half + 1), k1(half + 1), k2(half + 1), stage(half + 1), uh(half + 1);

  auto rhs = [&](std::span<const double> av, const Field* bg, detail::Spectrum& out) {
    for (std::size_t i = 0; i < n; ++i) {
      const double b = bg ? (*bg)[i] : 0.0;
      flux[i] = 2.0 * b * av[i] + av[i] * av[i];
      u[i] = b + av[i];
    }
    if (perturbed) {
      if (p == Perturbation::cubic_flux) {
        for (std::size_t i = 0; i < n; ++i) flux[i] += eps * u[i] * u[i] * u[i];
      } else {
        // u u_z with a spectral derivative; reuse `out` as scratch.
        detail::rfft(u, uh);
        for (std::size_t j = 0; j < half; ++j) uh[j] *= cplx(0.0, grid.wavenumber(j));
        uh[half] = 0.0;
        detail::irfft(uh, a_star);
        for (std::size_t i = 0; i < n; ++i) flux[i] += eps * u[i] * a_star[i];
      }
    }
    detail::rfft(flux, out);
    for (std::size_t j = 0; j < half; ++j) out[j] *= cplx(0.0, grid.wavenumber(j));
    out[half] = 0.0;
  };

  std::optional<Field> bg_now;
  if (background) bg_now = background(t0);
  double now = t0;
  while (now < t1 - 1e-12 * std::max(1.0, t1)) {
    const double h = std::min(dt, t1 - now);
    std::optional<Field> bg_next;
    if (background) bg_next = background(now + h);
    detail::rfft(a, spec);
    rhs(a, bg_now ? &*bg_now : nullptr, k1);
    for (std::size_t j = 0; j <= half; ++j) {
      const double xi = grid.wavenumber(j);
      const double decay = std::exp(-xi * xi * h);
      stage[j] = decay * (spec[j] + h * k1[j]);
      spec[j] = decay * (spec[j] + 0.5 * h * k1[j]);
    }
    std::vector<double> trial(n);
    detail::irfft(stage, trial);
    rhs(trial, bg_next ? &*bg_next : nullptr, k2);
    for (std::size_t j = 0; j <= half; ++j) spec[j] += 0.5 * h * k2[j];
    detail::irfft(spec, a);
    for (double v : a) {
      if (!std::isfinite(v) || std::abs(v) > limit) {
        throw ConvergenceError("integrate_deviation: solution blew up at t = " + std::to_string(now + h));
      }
    }
    now += h;
    bg_now = std::move(bg_next);
  }
  return Field(grid, std::move(a), t1);
}

Field evolve_deviation(const RGState& state, const RGConfig& cfg) {
  const double l2 = scale_of(cfg) * scale_of(cfg);
  const int n = state.n;
  Background bg = [&cfg, n](double t) { return background_at(cfg, n, t); };
  Field a = integrate_deviation(state.g, 1.0, l2, state.eps, cfg.perturbation, cfg.dt, bg);
  if (tail_mass(a) > kTailTolerance) {
    throw TruncationError("evolve_deviation: deviation reached the grid edge at iterate " + std::to_string(n));
  }
  return a;
}

Field evolve_interval(const RGState& state, const RGConfig& cfg) {
  const double l2 = scale_of(cfg) * scale_of(cfg);
  return background_at(cfg, state.n, l2) + evolve_deviation(state, cfg);
}

Decomposition decompose(const RGState& state, const RGConfig& cfg, const Field& a_end) {
  const double l = scale_of(cfg);
  Field linear = heat_propagate(state.g, l * l - 1.0);
  Field deviation = a_end - linear;
  const double g_norm = h22_norm(state.g, kNoTailCheck);
  double gain = 0.0;
  if (g_norm > 0.0) {
    gain = h22_norm(resample_scaled(linear, l).field, kNoTailCheck) / g_norm;
  }
  const double dev = h22_norm(deviation, kNoTailCheck);
  return {std::move(linear), std::move(deviation), gain, dev};
}

Decomposition decompose(const RGState& state, const RGConfig& cfg) {
  return decompose(state, cfg, evolve_deviation(state, cfg));
}

RGState rg_step(const RGState& state, const RGConfig& cfg) {
  const double l = scale_of(cfg);
  const Field a_end = evolve_deviation(state, cfg);
  const Decomposition d = decompose(state, cfg, a_end);
  RGState next = state;
  RGSample& last = next.series.back();
  last.linear_gain = d.linear_gain;
  last.deviation = d.deviation_norm;
  last.has_step = true;
  next.n = state.n + 1;
  next.g = resample_scaled(a_end, l).field.with_time(1.0);
  next.eps = state.eps / l;
  next.series.push_back(measure(next, cfg));
  return next;
}

ConvergenceReport run_mixing(const RGConfig& cfg, const Field& w) {
  RGState s = init_data(cfg, w);
  for (int k = 0; k < cfg.n_max; ++k) s = rg_step(s, cfg);

  ConvergenceReport r;
  r.series = s.series;
  r.initial_l1xi1 = s.initial_l1xi1;
  r.final_rho = s.series.back().rho;
  const double phi = cfg.params.phase_offset();
  for (const auto& smp : s.series) r.mass_drift = std::max(r.mass_drift, std::abs(smp.mass - phi));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.rho_fit = {nan, nan, nan};
  r.distance_fit = {nan, nan, nan};
  std::vector<double> xn, yr, xt, yd;
  bool rho_positive = true;
  for (const auto& smp : s.series) {
    if (smp.n < cfg.fit_first || smp.n > cfg.fit_last) continue;
    xn.push_back(smp.n * std::log(scale_of(cfg)));
    xt.push_back(std::log(smp.t));
    if (smp.rho > 0.0) yr.push_back(std::log(smp.rho)); else rho_positive = false;
    yd.push_back(std::log(smp.distance));
  }
  if (xn.size() >= 2) {
    if (rho_positive) r.rho_fit = fit_line(xn, yr);
    r.distance_fit = fit_line(xt, yd);
  }
  return r;
}

Field default_perturbation(const RGConfig& cfg) {
  return Field::sample(cfg.grid(), [](double z) { return -0.05 * z * std::exp(-0.25 * z * z); });
}

}  // namespace diffmix
