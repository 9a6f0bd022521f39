#pragma once

// Renormalization-group driver for the wavenumber equation
//
//     u_t = u_zz + (u^2)_z + eps P(u),
//
// written for the deviation a = u - bbar^(n) from the explicit Burgers
// background, a_t = a_zz + (2 bbar a + a^2)_z + eps P(bbar + a). One RG step
// integrates over local time [1, L^2] and applies R_L; eps scales like 1/L.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "diffmix/fit.hpp"
#include "diffmix/grid.hpp"
#include "diffmix/profiles.hpp"

namespace diffmix {

enum class Perturbation { none, cubic_flux, quadratic_gradient };

Perturbation parse_perturbation(const std::string& name);
std::string to_string(Perturbation p);

struct RGConfig {
  std::size_t scale = 2;
  int n_max = 14;
  BurgersParams params = BurgersParams::with_smallness(2.0, 0.05);
  Perturbation perturbation = Perturbation::none;
  double eps0 = 0.0;
  /// Budget for ||u(1) - bbar(1)||_{H^2(2)}.
  double rho_budget = 1.0;
  double sigma = 0.2;
  double dt = 2e-3;
  double half_width = 400.0;
  std::size_t n_points = 8192;
  int fit_first = 4;
  int fit_last = 12;

  /// Throws std::invalid_argument when out of range.
  void validate() const;
  SpectralGrid grid() const;
};

struct RGSample {
  int n = 0;
  double t = 1.0;          // L^{2n}
  double rho = 0.0;        // ||g_n||_{H^2(2)}
  double distance = 0.0;   // ||u_n - f*_A||_{H^2(2)}
  double mass = 0.0;       // int u_n
  double linear_gain = 0.0;  // ||R_L abar(L^2)|| / ||g_n||, 0 when g_n = 0
  double deviation = 0.0;    // ||gamma(L^2)||_{H^2(2)}
  bool has_step = false;     // false for the last iterate
};

struct RGState {
  int n = 0;
  /// g_n = u_n - bbar^(n)(1) at local time 1.
  Field g;
  double eps = 0.0;
  double initial_l1xi1 = 0.0;
  std::vector<RGSample> series;
};

/// u(1) = bbar(1) + w. Throws DomainError if w is not mean-zero or exceeds
/// the rho budget.
RGState init_data(const RGConfig& cfg, const Field& w);

/// bbar^(n)(1) + g_n.
Field state_profile(const RGState& state, const RGConfig& cfg);

/// Background profile at time t; empty means zero background.
using Background = std::function<Field(double)>;

/// Integrates a_t = a_zz + (2 bg a + a^2)_z + eps P(bg + a) from t0 to t1 by
/// integrating-factor Heun steps. Mass is conserved to round-off since every
/// term is a z-derivative. Throws ConvergenceError on blow-up.
Field integrate_deviation(const Field& a0, double t0, double t1, double eps, Perturbation p,
                          double dt, const Background& background);

/// Deviation a at local time L^2.
Field evolve_deviation(const RGState& state, const RGConfig& cfg);
/// Full profile bbar^(n)(L^2) + a(L^2).
Field evolve_interval(const RGState& state, const RGConfig& cfg);

struct Decomposition {
  Field linear;     // abar(L^2) = e^{(L^2-1) Lap} g_n
  Field deviation;  // gamma(L^2) = a(L^2) - abar(L^2)
  double linear_gain = 0.0;
  double deviation_norm = 0.0;
};

Decomposition decompose(const RGState& state, const RGConfig& cfg, const Field& a_end);
Decomposition decompose(const RGState& state, const RGConfig& cfg);

/// One iterate: evolve, record diagnostics for step n, renormalize.
RGState rg_step(const RGState& state, const RGConfig& cfg);

struct ConvergenceReport {
  std::vector<RGSample> series;
  LineFit rho_fit;       // log rho against n log L
  LineFit distance_fit;  // log distance against log t
  double mass_drift = 0.0;
  double final_rho = 0.0;
  double initial_l1xi1 = 0.0;
};

ConvergenceReport run_mixing(const RGConfig& cfg, const Field& w);

/// 0.1 * d_x e^{-z^2/4} on the configured grid.
Field default_perturbation(const RGConfig& cfg);

}  // namespace diffmix
