#pragma once

// Closed-form profiles of the normalized viscous Burgers equation
//
//     b_t = b_xx + (b^2)_x,
//
// whose self-similar fixed point with mass log(1+A) is
//
//     f*_A(z) = A e_*'(z) / (1 + A e_*(z)),   z = x / sqrt(t).

#include "diffmix/grid.hpp"

namespace diffmix {

struct BurgersParams {
  /// A > 0; the phase offset is log(1+A).
  double amplitude = 1.0;
  /// T0 >= 1, time shift of the comparison profile bbar.
  double time_shift = 1.0;
  /// Dispersion coefficients of the wave train (alpha > 0, beta != 0).
  double alpha = 1.0;
  double beta = 1.0;
  /// Smallness scale in (0, 1); only meaningful after with_smallness().
  double delta = 0.5;

  double phase_offset() const;

  static BurgersParams from_amplitude(double amplitude);
  static BurgersParams from_phase_offset(double phi_d);
  /// phi_d with T0 = (phi_d / delta)^2.
  static BurgersParams with_smallness(double phi_d, double delta);

  /// Throws std::invalid_argument when any field is out of range.
  void validate() const;
};

/// T0 = (phi_d / delta)^2.
double select_time_shift(double phi_d, double delta);

/// Gaussian error function e_*(z) = (1/sqrt(4 pi)) int_{-inf}^z e^{-s^2/4} ds.
double estar(double z);
double estar_prime(double z);

double f_star(double amplitude, double z);
Field f_star(const BurgersParams& p, const SpectralGrid& grid);

/// b(t, x) = t^{-1/2} f*_A(x / sqrt(t)). Throws TruncationError if the
/// profile does not fit on the grid.
Field burgers_selfsimilar(const BurgersParams& p, double t, const SpectralGrid& grid);

/// bbar(t, x) = b(t - 1 + T0, x).
Field bbar(const BurgersParams& p, double t, const SpectralGrid& grid);

/// bbar^(n)(t, z) = L^n bbar(L^{2n} t, L^n z)
///               = L^n / sqrt(L^{2n} t + T0 - 1) f*_A(L^n z / sqrt(L^{2n} t + T0 - 1)),
/// evaluated in closed form for t in [1, L^2].
Field bbar_n(const BurgersParams& p, double scale, int n, double t, const SpectralGrid& grid,
             double tail_tolerance = kTailTolerance);

/// phi*_A(x) = (alpha/beta) log(1 + A e_*(x / sqrt(alpha t))).
Field phi_star(const BurgersParams& p, double t, const SpectralGrid& grid);

/// || sqrt(t) bbar(t, sqrt(t) z) - f*_A(z) ||_{H^2(2)}.
double grow_distance(const BurgersParams& p, double t, const SpectralGrid& grid);

/// Maps solutions of the normalized equation U_t = U_xx + (U^2)_x onto
/// u_t = alpha u_xx + beta (u^2)_x via u(t, x) = (sqrt(alpha)/beta) U(t, x/sqrt(alpha)).
struct RescalingAdapter {
  double alpha = 1.0;
  double beta = 1.0;

  double value_scale() const;
  double length_scale() const;
  /// Samples the lab-frame field from a normalized one (trigonometric
  /// interpolation; points mapping outside the source grid become zero).
  Field to_lab(const Field& normalized, const SpectralGrid& lab_grid) const;
};

}  // namespace diffmix
