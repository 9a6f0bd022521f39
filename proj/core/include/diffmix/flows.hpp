#pragma once

// Heat flow, exact Burgers flow b_t = b_xx + (b^2)_x via Cole-Hopf, and the
// flow Phi_b of the linearization a_t = a_xx + 2 (a b)_x, both through the
// representation Phi_b(t-1) = (dN|_{b(t)})^{-1} e^{(t-1) Lap} dN|_{b(1)} and
// by direct time stepping.

#include <optional>
#include <vector>

#include "diffmix/grid.hpp"

namespace diffmix {

struct FlowResult {
  Field field;
  std::vector<Field> trajectory;
  double mass_before = 0.0;
  double mass_after = 0.0;
  double tail = 0.0;
};

/// e^{s Lap} f. Fields that tend to different constants at the two ends are
/// split into an error-function step (propagated exactly) and a decaying
/// remainder. Pass kNoTailCheck to treat f as genuinely periodic.
Field heat_propagate(const Field& f, double s, double tail_tolerance = kTailTolerance);

/// Burgers solution at time t from b0 at time 1 (b0 >= 0).
FlowResult burgers_flow(const Field& b0, double t);

/// Same, also recording the solution at each time in `snapshots`.
FlowResult burgers_flow(const Field& b0, double t, std::span<const double> snapshots);

/// Phi_b(t-1) g evaluated through the Cole-Hopf representation.
Field linflow_rep(const Field& b0, const Field& g, double t);

/// Largest step accepted by linflow_direct: 0.5 dx / max|b0|.
double linflow_step_bound(const Field& b0);

/// Phi_b(t-1) g by integrating-factor Heun steps of size dt (the last step
/// is shortened to land on t). b(s) is taken from the exact Burgers flow at
/// every stage. Throws std::invalid_argument when dt exceeds the step bound
/// and ConvergenceError when the solution blows up.
Field linflow_direct(const Field& b0, const Field& g, double t, double dt);

struct SmoothingRow {
  double elapsed = 0.0;  // t - 1
  /// (t-1)^{k/2} ||d_x^k Phi_b(t-1) a0||_{L^2}
  double derivative_gain = 0.0;
  /// (t-1)^{3/4} ||Phi_b(t-1) d_x a0||_{L^2}
  double interpolation_gain = 0.0;
};

SmoothingRow smoothing_row(const Field& b0, const Field& a0, int k, double elapsed);
std::vector<SmoothingRow> smoothing_probe(const Field& b0, const Field& a0, int k,
                                          std::span<const double> elapsed);

}  // namespace diffmix
