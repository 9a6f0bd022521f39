#include "diffmix/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "diffmix/colehopf.hpp"
#include "diffmix/errors.hpp"
#include "diffmix/norms.hpp"
#include "fft.hpp"
#include "special.hpp"

namespace diffmix {
namespace {

using cplx = std::complex<double>;

Field heat_periodic(const Field& f, double s) {
  return apply_multiplier(f, [s](double xi) { return std::exp(-xi * xi * s); });
}

// Burgers state at elapsed time s from the Cole-Hopf derivative h_x(1) = b0 E0.
// h_x stays decaying, so the whole computation avoids fronts.
struct BurgersState {
  Field hx;
  Field h;
  Field b;
};

BurgersState burgers_state(const Field& hx1, double s) {
  Field hx = heat_propagate(hx1, s);
  Field h = map(cumint(hx), [](double v) { return 1.0 + v; });
  Field b = divide(hx, h);
  return {std::move(hx), std::move(h), std::move(b)};
}

Field initial_hx(const Field& b0) {
  const CHContext c0(b0);
  return multiply(b0, c0.weight());
}

}  // namespace

Field heat_propagate(const Field& f, double s, double tail_tolerance) {
  if (!(s >= 0.0)) throw std::invalid_argument("heat_propagate: elapsed time must be >= 0");
  if (s == 0.0) return f;
  if (!(tail_tolerance < kNoTailCheck)) return heat_periodic(f, s).with_time(f.time() + s);

  const auto& g = f.grid();
  const std::size_t n = g.size();
  const double left = f[0];
  const double jump = f[n - 1] - left;
  const double w = detail::reference_width(g.dx(), g.half_width());
  std::vector<double> rest(n);
  for (std::size_t i = 0; i < n; ++i) rest[i] = f[i] - left - jump * detail::estar(g.node(i) / w);
  const double peak = max_abs(f);
  Field r(g, std::move(rest), f.time());
  if (peak > 0.0 && tail_mass(r) * max_abs(r) > tail_tolerance * peak) {
    throw TruncationError("heat_propagate: input reaches the grid edge");
  }
  Field hr = heat_periodic(r, s);
  if (peak > 0.0 && tail_mass(hr) * max_abs(hr) > tail_tolerance * peak) {
    throw TruncationError("heat_propagate: solution spreads past the grid edge after s = " +
                          std::to_string(s));
  }
  const double ws = std::sqrt(w * w + s);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = hr[i] + left + jump * detail::estar(g.node(i) / ws);
  return Field(g, std::move(out), f.time() + s);
}

FlowResult burgers_flow(const Field& b0, double t) {
  return burgers_flow(b0, t, {});
}

FlowResult burgers_flow(const Field& b0, double t, std::span<const double> snapshots) {
  if (!(t >= 1.0)) throw std::invalid_argument("burgers_flow: t must be >= 1");
  const Field hx1 = initial_hx(b0);
  FlowResult out{burgers_state(hx1, t - 1.0).b.with_time(t), {}, quadrature(b0), 0.0, 0.0};
  out.mass_after = quadrature(out.field);
  out.tail = tail_mass(out.field);
  for (double ts : snapshots) {
    if (!(ts >= 1.0)) throw std::invalid_argument("burgers_flow: snapshot times must be >= 1");
    out.trajectory.push_back(burgers_state(hx1, ts - 1.0).b.with_time(ts));
  }
  return out;
}

Field linflow_rep(const Field& b0, const Field& g, double t) {
  if (!(t >= 1.0)) throw std::invalid_argument("linflow_rep: t must be >= 1");
  const double s = t - 1.0;
  const CHContext c0(b0);
  const Field& e0 = c0.weight();
  // d_x dN0 g = b0 E0 I(g) + E0 g decays even when g carries mass.
  const Field kx1 = multiply(multiply(b0, e0), cumint(g)) + multiply(e0, g);
  const Field kx = heat_propagate(kx1, s);
  const Field k = cumint(kx);
  const BurgersState st = burgers_state(multiply(b0, e0), s);
  Field num = kx - multiply(st.b, k);
  return divide(num, st.h).with_time(t);
}

double linflow_step_bound(const Field& b0) {
  const double m = max_abs(b0);
  return m > 0.0 ? 0.5 * b0.grid().dx() / m : std::numeric_limits<double>::infinity();
}

Field linflow_direct(const Field& b0, const Field& g, double t, double dt) {
  if (!(t >= 1.0)) throw std::invalid_argument("linflow_direct: t must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("linflow_direct: dt must be positive");
  if (dt > linflow_step_bound(b0)) {
    throw std::invalid_argument("linflow_direct: dt exceeds 0.5 dx / max|b0|");
  }
  if (tail_mass(g) > kTailTolerance) throw TruncationError("linflow_direct: g reaches the grid edge");

  const auto& grid = g.grid();
  const std::size_t n = grid.size();
  const std::size_t half = n / 2;
  const Field hx1 = initial_hx(b0);
  const double limit = 1e6 * std::max(1.0, max_abs(g));

  std::vector<double> a(g.values().begin(), g.values().end());
  std::vector<double> work(n);
  detail::Spectrum spec(half + 1), k1(half + 1), k2(half + 1), stage(half + 1);

  // k = i xi FFT(2 a b)
  auto advect = [&](std::span<const double> av, const Field& b, detail::Spectrum& out) {
    for (std::size_t i = 0; i < n; ++i) work[i] = 2.0 * av[i] * b[i];
    detail::rfft(work, out);
    for (std::size_t j = 0; j < half; ++j) out[j] *= cplx(0.0, grid.wavenumber(j));
    out[half] = 0.0;
  };

  double now = 1.0;
  Field b_now = b0;
  while (now < t - 1e-12) {
    const double h = std::min(dt, t - now);
    const Field b_next = burgers_state(hx1, now + h - 1.0).b;
    detail::rfft(a, spec);
    advect(a, b_now, k1);
    for (std::size_t j = 0; j <= half; ++j) {
      const double xi = grid.wavenumber(j);
      const double decay = std::exp(-xi * xi * h);
      stage[j] = decay * (spec[j] + h * k1[j]);
      spec[j] = decay * (spec[j] + 0.5 * h * k1[j]);
    }
    detail::irfft(stage, work);
    std::vector<double> a_star(work);
    advect(a_star, b_next, k2);
    for (std::size_t j = 0; j <= half; ++j) spec[j] += 0.5 * h * k2[j];
    detail::irfft(spec, a);
    for (double v : a) {
      if (!std::isfinite(v) || std::abs(v) > limit) {
        throw ConvergenceError("linflow_direct: solution blew up; reduce dt");
      }
    }
    now += h;
    b_now = b_next;
  }
  return Field(grid, std::move(a), t);
}

SmoothingRow smoothing_row(const Field& b0, const Field& a0, int k, double elapsed) {
  if (k < 0 || k > 4) throw std::invalid_argument("smoothing_row: k must be 0..4");
  if (!(elapsed > 0.0)) throw std::invalid_argument("smoothing_row: elapsed time must be positive");
  const double t = 1.0 + elapsed;
  const Field flowed = linflow_rep(b0, a0, t);
  const Field dk = k == 0 ? flowed : derivative(flowed, k);
  const Field of_derivative = linflow_rep(b0, derivative(a0, 1), t);
  return {elapsed, std::pow(elapsed, 0.5 * k) * l2_norm(dk),
          std::pow(elapsed, 0.75) * l2_norm(of_derivative)};
}

std::vector<SmoothingRow> smoothing_probe(const Field& b0, const Field& a0, int k,
                                          std::span<const double> elapsed) {
  std::vector<SmoothingRow> rows;
  rows.reserve(elapsed.size());
  for (double e : elapsed) rows.push_back(smoothing_row(b0, a0, k, e));
  return rows;
}

}  // namespace diffmix
