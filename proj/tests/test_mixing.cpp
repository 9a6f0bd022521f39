// RG driver for u_t = u_zz + (u^2)_z + eps P(u).

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "diffmix/errors.hpp"
#include "diffmix/mixing.hpp"
#include "diffmix/norms.hpp"
#include "diffmix/profiles.hpp"
#include "diffmix/renorm.hpp"
#include "support.hpp"

using namespace diffmix;

namespace {

// T0 = 16 keeps bbar(1) on the standard grid, so these runs are fast.
RGConfig small_config() {
  RGConfig cfg;
  cfg.params = BurgersParams::with_smallness(2.0, 0.5);
  cfg.half_width = 40.0;
  cfg.n_points = 1024;
  cfg.n_max = 6;
  cfg.fit_first = 2;
  cfg.fit_last = 6;
  return cfg;
}

}  // namespace

TEST_SUITE("mixing") {

TEST_CASE("configuration checks") {
  RGConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.scale = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.eps0 = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(parse_perturbation("cubic_flux") == Perturbation::cubic_flux);
  CHECK(to_string(Perturbation::quadratic_gradient) == "quadratic_gradient");
  CHECK_THROWS_AS(parse_perturbation("quartic"), std::invalid_argument);

  cfg = small_config();
  const Field massive = Field::sample(cfg.grid(), [](double z) { return std::exp(-z * z); });
  CHECK_THROWS_AS(init_data(cfg, massive), DomainError);
  CHECK_THROWS_AS(init_data(cfg, default_perturbation(cfg) * 100.0), DomainError);
}

TEST_CASE("initial data") {
  const RGConfig cfg = small_config();
  const Field w = default_perturbation(cfg);
  CHECK(max_abs_difference(w, diffmix::test::gaussian_derivative(cfg.grid()) * 0.1) <= 1e-15);
  const RGState s = init_data(cfg, w);
  CHECK(s.series.size() == 1);
  CHECK(std::abs(s.series[0].rho - h22_norm(w)) <= 1e-10);
  CHECK(std::abs(s.series[0].mass - 2.0) <= 1e-10);
}

TEST_CASE("exact branch stays exact") {
  RGConfig cfg = small_config();
  cfg.n_max = 10;
  const auto rep = run_mixing(cfg, Field::zeros(cfg.grid()));
  for (const auto& s : rep.series) {
    CAPTURE(s.n);
    CHECK(s.rho <= 1e-6);
    CHECK(std::abs(s.mass - 2.0) <= 1e-7);
    // distance to f* is the pure bbar term
    CHECK(std::abs(s.distance - grow_distance(cfg.params, s.t, cfg.grid())) <= 1e-6);
    if (s.has_step) CHECK(s.deviation <= 1e-6);
  }
}

TEST_CASE("self-similar data without a background") {
  const auto g = diffmix::test::standard_grid();
  const auto p = BurgersParams::from_amplitude(1.0);
  const Field u = integrate_deviation(f_star(p, g), 1.0, 4.0, 0.0, Perturbation::none, 2e-3, {});
  const Field exact = Field::sample(g, [](double z) { return 0.5 * f_star(1.0, 0.5 * z); });
  CHECK(max_abs_difference(u, exact) <= 1e-6);
}

TEST_CASE("mass is conserved for every perturbation") {
  for (auto pert : {Perturbation::none, Perturbation::cubic_flux, Perturbation::quadratic_gradient}) {
    RGConfig cfg = small_config();
    cfg.n_max = 4;
    cfg.fit_first = 1;
    cfg.fit_last = 4;
    cfg.perturbation = pert;
    cfg.eps0 = 0.1;
    const auto rep = run_mixing(cfg, default_perturbation(cfg));
    CAPTURE(to_string(pert));
    CHECK(rep.mass_drift <= 1e-8);
  }
}

TEST_CASE("time stepping is second order") {
  const RGConfig cfg = small_config();
  const auto g = cfg.grid();
  const Field a0 = default_perturbation(cfg);
  const Background bg = [&](double t) { return bbar(cfg.params, t, g); };
  auto run = [&](double dt) { return integrate_deviation(a0, 1.0, 4.0, 0.1, Perturbation::cubic_flux, dt, bg); };
  const Field u1 = run(8e-3), u2 = run(4e-3), u3 = run(2e-3);
  const double ratio = l2_norm(u1 - u2) / l2_norm(u2 - u3);
  CHECK(ratio >= 3.5);
}

TEST_CASE("background bookkeeping matches the closed form") {
  RGConfig cfg = small_config();
  cfg.n_max = 3;
  RGState s = init_data(cfg, default_perturbation(cfg));
  for (int k = 0; k < 3; ++k) {
    s = rg_step(s, cfg);
    const Field bg = state_profile(s, cfg) - s.g;
    CHECK(max_abs_difference(bg, bbar_n(cfg.params, 2.0, s.n, 1.0, cfg.grid())) <= 1e-10);
  }
}

TEST_CASE("perturbation strength scales like 1/L") {
  RGConfig cfg = small_config();
  cfg.perturbation = Perturbation::cubic_flux;
  cfg.eps0 = 0.1;
  RGState s = init_data(cfg, default_perturbation(cfg));
  for (int k = 0; k < 3; ++k) {
    const double before = s.eps;
    s = rg_step(s, cfg);
    CHECK(s.eps == doctest::Approx(before / 2.0).epsilon(1e-15));
  }
}

TEST_CASE("RG iterates equal one long lab-frame run followed by R_{L^n}") {
  RGConfig cfg = small_config();
  cfg.perturbation = Perturbation::cubic_flux;
  cfg.eps0 = 0.1;
  const auto base = cfg.grid();
  const Field w = default_perturbation(cfg);
  RGState s = init_data(cfg, w);
  const auto wide = widened(base, 8);
  Field lab = embed(w, wide);
  double t = 1.0;
  const Background bg = [&](double tt) { return bbar(cfg.params, tt, wide); };
  for (int n = 1; n <= 3; ++n) {
    s = rg_step(s, cfg);
    const double t_next = std::pow(4.0, n);
    lab = integrate_deviation(lab, t, t_next, cfg.eps0, cfg.perturbation, cfg.dt, bg);
    t = t_next;
    const std::size_t ln = std::size_t{1} << n;
    const Field expected = renormalize_onto(restrict_to(lab, widened(base, ln)), static_cast<double>(ln), base);
    CAPTURE(n);
    CHECK(h22_norm(s.g - expected, kNoTailCheck) <= 1e-4 * h22_norm(expected, kNoTailCheck));
  }
}

TEST_CASE("linear and deviation diagnostics") {
  RGConfig cfg = small_config();
  cfg.perturbation = Perturbation::cubic_flux;
  cfg.eps0 = 0.1;
  const auto rep = run_mixing(cfg, default_perturbation(cfg));

  // Heat contraction constant of the frozen corpus at L = 2.
  double c = 0.0;
  for (const auto& e : default_corpus(diffmix::test::standard_grid())) c = std::max(c, 2.0 * heat_contraction(e.g, 2));
  double first_dev = -1.0, last_dev = 0.0;
  for (const auto& s : rep.series) {
    if (!s.has_step) continue;
    CAPTURE(s.n);
    CHECK(s.linear_gain <= c / 2.0 * 1.5);
    if (first_dev < 0.0) first_dev = s.deviation;
    last_dev = s.deviation;
  }
  CHECK(last_dev < first_dev);
  CHECK(rep.final_rho < rep.series.front().rho);
}

}  // TEST_SUITE
