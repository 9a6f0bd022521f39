// Cole-Hopf map, its linearization and the commutators with d_x.

#include <doctest.h>

#include <cmath>

#include "diffmix/colehopf.hpp"
#include "diffmix/errors.hpp"
#include "diffmix/flows.hpp"
#include "diffmix/norms.hpp"
#include "diffmix/profiles.hpp"
#include "diffmix/renorm.hpp"
#include "support.hpp"

using namespace diffmix;
using diffmix::test::gaussian;
using diffmix::test::gaussian_derivative;
using diffmix::test::rel_l2;
using diffmix::test::standard_grid;

TEST_SUITE("colehopf") {

TEST_CASE("forward map") {
  const auto g = standard_grid();
  CHECK(max_abs_difference(ch_forward(Field::zeros(g)), Field::sample(g, [](double) { return 1.0; })) == 0.0);
  for (double a : {1.0, std::exp(2.0) - 1.0}) {
    const Field h = ch_forward(f_star(BurgersParams::from_amplitude(a), g));
    const Field exact = Field::sample(g, [a](double z) { return 1.0 + a * estar(z); });
    CHECK(max_abs_difference(h, exact) <= 1e-8);
    CHECK(std::abs(h[g.size() - 1] - (1.0 + a)) <= 1e-8);
  }
}

TEST_CASE("inverse map") {
  const auto g = standard_grid();
  const Field f = f_star(BurgersParams::from_amplitude(1.0), g);
  CHECK(max_abs_difference(ch_inverse(ch_forward(f)), f) <= 1e-10);
  CHECK(max_abs(ch_inverse(Field::sample(g, [](double) { return 3.0; }))) <= 1e-14);
  const Field h = Field::sample(g, [](double z) { return 1.0 + estar(z); });
  CHECK(max_abs_difference(ch_inverse(h), f) <= 1e-8);
  CHECK_THROWS_AS(ch_inverse(Field::sample(g, [](double z) { return z; })), DomainError);
  CHECK_THROWS_AS(CHContext(Field::sample(g, [](double z) { return -std::exp(-z * z); })), DomainError);
}

TEST_CASE("linearization dN") {
  const auto g = standard_grid();
  const CHContext zero(Field::zeros(g));
  const Field ep = Field::sample(g, [](double z) { return estar_prime(z); });
  const Field es = Field::sample(g, [](double z) { return estar(z); });
  CHECK(max_abs_difference(dN(zero, ep), es) <= 1e-8);

  const CHContext c(f_star(BurgersParams::from_amplitude(1.0), g));
  const Field a0 = gaussian_derivative(g);
  CHECK(max_abs_difference(dN(c, a0 * 2.0), dN(c, a0) * 2.0) <= 1e-12);
  CHECK(std::abs(dN(c, a0)[g.size() - 1]) <= 1e-8);
  CHECK(max_abs_difference(dN_inv(c, dN(c, a0)), a0) <= 1e-9);
}

TEST_CASE("dN is the derivative of the forward map") {
  const auto g = standard_grid();
  const Field b = f_star(BurgersParams::from_amplitude(1.0), g);
  const Field a0 = gaussian_derivative(g);
  const double e = 1e-5;
  const Field fd = (ch_forward(b + a0 * e) - ch_forward(b - a0 * e)) * (0.5 / e);
  CHECK(max_abs_difference(fd, dN(CHContext(b), a0)) <= 1e-8);
}

TEST_CASE("inverse linearization") {
  const auto g = standard_grid();
  const CHContext zero(Field::zeros(g));
  const Field h = gaussian(g);
  CHECK(max_abs_difference(dN_inv(zero, h), derivative(h, 1)) <= 1e-12);

  // |dN^{-1} h|_1 <= C (|h_x|_1 + |h|_inf) with C <= e^{phi_d} + 1 on the corpus.
  for (double phi : {0.5, 2.0}) {
    const CHContext c(f_star(BurgersParams::from_phase_offset(phi), g));
    for (const auto& e : default_corpus(g)) {
      CAPTURE(e.id);
      const double ratio = l1_norm(dN_inv(c, e.g)) / (l1_norm(derivative(e.g, 1)) + linf_norm(e.g));
      CHECK(ratio <= std::exp(phi) + 1.0);
    }
  }
}

TEST_CASE("commutators with d_x") {
  const auto g = standard_grid();
  const Field b = f_star(BurgersParams::from_amplitude(1.0), g);
  const CHContext c(b);
  const Field a0 = gaussian_derivative(g);

  // [d_x, dN] a = b dN a
  const Field lhs1 = derivative_front(dN(c, a0)) - dN(c, derivative(a0, 1));
  CHECK(max_abs_difference(lhs1, multiply(b, dN(c, a0))) <= 1e-8);

  // [d_x, dN^{-1}] h = E^{-1} (-b h_x - b_x h + b^2 h)
  const Field h = gaussian(g, 1.5, 0.5);
  const Field lhs2 = derivative(dN_inv(c, h), 1) - dN_inv(c, derivative(h, 1));
  const Field hx = derivative(h, 1);
  const Field rhs2 = multiply(c.inverse_weight(), multiply(b, hx) * -1.0 - multiply(derivative(b, 1), h) +
                                                      multiply(multiply(b, b), h));
  CHECK(max_abs_difference(lhs2, rhs2) <= 1e-8);
}

TEST_CASE("commutator S with the linearized flow") {
  const auto g = standard_grid();
  const Field a0 = gaussian_derivative(g);
  CHECK(max_abs(commutator_S(Field::zeros(g), Field::zeros(g), a0, 2.0)) <= 1e-14);

  const Field b0 = f_star(BurgersParams::from_amplitude(1.0), g);
  const Field bt = burgers_flow(b0, 2.0).field;
  const Field s = commutator_S(b0, bt, a0, 2.0);
  const Field lhs = derivative(linflow_rep(b0, a0, 2.0), 1) - linflow_rep(b0, derivative(a0, 1), 2.0);
  CHECK(l2_norm(s - lhs) <= 1e-6);

  // No derivative of a0 enters: |S a0|_2 <= C |a0|_{L^2 cap L^1} with a modest C on the corpus.
  for (const auto& e : default_corpus(g)) {
    CAPTURE(e.id);
    const double ratio = l2_norm(commutator_S(b0, bt, e.g, 2.0)) / (l2_norm(e.g) + l1_norm(e.g));
    CHECK(std::isfinite(ratio));
    CHECK(ratio <= 10.0);
  }
}

TEST_CASE("Cole-Hopf diagrams commute") {
  const auto g = standard_grid();
  const Field b0 = f_star(BurgersParams::from_amplitude(std::exp(2.0) - 1.0), g);
  for (double t : {2.0, 5.0}) {
    const Field lhs = ch_forward(burgers_flow(b0, t).field);
    const Field rhs = heat_propagate(ch_forward(b0), t - 1.0);
    CHECK(max_abs_difference(lhs, rhs) <= 1e-8 * max_abs(rhs));
  }

  // dN at time t of the directly stepped linear flow equals heat flow of dN at time 1.
  const Field b1 = f_star(BurgersParams::from_amplitude(1.0), g);
  const Field a0 = gaussian_derivative(g);
  const Field a_t = linflow_direct(b1, a0, 2.0, 5e-4);
  const Field lhs = dN(CHContext(burgers_flow(b1, 2.0).field), a_t);
  const Field rhs = heat_propagate(dN(CHContext(b1), a0), 1.0);
  CHECK(rel_l2(lhs, rhs) <= 1e-7);
}

TEST_CASE("dN operator ratios do not grow in t") {
  const auto g = standard_grid();
  const Field b0 = f_star(BurgersParams::from_amplitude(1.0), g);
  const Field a0 = gaussian_derivative(g);
  // |d_x dN a|_p <= e^{phi}(1 + phi)(|a|_p + |a|_1) with phi = log 2
  double hi = 0.0;
  for (double t : {1.0, 2.0, 10.0}) {
    const CHContext c(burgers_flow(b0, t).field);
    const Field d = derivative(dN(c, a0), 1);
    for (double r : {l1_norm(d) / l1_norm(a0), linf_norm(d) / (linf_norm(a0) + l1_norm(a0))}) hi = std::max(hi, r);
  }
  CHECK(std::isfinite(hi));
  CHECK(hi <= 2.0 * (1.0 + std::log(2.0)));
}

}  // TEST_SUITE
