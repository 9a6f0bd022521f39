// Grid, derivatives, cumulative integral, quadrature and R_L resampling.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "diffmix/errors.hpp"
#include "diffmix/profiles.hpp"
#include "support.hpp"

using namespace diffmix;
using diffmix::test::gaussian;
using diffmix::test::standard_grid;

TEST_SUITE("grid") {

TEST_CASE("spacing and wavenumbers") {
  const auto g = standard_grid();
  CHECK(g.dx() == doctest::Approx(0.078125).epsilon(1e-15));
  CHECK(g.dxi() == doctest::Approx(std::numbers::pi / 40.0).epsilon(1e-15));
  CHECK(make_grid(std::numbers::pi, 16).nyquist() == doctest::Approx(8.0).epsilon(1e-15));
  CHECK_THROWS_AS(make_grid(40.0, 1000), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-1.0, 1024), std::invalid_argument);
}

TEST_CASE("derivative of band-limited and smooth data") {
  const auto p = make_grid(std::numbers::pi, 16);
  const Field s = Field::sample(p, [](double x) { return std::sin(x); });
  const Field c = Field::sample(p, [](double x) { return std::cos(x); });
  CHECK(max_abs_difference(derivative(s, 1, kNoTailCheck), c) <= 1e-12);

  const auto g = standard_grid();
  const Field one = Field::sample(g, [](double) { return 1.0; });
  CHECK(max_abs(derivative(one, 1, kNoTailCheck)) <= 1e-14);

  const Field d2 = derivative(gaussian(g), 2);
  CHECK(std::abs(d2[g.size() / 2] + 0.5) <= 1e-8);

  // d(d f) == d^2 f
  const Field once = derivative(derivative(gaussian(g), 1), 1);
  CHECK(max_abs_difference(once, d2) <= 1e-10 * max_abs(d2));
}

TEST_CASE("derivative refuses data that reaches the edge") {
  const auto g = standard_grid();
  CHECK_THROWS_AS(derivative(gaussian(g, 10.0), 1), TruncationError);
}

TEST_CASE("cumulative integral") {
  const auto g = standard_grid();
  const Field ep = Field::sample(g, [](double z) { return estar_prime(z); });
  const Field es = Field::sample(g, [](double z) { return estar(z); });
  const Field c = cumint(ep);
  CHECK(max_abs_difference(c, es) <= 1e-8);
  CHECK(std::abs(c[0]) <= 1e-14);

  for (double a : {1.0, std::exp(2.0) - 1.0}) {
    const Field f = f_star(BurgersParams::from_amplitude(a), g);
    const Field fi = cumint(f);
    CHECK(std::abs(fi[g.size() - 1] - std::log1p(a)) <= 1e-8);
  }
}

TEST_CASE("quadrature") {
  const auto g = standard_grid();
  CHECK(std::abs(quadrature(gaussian(g)) - std::sqrt(4.0 * std::numbers::pi)) <= 1e-8);
  const Field odd = Field::sample(g, [](double x) { return x * std::exp(-x * x); });
  CHECK(std::abs(quadrature(odd)) <= 1e-12);
  CHECK(std::abs(quadrature(f_star(BurgersParams::from_amplitude(1.0), g)) - std::log(2.0)) <= 1e-8);

  // Discrete fundamental theorem on a front.
  const Field front = Field::sample(g, [](double x) { return std::tanh(x / 3.0); });
  const double jump = front[g.size() - 1] - front[0];
  CHECK(std::abs(quadrature(derivative_front(front)) - jump) <= 1e-10);
}

TEST_CASE("Parseval under the library convention") {
  const auto g = standard_grid();
  const Field f = Field::sample(g, [](double x) { return (1.0 + x) * std::exp(-0.3 * x * x); });
  const auto fh = fourier_transform(f);
  double phys = 0.0, spec = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) phys += f[i] * f[i];
  for (const auto& v : fh) spec += std::norm(v);
  phys *= g.dx();
  spec /= 2.0 * g.half_width();
  CHECK(std::abs(phys - spec) <= 1e-10 * phys);
}

TEST_CASE("R_L resampling") {
  const auto g = standard_grid();
  const Field f = Field::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(max_abs_difference(resample_scaled(f, 1.0).field, f) == 0.0);

  const Field r2 = resample_scaled(f, 2.0).field;
  const Field exact = Field::sample(g, [](double z) { return 2.0 * std::exp(-4.0 * z * z); });
  CHECK(max_abs_difference(r2, exact) <= 1e-8);

  // d_z R_L f = L R_L d_x f
  const Field lhs = derivative(r2, 1);
  const Field rhs = resample_scaled(derivative(f, 1), 2.0).field * 2.0;
  CHECK(max_abs_difference(lhs, rhs) <= 1e-8);

  // R_{L1} R_{L2} = R_{L1 L2} on broad data (non-integer scales interpolate).
  const Field broad = gaussian(g, 2.0);
  const Field twice = resample_scaled(resample_scaled(broad, 1.5).field, 2.0).field;
  const Field direct = resample_scaled(broad, 3.0).field;
  CHECK(max_abs_difference(twice, direct) <= 1e-8);
}

TEST_CASE("widened grids embed and restrict exactly") {
  const auto g = standard_grid();
  const auto w = widened(g, 4);
  CHECK(w.dx() == doctest::Approx(g.dx()).epsilon(1e-15));
  CHECK(w.half_width() == doctest::Approx(160.0));
  const Field f = gaussian(g);
  CHECK(max_abs_difference(restrict_to(embed(f, w), g), f) == 0.0);
}

TEST_CASE("tail mass") {
  const auto g = standard_grid();
  CHECK(tail_mass(gaussian(g)) <= 1e-12);
  CHECK(tail_mass(Field::sample(g, [](double) { return 1.0; })) == doctest::Approx(1.0));
  CHECK(tail_mass(f_star(BurgersParams::from_amplitude(1.0), g)) <= 1e-10);
}

TEST_CASE("field arithmetic guards") {
  const auto g = standard_grid();
  CHECK_THROWS_AS(Field(g, std::vector<double>(10)), std::invalid_argument);
  CHECK_THROWS_AS(Field(g, std::vector<double>(g.size(), std::nan(""))), NumericsError);
  CHECK_THROWS_AS(gaussian(g) + gaussian(make_grid(20.0, 1024)), std::invalid_argument);
}

}  // TEST_SUITE
