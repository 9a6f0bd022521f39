#include "diffmix/colehopf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "diffmix/errors.hpp"
#include "diffmix/flows.hpp"

namespace diffmix {
namespace {

Field exp_of(const Field& f, double sign) {
  return map(f, [sign](double v) { return std::exp(sign * v); });
}

}  // namespace

void require_nonnegative(const Field& b, const char* what) {
  const double floor = -(1e-12 + 1e-10 * max_abs(b));
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < floor) {
      throw DomainError(std::string(what) + ": negative value " + std::to_string(b[i]) +
                        " at x = " + std::to_string(b.x(i)));
    }
  }
}

CHContext::CHContext(Field b)
    : b_(std::move(b)),
      cumulative_(Field::zeros(b_.grid())),
      weight_(Field::zeros(b_.grid())),
      inverse_weight_(Field::zeros(b_.grid())) {
  require_nonnegative(b_, "CHContext");
  cumulative_ = cumint(b_);
  weight_ = exp_of(cumulative_, 1.0);
  inverse_weight_ = exp_of(cumulative_, -1.0);
}

Field ch_forward(const Field& b) {
  require_nonnegative(b, "ch_forward");
  return exp_of(cumint(b), 1.0);
}

Field ch_inverse(const Field& h) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0)) throw DomainError("ch_inverse: h must be positive");
  }
  return divide(derivative_front(h), h);
}

Field dN(const CHContext& ctx, const Field& a0) {
  return multiply(ctx.weight(), cumint(a0));
}

Field dN_inv(const CHContext& ctx, const Field& h) {
  Field num = derivative_front(h) - multiply(ctx.b(), h);
  return multiply(num, ctx.inverse_weight());
}

Field commutator_S(const Field& b0, const Field& bt, const Field& a0, double t) {
  if (!(t > 1.0)) throw std::invalid_argument("commutator_S: t must exceed 1");
  const double s = t - 1.0;
  const CHContext c0(b0);
  const CHContext ct(bt);
  const Field n0 = dN(c0, a0);
  const Field g = heat_propagate(multiply(b0, n0), s);
  const Field k = heat_propagate(multiply(c0.weight(), a0), s);
  const Field h = heat_propagate(n0, s);
  const Field& b = ct.b();
  const Field bx = derivative(b, 1);
  const Field gx = derivative(g, 1);
  std::vector<double> v(b.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double bi = b[i];
    v[i] = (gx[i] - 2.0 * bi * g[i] - bi * k[i] - bx[i] * h[i] + bi * bi * h[i]) *
           ct.inverse_weight()[i];
  }
  return Field(b.grid(), std::move(v), t);
}

}  // namespace diffmix
