#pragma once

// Cole-Hopf map for b_t = b_xx + (b^2)_x:
//
//     h = N(b) = exp(int_{-X}^x b),   b = N^{-1}(h) = h_x / h,
//
// which sends Burgers solutions to heat solutions, and its linearization
//
//     dN|_b a = E I(a),   (dN|_b)^{-1} h = (h_x - b h) / E,
//
// with E = exp(int b) and I the cumulative integral.

#include "diffmix/grid.hpp"

namespace diffmix {

/// Snapshot b together with its cumulative integral and exp(+-int b).
/// Immutable after construction.
class CHContext {
 public:
  /// Throws DomainError when b is negative beyond round-off.
  explicit CHContext(Field b);

  const Field& b() const noexcept { return b_; }
  const Field& cumulative() const noexcept { return cumulative_; }
  /// E = exp(int b) >= 1.
  const Field& weight() const noexcept { return weight_; }
  const Field& inverse_weight() const noexcept { return inverse_weight_; }

 private:
  Field b_;
  Field cumulative_;
  Field weight_;
  Field inverse_weight_;
};

/// Throws DomainError unless b >= -(1e-12 + 1e-10 max|b|) at every node.
void require_nonnegative(const Field& b, const char* what);

Field ch_forward(const Field& b);
/// h_x / h; h may be a front. Throws DomainError when h <= 0 somewhere.
Field ch_inverse(const Field& h);

Field dN(const CHContext& ctx, const Field& a0);
Field dN_inv(const CHContext& ctx, const Field& h);

/// S a0 = d_x Phi_b(t-1) a0 - Phi_b(t-1) d_x a0 for snapshots b0 = b(1) and
/// bt = b(t) of one Burgers flow. With s = t-1, G = e^{s Lap}(b0 dN0 a0),
/// K = e^{s Lap}(E0 a0) and H = e^{s Lap} dN0 a0,
///
///     S a0 = E_t^{-1} [ G_x - 2 bt G - bt K - bt_x H + bt^2 H ],
///
/// which involves no derivative of a0.
Field commutator_S(const Field& b0, const Field& bt, const Field& a0, double t);

}  // namespace diffmix
