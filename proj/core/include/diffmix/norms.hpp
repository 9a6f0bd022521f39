#pragma once

#include <string>
#include <vector>

#include "diffmix/grid.hpp"

namespace diffmix {

struct NormReport {
  std::string name;
  double value = 0.0;
  /// True when the (weighted) integrand is not negligible at the grid edges.
  bool tail_flag = false;
};

/// ||(1+z^2) f||_{H^2}: weight first, then differentiate spectrally.
/// Throws TruncationError when the weighted field reaches the grid edges.
double h22_norm(const Field& f, double tail_tolerance = kTailTolerance);

/// int |f^(xi)| (1 + |xi|) dxi under the library Fourier convention.
double l1xi1_norm(const Field& f);

double l1_norm(const Field& f);
double l2_norm(const Field& f);
double linf_norm(const Field& f);

/// sqrt(sum_{k<=s} ||d^k f||_{L^2}^2) for integer 0 <= s <= 4.
double hs_norm(const Field& f, int s, double tail_tolerance = kTailTolerance);

/// L1, L2, Linf, H2, H2(2) and L1_xi(1), flagging tails instead of throwing.
std::vector<NormReport> all_norms(const Field& f);

}  // namespace diffmix
