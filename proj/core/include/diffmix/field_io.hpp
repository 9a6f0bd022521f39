#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>

#include "diffmix/grid.hpp"

namespace diffmix {

/// %.17g, the precision every CSV writer uses.
std::string format_number(double v);

/// Writes `# X=..,N=..,t=..[,extra]` followed by `x,value` rows.
/// Values are printed with 17 significant digits, so a read_field_csv round
/// trip is exact.
void write_field_csv(std::ostream& os, const Field& f, const std::string& extra_header = {});

/// Same header with `x,re,im` rows.
void write_complex_csv(std::ostream& os, const SpectralGrid& grid, double time,
                       std::span<const std::complex<double>> values,
                       const std::string& extra_header = {});

/// Parses a file produced by write_field_csv. Throws std::runtime_error on a
/// malformed header or row count mismatch.
Field read_field_csv(std::istream& is);

}  // namespace diffmix
