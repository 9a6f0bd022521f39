#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace diffmix::detail {

using Spectrum = std::vector<std::complex<double>>;

// Real <-> half-complex transforms of length n backed by FFTW. Plans are
// cached per length; execution is reentrant.
//
// forward:  F_j = sum_k f_k e^{-2 pi i jk/n},  j = 0..n/2
// inverse:  f_k = (1/n) sum_j F_j e^{+2 pi i jk/n}  (normalized)
Spectrum rfft(std::span<const double> in);
void rfft(std::span<const double> in, std::span<std::complex<double>> out);
std::vector<double> irfft(std::span<const std::complex<double>> in, std::size_t n);
void irfft(std::span<const std::complex<double>> in, std::span<double> out);

}  // namespace diffmix::detail
