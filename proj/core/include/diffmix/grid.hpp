#pragma once

// Uniform truncated-line spectral grid and the real-valued Field sampled on it.
//
// The real line is replaced by the periodic interval [-X, X) with N nodes.
// Every profile handled by the library decays like a Gaussian, so the
// truncation is invisible as long as tail_mass() stays small; operations that
// would wrap mass around the periodic boundary check it and throw
// TruncationError above their tolerance.
//
// Fourier convention (fixed library-wide):
//   f^(xi) = int f(x) e^{-i xi x} dx  ~  dx * sum_k f(x_k) e^{-i xi x_k},
//   f(x)   = (1/2pi) int f^(xi) e^{i xi x} dxi,
// with wavenumbers xi_j = pi j / X, j = -N/2 .. N/2-1.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace diffmix {

/// Relative edge amplitude above which spectral operations refuse to run.
inline constexpr double kTailTolerance = 1e-6;
/// Pass as a tolerance to disable the edge check (genuinely periodic data).
inline constexpr double kNoTailCheck = std::numeric_limits<double>::infinity();

class SpectralGrid {
 public:
  /// Throws std::invalid_argument unless X > 0 and N is a power of two >= 16.
  SpectralGrid(double half_width, std::size_t n_points);

  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return 2.0 * half_width_ / static_cast<double>(n_); }
  double dxi() const noexcept;
  /// x_i = -X + i dx.
  double node(std::size_t i) const noexcept { return -half_width_ + static_cast<double>(i) * dx(); }
  std::vector<double> nodes() const;
  /// Wavenumber of entry j of a half-complex spectrum (j = 0..N/2).
  double wavenumber(std::size_t j) const noexcept { return static_cast<double>(j) * dxi(); }
  double nyquist() const noexcept { return wavenumber(n_ / 2); }

  friend bool operator==(const SpectralGrid&, const SpectralGrid&) = default;

 private:
  double half_width_;
  std::size_t n_;
};

SpectralGrid make_grid(double half_width, std::size_t n_points);

/// Grid with the same spacing as `base` but `factor` times wider; nodes of
/// `base` are a subset of its nodes. Used to evolve data that spreads.
SpectralGrid widened(const SpectralGrid& base, std::size_t factor);

class Field {
 public:
  /// Throws std::invalid_argument on a size mismatch and NumericsError on
  /// non-finite samples.
  Field(SpectralGrid grid, std::vector<double> values, double time = 1.0);

  static Field zeros(const SpectralGrid& grid, double time = 1.0);

  template <class Fn>
  static Field sample(const SpectralGrid& grid, Fn&& fn, double time = 1.0) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.node(i));
    return Field(grid, std::move(v), time);
  }

  const SpectralGrid& grid() const noexcept { return grid_; }
  double time() const noexcept { return time_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double x(std::size_t i) const noexcept { return grid_.node(i); }

  Field with_time(double t) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s) noexcept;

 private:
  SpectralGrid grid_;
  std::vector<double> values_;
  double time_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Field a, double s);
Field operator*(double s, Field a);
/// Pointwise product; grids must match.
Field multiply(const Field& a, const Field& b);
/// Pointwise quotient; throws DomainError where |b| underflows.
Field divide(const Field& a, const Field& b);
Field map(const Field& f, const std::function<double(double)>& fn);
double max_abs(const Field& f);
double max_abs_difference(const Field& a, const Field& b);

/// Max |f| over the outer 5% of nodes on each side, relative to max |f|.
double tail_mass(const Field& f);

/// Trapezoid sum dx * sum f_k (spectrally accurate for smooth decaying f).
double quadrature(const Field& f);

/// Spectral derivative of order 1..4 (multiplication by (i xi)^order).
Field derivative(const Field& f, int order, double tail_tolerance = kTailTolerance);

/// First derivative of a front: f tends to (possibly different) constants at
/// the two ends. A smooth error-function step carrying the jump is removed,
/// the decaying remainder is differentiated spectrally and the step's exact
/// derivative added back.
Field derivative_front(const Field& f, double tail_tolerance = kTailTolerance);

/// Cumulative integral int_{-X}^{x} f(y) dy, zero at the left node. The mass
/// is carried by an error function and the mean-zero remainder is integrated
/// spectrally, so the result is spectrally accurate rather than O(dx^2).
Field cumint(const Field& f, double tail_tolerance = kTailTolerance);

/// Multiplies the spectrum by an even real symbol m(|xi|).
Field apply_multiplier(const Field& f, const std::function<double(double)>& symbol);

/// Fourier transform under the library convention, ordered j = -N/2..N/2-1.
std::vector<std::complex<double>> fourier_transform(const Field& f);

/// Evaluates the trigonometric interpolant of f at an arbitrary x.
double interpolate(const Field& f, double x);

struct Resampled {
  Field field;
  /// Relative amplitude of source data that fell outside the target window
  /// (or sat on the source boundary inside it).
  double clipped = 0.0;
  /// Max spectral amplitude in the top 10% of wavenumbers relative to the
  /// spectral peak; large values indicate the compressed data is unresolved.
  double spectral_tail = 0.0;
};

/// R_L f(z) = L f(L z) on the same grid; |L z| >= X maps to zero.
/// Throws ResolutionError when clipped > tolerance.
Resampled resample_scaled(const Field& f, double scale, double tolerance = kTailTolerance);

/// R_L f evaluated on the nodes of `target`. When L is an integer and the
/// target nodes scaled by L land exactly on source nodes the values are
/// copied, otherwise the trigonometric interpolant is evaluated.
Resampled resample_scaled(const Field& f, double scale, const SpectralGrid& target,
                          double tolerance = kTailTolerance);

/// Zero-pads f onto a wider grid with the same spacing and aligned nodes.
Field embed(const Field& f, const SpectralGrid& larger);

/// Restricts f to a narrower grid with the same spacing and aligned nodes.
Field restrict_to(const Field& f, const SpectralGrid& smaller);

}  // namespace diffmix
