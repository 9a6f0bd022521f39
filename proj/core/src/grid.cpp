#include "diffmix/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "diffmix/errors.hpp"
#include "fft.hpp"
#include "special.hpp"

namespace diffmix {
namespace {

using detail::Spectrum;
using cplx = std::complex<double>;

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument(std::string(what) + ": fields live on different grids");
  }
}

double edge_amplitude(std::span<const double> v, double fraction) {
  const std::size_t n = v.size();
  const std::size_t band = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(n)));
  double edge = 0.0;
  for (std::size_t i = 0; i < band; ++i) {
    edge = std::max({edge, std::abs(v[i]), std::abs(v[n - 1 - i])});
  }
  return edge;
}

void check_tail(const Field& f, double tolerance, const char* op) {
  if (!(tolerance < kNoTailCheck)) return;
  const double tm = tail_mass(f);
  if (tm > tolerance) {
    std::ostringstream os;
    os << op << ": tail mass " << tm << " exceeds " << tolerance
       << " on [-" << f.grid().half_width() << ", " << f.grid().half_width() << ")";
    throw TruncationError(os.str());
  }
}

double reference_width(const SpectralGrid& g) {
  return detail::reference_width(g.dx(), g.half_width());
}

Spectrum spectrum_of(const Field& f) { return detail::rfft(f.values()); }

Field from_spectrum(const SpectralGrid& g, const Spectrum& s, double time) {
  return Field(g, detail::irfft(s, g.size()), time);
}

// Evaluates the trigonometric interpolant with half-complex coefficients `s`
// at points xs (grid coordinates).
std::vector<double> evaluate_interpolant(const SpectralGrid& g, const Spectrum& s,
                                         std::span<const double> xs) {
  const std::size_t n = g.size();
  const std::size_t half = n / 2;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> out(xs.size());
  for (std::size_t p = 0; p < xs.size(); ++p) {
    const double shifted = xs[p] + g.half_width();
    const double theta = g.dxi() * shifted;
    const cplx step(std::cos(theta), std::sin(theta));
    cplx phase = step;
    double acc = s[0].real();
    for (std::size_t j = 1; j < half; ++j) {
      acc += 2.0 * (s[j] * phase).real();
      phase *= step;
      if ((j & 63U) == 0) {  // renormalize the recurrence
        const double a = static_cast<double>(j + 1) * theta;
        phase = cplx(std::cos(a), std::sin(a));
      }
    }
    acc += s[half].real() * std::cos(static_cast<double>(half) * theta);
    out[p] = acc * inv_n;
  }
  return out;
}

}  // namespace

SpectralGrid::SpectralGrid(double half_width, std::size_t n_points)
    : half_width_(half_width), n_(n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("SpectralGrid: half width must be positive");
  }
  if (n_points < 16 || !std::has_single_bit(n_points)) {
    throw std::invalid_argument("SpectralGrid: N must be a power of two >= 16");
  }
}

double SpectralGrid::dxi() const noexcept { return std::numbers::pi / half_width_; }

std::vector<double> SpectralGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

SpectralGrid make_grid(double half_width, std::size_t n_points) {
  return SpectralGrid(half_width, n_points);
}

SpectralGrid widened(const SpectralGrid& base, std::size_t factor) {
  if (factor == 0 || !std::has_single_bit(factor)) {
    throw std::invalid_argument("widened: factor must be a power of two");
  }
  return SpectralGrid(base.half_width() * static_cast<double>(factor), base.size() * factor);
}

Field::Field(SpectralGrid grid, std::vector<double> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("Field: sample count does not match grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw NumericsError("Field: non-finite sample");
  }
}

Field Field::zeros(const SpectralGrid& grid, double time) {
  return Field(grid, std::vector<double>(grid.size(), 0.0), time);
}

Field Field::with_time(double t) const {
  Field copy = *this;
  copy.time_ = t;
  return copy;
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other, "operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other, "operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Field a, double s) { return a *= s; }
Field operator*(double s, Field a) { return a *= s; }

Field multiply(const Field& a, const Field& b) {
  require_same_grid(a, b, "multiply");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return Field(a.grid(), std::move(v), a.time());
}

Field divide(const Field& a, const Field& b) {
  require_same_grid(a, b, "divide");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(b[i]) < 1e-300) throw DomainError("divide: singular denominator");
    v[i] = a[i] / b[i];
  }
  return Field(a.grid(), std::move(v), a.time());
}

Field map(const Field& f, const std::function<double(double)>& fn) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(f[i]);
  return Field(f.grid(), std::move(v), f.time());
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_difference(const Field& a, const Field& b) {
  require_same_grid(a, b, "max_abs_difference");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double tail_mass(const Field& f) {
  const double peak = max_abs(f);
  if (peak == 0.0) return 0.0;
  return edge_amplitude(f.values(), 0.05) / peak;
}

double quadrature(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().dx();
}

Field derivative(const Field& f, int order, double tail_tolerance) {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative: order must be 1..4");
  check_tail(f, tail_tolerance, "derivative");
  const auto& g = f.grid();
  Spectrum s = spectrum_of(f);
  const std::size_t half = g.size() / 2;
  for (std::size_t j = 0; j <= half; ++j) {
    const cplx ik(0.0, g.wavenumber(j));
    cplx factor = 1.0;
    for (int k = 0; k < order; ++k) factor *= ik;
    s[j] *= factor;
  }
  // Odd derivatives of the Nyquist cosine vanish at the nodes.
  if (order % 2 == 1) s[half] = 0.0;
  return from_spectrum(g, s, f.time());
}

Field derivative_front(const Field& f, double tail_tolerance) {
  const auto& g = f.grid();
  const std::size_t n = g.size();
  const double left = f[0];
  const double jump = f[n - 1] - left;
  const double w = reference_width(g);
  std::vector<double> rest(n);
  for (std::size_t i = 0; i < n; ++i) rest[i] = f[i] - left - jump * detail::estar(g.node(i) / w);
  const double peak = max_abs(f);
  if (tail_tolerance < kNoTailCheck && peak > 0.0) {
    const double edge = edge_amplitude(rest, 0.05) / peak;
    if (edge > tail_tolerance) {
      throw TruncationError("derivative_front: field has not reached its end states (edge " +
                            std::to_string(edge) + ")");
    }
  }
  Field d = derivative(Field(g, std::move(rest), f.time()), 1, kNoTailCheck);
  std::vector<double> out(d.values().begin(), d.values().end());
  for (std::size_t i = 0; i < n; ++i) out[i] += jump * detail::estar_prime(g.node(i) / w) / w;
  return Field(g, std::move(out), f.time());
}

Field cumint(const Field& f, double tail_tolerance) {
  check_tail(f, tail_tolerance, "cumint");
  const auto& g = f.grid();
  const std::size_t n = g.size();
  const double mass = quadrature(f);
  const double w = reference_width(g);
  std::vector<double> rest(n);
  for (std::size_t i = 0; i < n; ++i) rest[i] = f[i] - mass * detail::estar_prime(g.node(i) / w) / w;
  Spectrum s = detail::rfft(rest);
  const std::size_t half = n / 2;
  s[0] = 0.0;
  s[half] = 0.0;
  for (std::size_t j = 1; j < half; ++j) s[j] /= cplx(0.0, g.wavenumber(j));
  std::vector<double> anti = detail::irfft(s, n);
  const double offset = anti[0];
  for (std::size_t i = 0; i < n; ++i) anti[i] += mass * detail::estar(g.node(i) / w) - offset;
  return Field(g, std::move(anti), f.time());
}

Field apply_multiplier(const Field& f, const std::function<double(double)>& symbol) {
  const auto& g = f.grid();
  Spectrum s = spectrum_of(f);
  for (std::size_t j = 0; j < s.size(); ++j) s[j] *= symbol(g.wavenumber(j));
  return from_spectrum(g, s, f.time());
}

std::vector<std::complex<double>> fourier_transform(const Field& f) {
  const auto& g = f.grid();
  const std::size_t n = g.size();
  const std::size_t half = n / 2;
  const Spectrum s = spectrum_of(f);
  std::vector<cplx> out(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const long j = static_cast<long>(idx) - static_cast<long>(half);
    const std::size_t aj = static_cast<std::size_t>(std::labs(j));
    cplx dft = (j >= 0) ? s[aj] : std::conj(s[aj]);
    const double xi = static_cast<double>(j) * g.dxi();
    out[idx] = g.dx() * std::polar(1.0, xi * g.half_width()) * dft;
  }
  return out;
}

double interpolate(const Field& f, double x) {
  const Spectrum s = spectrum_of(f);
  const double xs[1] = {x};
  return evaluate_interpolant(f.grid(), s, xs)[0];
}

Resampled resample_scaled(const Field& f, double scale, double tolerance) {
  return resample_scaled(f, scale, f.grid(), tolerance);
}

Resampled resample_scaled(const Field& f, double scale, const SpectralGrid& target, double tolerance) {
  if (!(scale > 0.0)) throw std::invalid_argument("resample_scaled: scale must be positive");
  const auto& src = f.grid();
  const std::size_t ns = src.size();
  const std::size_t nt = target.size();
  const double xs = src.half_width();
  const double peak = max_abs(f);

  // Portion of the source outside the window [-L X_t, L X_t) is dropped; if the
  // window reaches past the source domain the source edge becomes a jump.
  const double window = scale * target.half_width();
  double clipped = 0.0;
  for (std::size_t k = 0; k < ns; ++k) {
    const double x = src.node(k);
    if (x < -window || x >= window) clipped = std::max(clipped, std::abs(f[k]));
  }
  if (window > xs) clipped = std::max({clipped, std::abs(f[0]), std::abs(f[ns - 1])});
  if (peak > 0.0) clipped /= peak;
  if (clipped > tolerance) {
    throw ResolutionError("resample_scaled: clipped tail " + std::to_string(clipped) +
                          " exceeds tolerance");
  }

  std::vector<double> out(nt, 0.0);
  const double ratio = scale * target.dx() / src.dx();
  const double offset = (scale * target.node(0) + xs) / src.dx();
  const bool aligned = std::abs(ratio - std::round(ratio)) < 1e-9 &&
                       std::abs(offset - std::round(offset)) < 1e-9;
  if (aligned) {
    const long step = std::lround(ratio);
    const long first = std::lround(offset);
    for (std::size_t i = 0; i < nt; ++i) {
      const long k = first + step * static_cast<long>(i);
      if (k >= 0 && k < static_cast<long>(ns)) out[i] = scale * f[static_cast<std::size_t>(k)];
    }
  } else {
    std::vector<double> pts;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < nt; ++i) {
      const double x = scale * target.node(i);
      if (x >= -xs && x < xs) {
        pts.push_back(x);
        where.push_back(i);
      }
    }
    const Spectrum s = spectrum_of(f);
    const auto vals = evaluate_interpolant(src, s, pts);
    for (std::size_t p = 0; p < pts.size(); ++p) out[where[p]] = scale * vals[p];
  }

  Field result(target, std::move(out), f.time());
  const Spectrum rs = spectrum_of(result);
  double speak = 0.0, stail = 0.0;
  const std::size_t cutoff = static_cast<std::size_t>(0.9 * static_cast<double>(rs.size()));
  for (std::size_t j = 0; j < rs.size(); ++j) {
    const double a = std::abs(rs[j]);
    speak = std::max(speak, a);
    if (j >= cutoff) stail = std::max(stail, a);
  }
  return Resampled{std::move(result), clipped, speak > 0.0 ? stail / speak : 0.0};
}

namespace {

long alignment_offset(const SpectralGrid& small, const SpectralGrid& large, const char* op) {
  if (std::abs(small.dx() - large.dx()) > 1e-12 * small.dx()) {
    throw std::invalid_argument(std::string(op) + ": grids must share the node spacing");
  }
  const double off = (large.half_width() - small.half_width()) / small.dx();
  if (off < -1e-9 || std::abs(off - std::round(off)) > 1e-9) {
    throw std::invalid_argument(std::string(op) + ": grid nodes are not aligned");
  }
  return std::lround(off);
}

}  // namespace

Field embed(const Field& f, const SpectralGrid& larger) {
  const long off = alignment_offset(f.grid(), larger, "embed");
  std::vector<double> v(larger.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) v[static_cast<std::size_t>(off) + i] = f[i];
  return Field(larger, std::move(v), f.time());
}

Field restrict_to(const Field& f, const SpectralGrid& smaller) {
  const long off = alignment_offset(smaller, f.grid(), "restrict_to");
  std::vector<double> v(smaller.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[static_cast<std::size_t>(off) + i];
  return Field(smaller, std::move(v), f.time());
}

}  // namespace diffmix
