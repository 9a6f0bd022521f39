#include "diffmix/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "diffmix/errors.hpp"

namespace diffmix {
namespace {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Fourier differentiation matrix on an odd number of equispaced points.
MatrixXd differentiation_matrix(int p) {
  MatrixXd d = MatrixXd::Zero(p, p);
  const double h = 2.0 * std::numbers::pi / p;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = 0.5 * sign / std::sin(0.5 * (i - j) * h);
    }
  }
  return d;
}

double theta(int l, int p) { return 2.0 * std::numbers::pi * l / p; }

VectorXd column_state(const MatrixXd& values, int l) { return values.col(l); }

// Collocation residual, flattened component-major.
VectorXd profile_residual(const RDSystem& sys, double k, double omega, const MatrixXd& u,
                          const MatrixXd& d1, const MatrixXd& d2) {
  const int d = sys.dimension();
  const int p = static_cast<int>(u.cols());
  const MatrixXd uxx = u * d2.transpose();
  const MatrixXd ux = u * d1.transpose();
  MatrixXd r = k * k * sys.diffusion * uxx + omega * ux;
  for (int l = 0; l < p; ++l) r.col(l) += sys.reaction(column_state(u, l));
  VectorXd flat(d * p);
  for (int c = 0; c < d; ++c) flat.segment(c * p, p) = r.row(c).transpose();
  return flat;
}

MatrixXd profile_jacobian(const RDSystem& sys, double k, double omega, const MatrixXd& u,
                          const MatrixXd& d1, const MatrixXd& d2) {
  const int d = sys.dimension();
  const int p = static_cast<int>(u.cols());
  MatrixXd jac = MatrixXd::Zero(d * p, d * p);
  for (int c = 0; c < d; ++c) {
    for (int e = 0; e < d; ++e) {
      jac.block(c * p, e * p, p, p) = k * k * sys.diffusion(c, e) * d2;
      if (c == e) jac.block(c * p, e * p, p, p) += omega * d1;
    }
  }
  for (int l = 0; l < p; ++l) {
    const MatrixXd fj = sys.jacobian(column_state(u, l));
    for (int c = 0; c < d; ++c) {
      for (int e = 0; e < d; ++e) jac(c * p + l, e * p + l) += fj(c, e);
    }
  }
  return jac;
}

double discrete_l2(const VectorXd& r, int p) { return std::sqrt(r.squaredNorm() / p); }

// Fourier coefficient matrices F_q of f'(u0(theta)), |q| <= 2M, from an
// oversampled evaluation of the trigonometric interpolant of u0.
std::vector<MatrixXcd> jacobian_coefficients(const WaveTrain& wt, const RDSystem& sys) {
  const int d = sys.dimension();
  const int m = wt.modes;
  const int q_pts = 3 * wt.points();
  const MatrixXcd c = wt.coefficients();
  std::vector<MatrixXcd> f(4 * m + 1, MatrixXcd::Zero(d, d));
  for (int l = 0; l < q_pts; ++l) {
    const double th = theta(l, q_pts);
    VectorXd u = VectorXd::Zero(d);
    for (int n = -m; n <= m; ++n) u += (c.col(n + m) * std::polar(1.0, n * th)).real();
    const MatrixXd fj = sys.jacobian(u);
    for (int q = -2 * m; q <= 2 * m; ++q) {
      f[q + 2 * m] += fj.cast<cplx>() * std::polar(1.0 / q_pts, -q * th);
    }
  }
  return f;
}

std::vector<cplx> sorted_eigenvalues(const MatrixXcd& a) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(a, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigencurves: eigen-decomposition failed");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
  });
  return ev;
}

}  // namespace

void RDSystem::validate() const {
  if (diffusion.rows() == 0 || diffusion.rows() != diffusion.cols()) {
    throw std::invalid_argument("RDSystem: diffusion matrix must be square");
  }
  if ((diffusion - diffusion.transpose()).norm() > 1e-14 * (1.0 + diffusion.norm())) {
    throw std::invalid_argument("RDSystem: diffusion matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(diffusion);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("RDSystem: diffusion matrix must be positive definite");
  }
  if (!reaction || !jacobian) throw std::invalid_argument("RDSystem: reaction terms missing");
}

RDSystem RDSystem::lambda_omega(double q, double omega0) {
  RDSystem s;
  s.name = "lambda-omega";
  s.diffusion = MatrixXd::Identity(2, 2);
  s.reaction = [q, omega0](const VectorXd& u) {
    const double r2 = u.squaredNorm();
    const double lam = 1.0 - r2;
    const double om = omega0 - q * r2;
    VectorXd f(2);
    f(0) = lam * u(0) + om * u(1);
    f(1) = lam * u(1) - om * u(0);
    return f;
  };
  s.jacobian = [q, omega0](const VectorXd& u) {
    const double r2 = u.squaredNorm();
    const double lam = 1.0 - r2;
    const double om = omega0 - q * r2;
    MatrixXd j(2, 2);
    // d/du [lam u - om J u], J u = (-u1, u0)
    j(0, 0) = lam - 2.0 * u(0) * u(0) - 2.0 * q * u(0) * u(1);
    j(0, 1) = -2.0 * u(0) * u(1) + om - 2.0 * q * u(1) * u(1);
    j(1, 0) = -2.0 * u(1) * u(0) - om + 2.0 * q * u(0) * u(0);
    j(1, 1) = lam - 2.0 * u(1) * u(1) + 2.0 * q * u(0) * u(1);
    return j;
  };
  return s;
}

MatrixXcd WaveTrain::coefficients() const {
  const int d = static_cast<int>(values.rows());
  const int p = points();
  MatrixXcd c = MatrixXcd::Zero(d, p);
  for (int m = -modes; m <= modes; ++m) {
    for (int l = 0; l < p; ++l) {
      c.col(m + modes) += values.col(l).cast<cplx>() * std::polar(1.0 / p, -m * theta(l, p));
    }
  }
  return c;
}

MatrixXd WaveTrain::derivative() const {
  return values * differentiation_matrix(points()).transpose();
}

WaveTrain lambda_omega_ansatz(double q, double omega0, double k, int modes) {
  if (modes < 1) throw std::invalid_argument("lambda_omega_ansatz: M must be >= 1");
  if (!(std::abs(k) < 1.0)) throw std::invalid_argument("lambda_omega_ansatz: need |k| < 1");
  WaveTrain wt;
  wt.k = k;
  wt.modes = modes;
  const double r0 = std::sqrt(1.0 - k * k);
  wt.omega = omega0 - q * r0 * r0;
  const int p = wt.points();
  wt.values.resize(2, p);
  for (int l = 0; l < p; ++l) {
    wt.values(0, l) = r0 * std::cos(theta(l, p));
    wt.values(1, l) = r0 * std::sin(theta(l, p));
  }
  return wt;
}

double wavetrain_residual(const RDSystem& sys, const WaveTrain& wt) {
  const MatrixXd d1 = differentiation_matrix(wt.points());
  return discrete_l2(profile_residual(sys, wt.k, wt.omega, wt.values, d1, d1 * d1), wt.points());
}

WaveTrain solve_wavetrain(const RDSystem& sys, double k, const WaveTrain& guess, NewtonOptions opt) {
  sys.validate();
  if (guess.values.rows() != sys.dimension()) throw std::invalid_argument("solve_wavetrain: guess has wrong dimension");
  const int p = guess.points();
  const int d = sys.dimension();
  const int n = d * p;
  const MatrixXd d1 = differentiation_matrix(p);
  const MatrixXd d2 = d1 * d1;

  MatrixXd u = guess.values;
  double omega = guess.omega;
  const MatrixXd ref = guess.values;
  const MatrixXd ref_dtheta = ref * d1.transpose();
  VectorXd phase_row(n);
  for (int c = 0; c < d; ++c) phase_row.segment(c * p, p) = ref_dtheta.row(c).transpose();

  WaveTrain out = guess;
  out.k = k;
  out.residual_history.clear();
  for (int it = 0;; ++it) {
    const VectorXd r = profile_residual(sys, k, omega, u, d1, d2);
    const double res = discrete_l2(r, p);
    out.residual_history.push_back(res);
    if (res <= opt.tolerance) {
      out.iterations = it;
      break;
    }
    if (it >= opt.max_iterations || !std::isfinite(res)) {
      if (res <= 1e-10) {
        out.iterations = it;
        break;
      }
      throw ConvergenceError("solve_wavetrain: Newton did not converge (residual " + std::to_string(res) + ")");
    }
    MatrixXd jac = MatrixXd::Zero(n + 1, n + 1);
    jac.topLeftCorner(n, n) = profile_jacobian(sys, k, omega, u, d1, d2);
    const MatrixXd ux = u * d1.transpose();
    for (int c = 0; c < d; ++c) jac.block(c * p, n, p, 1) = ux.row(c).transpose();
    jac.block(n, 0, 1, n) = phase_row.transpose();
    VectorXd rhs(n + 1);
    rhs.head(n) = r;
    double phase = 0.0;
    for (int c = 0; c < d; ++c) phase += (u.row(c) - ref.row(c)).dot(ref_dtheta.row(c));
    rhs(n) = phase;
    Eigen::FullPivLU<MatrixXd> lu(jac);
    if (!lu.isInvertible()) throw ConvergenceError("solve_wavetrain: singular Newton matrix");
    const VectorXd step = lu.solve(rhs);
    for (int c = 0; c < d; ++c) u.row(c) -= step.segment(c * p, p).transpose();
    omega -= step(n);
  }
  out.values = u;
  out.omega = omega;
  out.residual = out.residual_history.back();
  if (!(out.residual <= 1e-10)) throw ConvergenceError("solve_wavetrain: residual above 1e-10");
  return out;
}

KernelCheck translation_kernel_check(const RDSystem& sys, const WaveTrain& wt) {
  const int p = wt.points();
  const int d = sys.dimension();
  const int n = d * p;
  const MatrixXd d1 = differentiation_matrix(p);
  const MatrixXd block = profile_jacobian(sys, wt.k, wt.omega, wt.values, d1, d1 * d1);
  MatrixXd bordered = MatrixXd::Zero(n + 1, n + 1);
  bordered.topLeftCorner(n, n) = block;
  const MatrixXd ux = wt.values * d1.transpose();
  for (int c = 0; c < d; ++c) {
    bordered.block(c * p, n, p, 1) = ux.row(c).transpose();
    bordered.block(n, c * p, 1, p) = ux.row(c);
  }
  Eigen::JacobiSVD<MatrixXd> s1(bordered), s0(block);
  return {s1.singularValues().minCoeff(), s0.singularValues().minCoeff()};
}

MatrixXcd bloch_operator(const WaveTrain& wt, const RDSystem& sys, double xi) {
  const int d = sys.dimension();
  const int m = wt.modes;
  const int p = wt.points();
  const auto f = jacobian_coefficients(wt, sys);
  MatrixXcd a = MatrixXcd::Zero(d * p, d * p);
  const double k = wt.k;
  for (int i = -m; i <= m; ++i) {
    const double wave = k * i + xi;
    cplx shift(0.0, wt.omega * i);
    if (k != 0.0) shift += cplx(0.0, wt.omega * xi / k);
    for (int c = 0; c < d; ++c) {
      for (int e = 0; e < d; ++e) {
        cplx v = -sys.diffusion(c, e) * wave * wave;
        if (c == e) v += shift;
        a(c * p + i + m, e * p + i + m) += v;
      }
    }
    for (int j = -m; j <= m; ++j) {
      const MatrixXcd& fq = f[i - j + 2 * m];
      for (int c = 0; c < d; ++c) {
        for (int e = 0; e < d; ++e) a(c * p + i + m, e * p + j + m) += fq(c, e);
      }
    }
  }
  return a;
}

std::vector<double> symmetric_xi_grid(double half_range, int points) {
  if (points < 3 || points % 2 == 0) throw std::invalid_argument("symmetric_xi_grid: need an odd count >= 3");
  std::vector<double> xi(points);
  const int h = points / 2;
  for (int i = 0; i < points; ++i) xi[i] = half_range * static_cast<double>(i - h) / h;
  xi[h] = 0.0;
  return xi;
}

EigenCurveSet eigencurves(const WaveTrain& wt, const RDSystem& sys, std::span<const double> xi, unsigned threads) {
  if (xi.empty()) throw std::invalid_argument("eigencurves: empty xi grid");
  EigenCurveSet out;
  out.xi.assign(xi.begin(), xi.end());
  const std::size_t nx = xi.size();
  std::vector<std::vector<cplx>> spectra(nx);

  const unsigned workers = std::max(1U, threads == 0 ? std::thread::hardware_concurrency() : threads);
  auto run = [&](std::size_t begin) {
    for (std::size_t i = begin; i < nx; i += workers) spectra[i] = sorted_eigenvalues(bloch_operator(wt, sys, xi[i]));
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, run, w));
    for (auto& j : jobs) j.get();
  }

  // Start from the xi closest to zero; put the eigenvalue nearest 0 first.
  std::size_t c0 = 0;
  for (std::size_t i = 1; i < nx; ++i) if (std::abs(xi[i]) < std::abs(xi[c0])) c0 = i;
  out.center = c0;
  std::vector<cplx> start = spectra[c0];
  const auto zero_it = std::min_element(start.begin(), start.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  std::rotate(start.begin(), zero_it, zero_it + 1);
  const std::size_t ncurves = start.size();
  out.curves.assign(ncurves, std::vector<cplx>(nx));
  for (std::size_t j = 0; j < ncurves; ++j) out.curves[j][c0] = start[j];

  auto sweep = [&](long dir) {
    double slope = 0.0;
    for (long i = static_cast<long>(c0) + dir; i >= 0 && i < static_cast<long>(nx); i += dir) {
      const std::size_t prev = static_cast<std::size_t>(i - dir);
      const std::size_t cur = static_cast<std::size_t>(i);
      const double step = std::abs(xi[cur] - xi[prev]);
      const double threshold = 10.0 * step * std::max(slope, 1.0);
      std::vector<bool> used(ncurves, false);
      bool ambiguous = false;
      double max_move = 0.0;
      for (std::size_t j = 0; j < ncurves; ++j) {
        const cplx last = out.curves[j][prev];
        std::size_t best = ncurves;
        double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
        for (std::size_t e = 0; e < ncurves; ++e) {
          if (used[e]) continue;
          const double dist = std::abs(spectra[cur][e] - last);
          if (dist < d1) {
            d2 = d1;
            d1 = dist;
            best = e;
          } else if (dist < d2) {
            d2 = dist;
          }
        }
        used[best] = true;
        out.curves[j][cur] = spectra[cur][best];
        max_move = std::max(max_move, d1);
        // Only the curves near the imaginary axis matter for the report.
        if (last.real() > -10.0 && (d1 > threshold || (d2 < threshold && d2 - d1 < 1e-3 * threshold))) ambiguous = true;
      }
      slope = max_move / step;
      if (ambiguous) out.ambiguous.push_back(cur);
    }
  };
  sweep(+1);
  sweep(-1);
  std::sort(out.ambiguous.begin(), out.ambiguous.end());
  return out;
}

QuadraticFit fit_principal_curve(const EigenCurveSet& c, double window) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < c.xi.size(); ++i) {
    if (std::abs(c.xi[i]) <= window + 1e-15) {
      xs.push_back(c.xi[i]);
      ys.push_back(c.curves[0][i].real());
    }
  }
  const int cols = xs.size() >= 5 ? 3 : 2;
  if (static_cast<int>(xs.size()) < cols + 1) throw std::invalid_argument("fit_principal_curve: too few points in window");
  MatrixXd a(xs.size(), cols);
  VectorXd b(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x2 = xs[i] * xs[i];
    a(i, 0) = 1.0;
    a(i, 1) = x2;
    if (cols == 3) a(i, 2) = x2 * x2;
    b(i) = ys[i];
  }
  const VectorXd sol = a.colPivHouseholderQr().solve(b);
  return {sol(0), sol(1), cols == 3 ? sol(2) : 0.0};
}

SpectralStabilityReport spectral_stability_report(const EigenCurveSet& c, double fit_window) {
  SpectralStabilityReport r;
  const std::size_t c0 = c.center;
  r.lambda1_at_zero = std::abs(c.curves[0][c0]);
  double next = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < c.curves.size(); ++j) next = std::min(next, std::abs(c.curves[j][c0]));
  r.simple_zero = r.lambda1_at_zero <= 1e-8 && next > 1e-6;

  const QuadraticFit fit = fit_principal_curve(c, fit_window);
  r.lambda1_second_derivative = 2.0 * fit.a2;
  r.alpha = -fit.a2;
  r.alpha0 = 0.5 * r.alpha;

  r.max_re_lambda1 = -std::numeric_limits<double>::infinity();
  for (const cplx& v : c.curves[0]) r.max_re_lambda1 = std::max(r.max_re_lambda1, v.real());

  // Largest xi0 with Re lambda_1 <= -alpha0 xi^2 on 0 < |xi| <= xi0.
  double bad = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.xi.size(); ++i) {
    const double x = c.xi[i];
    if (x == 0.0) continue;
    if (c.curves[0][i].real() > -r.alpha0 * x * x) bad = std::min(bad, std::abs(x));
  }
  double xi0 = 0.0;
  for (double x : c.xi) if (std::abs(x) < bad) xi0 = std::max(xi0, std::abs(x));
  r.xi0 = xi0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.xi.size(); ++i) {
    if (std::abs(c.xi[i]) > xi0) worst = std::max(worst, c.curves[0][i].real());
  }
  r.sigma_principal = std::isfinite(worst) ? -worst : std::numeric_limits<double>::infinity();

  double others = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < c.curves.size(); ++j) {
    for (const cplx& v : c.curves[j]) others = std::max(others, v.real());
  }
  r.sigma0 = -others;
  r.curves_ambiguous = !c.ambiguous.empty();
  r.pass = r.simple_zero && r.alpha > 0.0 && r.sigma0 > 0.0 && r.sigma_principal > 0.0 &&
           r.max_re_lambda1 <= 1e-8 && xi0 > 0.0;
  return r;
}

DispersionCoefficients dispersion_coefficients(const RDSystem& sys, double k0, double h, const WaveTrain& guess) {
  if (!(h > 0.0)) throw std::invalid_argument("dispersion_coefficients: h must be positive");
  const WaveTrain w0 = solve_wavetrain(sys, k0, guess);
  WaveTrain gm = w0, gp = w0;
  const WaveTrain wm = solve_wavetrain(sys, k0 - h, gm);
  const WaveTrain wp = solve_wavetrain(sys, k0 + h, gp);
  DispersionCoefficients out;
  out.omega = w0.omega;
  out.phase_speed = k0 != 0.0 ? w0.omega / k0 : std::numeric_limits<double>::infinity();
  out.group_velocity = (wp.omega - wm.omega) / (2.0 * h);
  out.beta = -0.5 * (wp.omega - 2.0 * w0.omega + wm.omega) / (h * h);
  const auto xi = symmetric_xi_grid(0.02, 21);
  out.alpha = -fit_principal_curve(eigencurves(w0, sys, xi), 0.02).a2;
  return out;
}

}  // namespace diffmix
