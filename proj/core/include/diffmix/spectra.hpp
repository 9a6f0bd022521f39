#pragma once

// Wave trains u(x,t) = u0(k x - omega t) of u_t = D u_xx + f(u) and the
// spectra of their Bloch operators
//
//     L(xi) v = k^2 D (d_theta + i xi/k)^2 v + omega (d_theta + i xi/k) v + f'(u0) v
//
// on 2 pi-periodic v, in a Fourier basis e^{i m theta}, |m| <= M.

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace diffmix {

struct RDSystem {
  std::string name;
  /// Symmetric positive-definite diffusion matrix.
  Eigen::MatrixXd diffusion;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> reaction;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;

  int dimension() const { return static_cast<int>(diffusion.rows()); }
  /// Throws std::invalid_argument unless D is symmetric positive definite.
  void validate() const;

  /// f(u) = (1 - r^2) u - (omega0 - q r^2) J u with J the rotation by pi/2 and D = I.
  static RDSystem lambda_omega(double q, double omega0);
};

struct WaveTrain {
  double k = 0.0;
  double omega = 0.0;
  int modes = 0;  // M
  /// Samples at theta_l = 2 pi l / (2M+1); one row per component.
  Eigen::MatrixXd values;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;

  int points() const { return 2 * modes + 1; }
  /// Fourier coefficients, column m + M holds the coefficient of e^{i m theta}.
  Eigen::MatrixXcd coefficients() const;
  /// d_theta u0 at the collocation points.
  Eigen::MatrixXd derivative() const;
};

/// r0 (cos theta, sin theta), r0 = sqrt(1 - k^2), omega = omega0 - q (1 - k^2).
WaveTrain lambda_omega_ansatz(double q, double omega0, double k, int modes);

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 30;
};

/// Fourier-collocation Newton solve of k^2 D u'' + omega u' + f(u) = 0 with
/// unknowns (samples, omega) and the phase condition <u - guess, guess'> = 0.
/// Throws ConvergenceError when the residual does not fall below 1e-10.
WaveTrain solve_wavetrain(const RDSystem& sys, double k, const WaveTrain& guess, NewtonOptions opt = {});

/// Discrete L^2 residual of the profile equation.
double wavetrain_residual(const RDSystem& sys, const WaveTrain& wt);

struct KernelCheck {
  double with_phase = 0.0;     // smallest singular value, bordered Jacobian
  double without_phase = 0.0;  // smallest singular value, profile block only
};

KernelCheck translation_kernel_check(const RDSystem& sys, const WaveTrain& wt);

/// Bloch operator, size d(2M+1). For k = 0 the Doppler shift i omega xi / k,
/// a multiple of the identity, is omitted; real parts are unaffected.
Eigen::MatrixXcd bloch_operator(const WaveTrain& wt, const RDSystem& sys, double xi);

/// `points` equally spaced values on [-half_range, half_range]; points is odd so 0 is included.
std::vector<double> symmetric_xi_grid(double half_range, int points);

struct EigenCurveSet {
  std::vector<double> xi;
  /// curves[j][i] = lambda_j(xi[i]); curve 0 is the one through 0 at xi = 0.
  std::vector<std::vector<std::complex<double>>> curves;
  /// Indices into xi where nearest-neighbour matching was ambiguous.
  std::vector<std::size_t> ambiguous;
  std::size_t center = 0;  // index of xi = 0
};

/// Eigenvalues per xi (independent, run concurrently) matched into curves by
/// greedy nearest-neighbour continuation outward from xi = 0.
EigenCurveSet eigencurves(const WaveTrain& wt, const RDSystem& sys, std::span<const double> xi,
                          unsigned threads = 0);

struct QuadraticFit {
  double a0 = 0.0;
  double a2 = 0.0;  // lambda''(0) / 2
  double a4 = 0.0;
};

/// Least squares Re lambda_1 = a0 + a2 xi^2 + a4 xi^4 on |xi| <= window.
QuadraticFit fit_principal_curve(const EigenCurveSet& c, double window = 0.02);

struct SpectralStabilityReport {
  bool simple_zero = false;
  double lambda1_at_zero = 0.0;
  double lambda1_second_derivative = 0.0;
  double alpha = 0.0;          // -lambda_1''(0) / 2
  double alpha0 = 0.0;         // alpha / 2, used for the quadratic envelope
  double xi0 = 0.0;            // Re lambda_1 <= -alpha0 xi^2 on 0 < |xi| <= xi0
  double sigma_principal = 0.0;  // -max Re lambda_1 for |xi| > xi0 (inf if none)
  double sigma0 = 0.0;         // -max Re lambda_j, j >= 2
  double max_re_lambda1 = 0.0;
  bool curves_ambiguous = false;
  bool pass = false;
};

SpectralStabilityReport spectral_stability_report(const EigenCurveSet& curves, double fit_window = 0.02);

struct DispersionCoefficients {
  double omega = 0.0;
  double phase_speed = 0.0;  // omega / k (infinite at k = 0)
  double group_velocity = 0.0;
  double alpha = 0.0;
  double beta = 0.0;         // -omega''(k) / 2
};

/// Centered differences of omega(k) with step h and alpha from the principal
/// curve on |xi| <= 0.02.
DispersionCoefficients dispersion_coefficients(const RDSystem& sys, double k0, double h,
                                               const WaveTrain& guess);

}  // namespace diffmix
