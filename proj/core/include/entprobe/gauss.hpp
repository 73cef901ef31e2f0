#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "entprobe/errors.hpp"

// Gaussian states of one or two bosonic modes in the covariance picture.
//
// Quadratures are X = (a + a^dagger)/2 and P = (a - a^dagger)/2i, ordered
// (x1, p1, x2, p2). The vacuum has covariance I/4 and a physical covariance
// satisfies V + (i/4) Omega >= 0 with Omega = diag(J, J), J = [[0, 1], [-1, 0]].
namespace entprobe::gauss {

using Complex = std::complex<double>;

/// Floor applied to the smallest eigenvalue of V + (i/4) Omega.
inline constexpr double kPhysicalityFloor = -1e-10;
inline constexpr double kSymmetryTolerance = 1e-12;
/// Vacuum variance of a single quadrature.
inline constexpr double kVacuumVariance = 0.25;

class GaussianState {
 public:
  /// Throws ShapeError unless the sizes describe 1 or 2 modes, DomainError
  /// for an asymmetric or unphysical covariance.
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int modes() const { return static_cast<int>(mean_.size() / 2); }
  const Eigen::VectorXd& mean() const { return mean_; }
  /// Prepared covariance plus the accumulated displacement noise.
  Eigen::MatrixXd covariance() const;
  /// Total mean thermal photon number of displacement noise applied to `mode`.
  double accumulated_noise(int mode) const;

  friend GaussianState displace(const GaussianState& g, int mode, Complex alpha);
  friend GaussianState apply_displacement_noise(const GaussianState& g, int mode, double nbar);

 private:
  void validate() const;

  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  // Noise is kept as a per-mode photon number so that consecutive channels
  // compose by adding the parameters, exactly as the channel family does.
  std::vector<double> noise_;
};

struct Vacuum {
  int modes = 1;
};
struct Coherent {
  Complex alpha;
};
/// exp[s/2 ((a^dagger)^2 - a^2)] D(x0)|0>, squeezed along X for s > 0.
struct Squeezed {
  double s = 0.0;
  double x0 = 0.0;
};
/// sqrt(1 - x^2) sum_n x^n |n>|n>, 0 <= x < 1.
struct TwoModeSqueezed {
  double x = 0.0;
};
using StateSpec = std::variant<Vacuum, Coherent, Squeezed, TwoModeSqueezed>;

GaussianState make_state(const StateSpec& spec);

/// D(alpha) on `mode`: the mean of (x, p) moves by (Re alpha, Im alpha).
GaussianState displace(const GaussianState& g, int mode, Complex alpha);

/// Gaussian displacement noise with mean thermal photon number `nbar`:
/// the mode covariance gains (nbar / 2) I. Throws DomainError for nbar < 0.
GaussianState apply_displacement_noise(const GaussianState& g, int mode, double nbar);

/// Variance of X_phi = X cos(phi) + P sin(phi).
double quadrature_variance(const GaussianState& g, int mode, double phi);

/// <a^dagger a> summed over modes, including the coherent part.
double mean_photon_number(const GaussianState& g);

/// Mean photon number of the prepared state; sinh^2 s for a squeezed probe
/// and 2x^2/(1 - x^2) for the two-mode squeezed vacuum.
double photon_budget(const StateSpec& spec);

struct NoiseSpec {
  /// One non-negative entry per mode. Throws DomainError otherwise.
  explicit NoiseSpec(std::vector<double> nbar_per_mode);
  static NoiseSpec none(int modes) { return NoiseSpec(std::vector<double>(modes, 0.0)); }

  std::vector<double> nbar_per_mode;
};

/// Outcome law of the joint measurement of Re Z = X1 - X2 and Im Z = P1 + P2,
/// Z = a (x) I - I (x) a^dagger.
struct HeterodyneLaw {
  Complex mean;
  Eigen::Matrix2d cov;  // covariance of (Re z, Im z)
  /// E|z - mean|^2; the outcome density is (pi delta2)^-1 exp(-|z - mean|^2 / delta2)
  /// when `cov` is isotropic.
  double delta2 = 0.0;
};

/// Applies `noise` to each mode, displaces mode 0 by alpha and returns the law
/// of the EPR pair. Throws ShapeError unless the state and noise have 2 modes.
HeterodyneLaw epr_heterodyne(const GaussianState& g, Complex alpha, const NoiseSpec& noise);

/// Heterodyne of a single-mode probe: the EPR measurement against a noiseless
/// vacuum ancilla, with `nbar` of displacement noise on the probe.
HeterodyneLaw heterodyne(const GaussianState& probe, Complex alpha, double nbar);

/// Variance of cos(phi) Re Z + sin(phi) Im Z, the EPR pair read out with a
/// common phase offset.
double epr_rotated_variance(const GaussianState& g, double phi);

/// (1 - x)/(1 + x) = exp(-2 atanh x).
double epr_variance(double x);

/// Noise level where Delta^2 + 2 nbar = 1 + nbar, i.e. 1 - Delta^2.
double advantage_threshold(double x);

/// Symplectic eigenvalues (ascending) in the vacuum-1/4 convention. Requires
/// a positive definite covariance.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// Covariance after the partial transpose of mode 2 (p2 -> -p2).
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& cov);

struct Separability {
  bool separable = true;
  double min_pt_symplectic = 0.0;
};

/// PPT test for two-mode states: separable iff the smallest symplectic
/// eigenvalue of the partially transposed covariance is at least 1/4.
Separability ppt_separability(const GaussianState& g);
/// As above for a raw covariance; throws DomainError if it is unphysical.
Separability ppt_separability(const Eigen::MatrixXd& cov);

/// Per-mode noise at which tmsv(x) becomes PPT, located by bisection on the
/// numerical PPT test.
double ppt_boundary_nbar(double x);

struct ThresholdReport {
  double x = 0.0;
  double delta2 = 0.0;
  double advantage_nbar = 0.0;       // 1 - Delta^2
  double ppt_nbar_per_mode = 0.0;    // bisection on the PPT test
  double ppt_nbar_closed_form = 0.0; // (1 - Delta^2) / 2
};

ThresholdReport threshold_report(double x);

}  // namespace entprobe::gauss
