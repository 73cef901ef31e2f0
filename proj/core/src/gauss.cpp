#include "entprobe/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entprobe::gauss {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd symplectic_form(int modes) {
  MatrixXd omega = MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double uncertainty_min_eigenvalue(const MatrixXd& cov) {
  const int modes = static_cast<int>(cov.rows() / 2);
  const Eigen::MatrixXcd m =
      cov.cast<Complex>() + Complex(0.0, kVacuumVariance) * symplectic_form(modes).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void require_mode(const GaussianState& g, int mode) {
  if (mode < 0 || mode >= g.modes()) {
    throw ShapeError("mode index " + std::to_string(mode) + " out of range for a " +
                     std::to_string(g.modes()) + "-mode state");
  }
}

void require_x(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("two-mode squeezing parameter must satisfy 0 <= x < 1, got " +
                      std::to_string(x));
  }
}

// Rows map (x1, p1, x2, p2) onto (Re Z, Im Z) = (x1 - x2, p1 + p2).
Eigen::Matrix<double, 2, 4> epr_map() {
  Eigen::Matrix<double, 2, 4> l;
  l << 1.0, 0.0, -1.0, 0.0,
       0.0, 1.0, 0.0, 1.0;
  return l;
}

GaussianState two_mode_squeezed(double x) {
  require_x(x);
  const double x2 = x * x;
  const double diag = (1.0 + x2) / (1.0 - x2) * kVacuumVariance;  // cosh(2r)/4
  const double cross = 2.0 * x / (1.0 - x2) * kVacuumVariance;    // sinh(2r)/4
  MatrixXd cov(4, 4);
  cov << diag, 0.0, cross, 0.0,
         0.0, diag, 0.0, -cross,
         cross, 0.0, diag, 0.0,
         0.0, -cross, 0.0, diag;
  return GaussianState(VectorXd::Zero(4), cov);
}

}  // namespace

GaussianState::GaussianState(VectorXd mean, MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto n = mean_.size();
  if ((n != 2 && n != 4) || cov_.rows() != n || cov_.cols() != n) {
    throw ShapeError("GaussianState: expected 1 or 2 modes with a matching covariance");
  }
  noise_.assign(static_cast<std::size_t>(n / 2), 0.0);
  validate();
}

void GaussianState::validate() const {
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw DomainError("GaussianState: covariance is not symmetric");
  }
  if (uncertainty_min_eigenvalue(covariance()) < kPhysicalityFloor) {
    throw DomainError("GaussianState: covariance violates the uncertainty principle");
  }
}

MatrixXd GaussianState::covariance() const {
  MatrixXd cov = cov_;
  for (std::size_t k = 0; k < noise_.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(2 * k);
    cov(i, i) += noise_[k] / 2.0;
    cov(i + 1, i + 1) += noise_[k] / 2.0;
  }
  return cov;
}

double GaussianState::accumulated_noise(int mode) const {
  return noise_.at(static_cast<std::size_t>(mode));
}

GaussianState make_state(const StateSpec& spec) {
  struct Builder {
    GaussianState operator()(const Vacuum& v) const {
      if (v.modes != 1 && v.modes != 2) throw ShapeError("vacuum: 1 or 2 modes supported");
      const auto n = 2 * v.modes;
      return GaussianState(VectorXd::Zero(n), kVacuumVariance * MatrixXd::Identity(n, n));
    }
    GaussianState operator()(const Coherent& c) const {
      return GaussianState(Eigen::Vector2d(c.alpha.real(), c.alpha.imag()),
                           kVacuumVariance * MatrixXd::Identity(2, 2));
    }
    GaussianState operator()(const Squeezed& sq) const {
      // Squeezing applied after D(x0) rescales the x mean by exp(-s).
      const Eigen::Vector2d mean(sq.x0 * std::exp(-sq.s), 0.0);
      const Eigen::Vector2d var(kVacuumVariance * std::exp(-2.0 * sq.s),
                                kVacuumVariance * std::exp(2.0 * sq.s));
      return GaussianState(mean, MatrixXd(var.asDiagonal()));
    }
    GaussianState operator()(const TwoModeSqueezed& t) const { return two_mode_squeezed(t.x); }
  };
  return std::visit(Builder{}, spec);
}

GaussianState displace(const GaussianState& g, int mode, Complex alpha) {
  require_mode(g, mode);
  GaussianState out = g;
  out.mean_(2 * mode) += alpha.real();
  out.mean_(2 * mode + 1) += alpha.imag();
  return out;
}

GaussianState apply_displacement_noise(const GaussianState& g, int mode, double nbar) {
  require_mode(g, mode);
  if (!(nbar >= 0.0)) {
    throw DomainError("displacement noise must be non-negative, got " + std::to_string(nbar));
  }
  GaussianState out = g;
  out.noise_[static_cast<std::size_t>(mode)] += nbar;
  return out;
}

double quadrature_variance(const GaussianState& g, int mode, double phi) {
  require_mode(g, mode);
  const MatrixXd v = g.covariance();
  const auto i = static_cast<Eigen::Index>(2 * mode);
  const double c = std::cos(phi), s = std::sin(phi);
  return c * c * v(i, i) + s * s * v(i + 1, i + 1) + 2.0 * s * c * v(i, i + 1);
}

double mean_photon_number(const GaussianState& g) {
  const MatrixXd v = g.covariance();
  const VectorXd& mu = g.mean();
  double total = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); i += 2) {
    total += v(i, i) + v(i + 1, i + 1) + mu(i) * mu(i) + mu(i + 1) * mu(i + 1) - 0.5;
  }
  return total;
}

double photon_budget(const StateSpec& spec) { return mean_photon_number(make_state(spec)); }

NoiseSpec::NoiseSpec(std::vector<double> nbar) : nbar_per_mode(std::move(nbar)) {
  for (double n : nbar_per_mode) {
    if (!(n >= 0.0)) throw DomainError("noise photon number must be non-negative");
  }
}

HeterodyneLaw epr_heterodyne(const GaussianState& g, Complex alpha, const NoiseSpec& noise) {
  if (g.modes() != 2) throw ShapeError("epr_heterodyne: expected a two-mode state");
  if (noise.nbar_per_mode.size() != 2) {
    throw ShapeError("epr_heterodyne: expected noise for exactly two modes");
  }
  GaussianState state = g;
  for (int m = 0; m < 2; ++m) {
    state = apply_displacement_noise(state, m, noise.nbar_per_mode[static_cast<std::size_t>(m)]);
  }
  state = displace(state, 0, alpha);

  const auto l = epr_map();
  const Eigen::Vector2d mean = l * state.mean();
  HeterodyneLaw law;
  law.mean = Complex(mean(0), mean(1));
  law.cov = l * state.covariance() * l.transpose();
  law.delta2 = law.cov.trace();
  return law;
}

HeterodyneLaw heterodyne(const GaussianState& probe, Complex alpha, double nbar) {
  if (probe.modes() != 1) throw ShapeError("heterodyne: expected a single-mode probe");
  VectorXd mean = VectorXd::Zero(4);
  mean.head(2) = probe.mean();
  MatrixXd cov = kVacuumVariance * MatrixXd::Identity(4, 4);
  cov.topLeftCorner(2, 2) = probe.covariance();
  return epr_heterodyne(GaussianState(mean, cov), alpha, NoiseSpec({nbar, 0.0}));
}

double epr_rotated_variance(const GaussianState& g, double phi) {
  if (g.modes() != 2) throw ShapeError("epr_rotated_variance: expected a two-mode state");
  const auto l = epr_map();
  const Eigen::RowVector4d row = std::cos(phi) * l.row(0) + std::sin(phi) * l.row(1);
  return row * g.covariance() * row.transpose();
}

double epr_variance(double x) {
  require_x(x);
  return (1.0 - x) / (1.0 + x);
}

double advantage_threshold(double x) { return 1.0 - epr_variance(x); }

Eigen::VectorXd symplectic_eigenvalues(const MatrixXd& cov) {
  const auto n = cov.rows();
  if (n == 0 || n % 2 != 0 || cov.cols() != n) {
    throw ShapeError("symplectic_eigenvalues: expected a 2n x 2n covariance");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> root(cov);
  if (root.eigenvalues().minCoeff() <= 0.0) {
    throw DomainError("symplectic_eigenvalues: covariance is not positive definite");
  }
  const MatrixXd sqrt_cov = root.operatorSqrt();
  // i V^{1/2} Omega V^{1/2} is Hermitian with eigenvalues +-nu_k.
  const Eigen::MatrixXcd h = Complex(0.0, 1.0) *
                             (sqrt_cov * symplectic_form(static_cast<int>(n / 2)) * sqrt_cov)
                                 .cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const VectorXd ev = solver.eigenvalues();  // ascending: -nu_max ... nu_max
  return ev.tail(n / 2);
}

MatrixXd partial_transpose(const MatrixXd& cov) {
  if (cov.rows() != 4 || cov.cols() != 4) {
    throw ShapeError("partial_transpose: expected a two-mode covariance");
  }
  Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  return flip.asDiagonal() * cov * flip.asDiagonal();
}

Separability ppt_separability(const MatrixXd& cov) {
  if (cov.rows() != 4 || cov.cols() != 4) {
    throw ShapeError("ppt_separability: expected a two-mode covariance");
  }
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance ||
      uncertainty_min_eigenvalue(cov) < kPhysicalityFloor) {
    throw DomainError("ppt_separability: covariance is not physical");
  }
  Separability out;
  out.min_pt_symplectic = symplectic_eigenvalues(partial_transpose(cov)).minCoeff();
  out.separable = out.min_pt_symplectic >= kVacuumVariance + kPhysicalityFloor;
  return out;
}

Separability ppt_separability(const GaussianState& g) {
  if (g.modes() != 2) throw ShapeError("ppt_separability: expected a two-mode state");
  return ppt_separability(g.covariance());
}

double ppt_boundary_nbar(double x) {
  const GaussianState base = make_state(TwoModeSqueezed{x});
  const auto gap = [&](double nbar) {
    GaussianState noisy = apply_displacement_noise(base, 0, nbar);
    noisy = apply_displacement_noise(noisy, 1, nbar);
    return symplectic_eigenvalues(partial_transpose(noisy.covariance())).minCoeff() -
           kVacuumVariance;
  };
  double lo = 0.0, hi = 0.5;  // at nbar = 1/2 the PT eigenvalue is >= 1/4
  if (gap(lo) >= -1e-13) return 0.0;  // separable already, up to rounding
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) >= 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ThresholdReport threshold_report(double x) {
  ThresholdReport r;
  r.x = x;
  r.delta2 = epr_variance(x);
  r.advantage_nbar = advantage_threshold(x);
  r.ppt_nbar_per_mode = ppt_boundary_nbar(x);
  r.ppt_nbar_closed_form = 0.5 * (1.0 - r.delta2);
  return r;
}

}  // namespace entprobe::gauss
