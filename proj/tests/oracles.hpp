#pragma once

// Brute-force references that never touch an eigendecomposition.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entprobe/linops.hpp"
#include "entprobe/random.hpp"

namespace entprobe::oracle {

/// min over unit psi of |<psi|W|psi>| by multi-start descent on
/// f(psi) = |<psi|W|psi>|^2 over the unit sphere. Starts include a
/// coarse grid over the computational-basis amplitudes.
inline double min_overlap_descent(const ComplexMatrix& w, CounterRng& rng, int starts = 12,
                                  int iterations = 1500) {
  const Index d = w.rows();
  double best = 1.0;
  const auto descend = [&](ComplexVector psi) {
    psi /= psi.norm();
    double step = 0.25;
    Complex z = psi.dot(w * psi);
    double f = std::norm(z);
    for (int it = 0; it < iterations && f > 1e-16; ++it) {
      // Wirtinger gradient of |psi^dagger W psi|^2 with respect to conj(psi).
      const ComplexVector grad = std::conj(z) * (w * psi) + z * (w.adjoint() * psi);
      ComplexVector trial = psi - step * grad;
      trial /= trial.norm();
      const Complex zt = trial.dot(w * trial);
      const double ft = std::norm(zt);
      if (ft < f) {
        psi = trial;
        z = zt;
        f = ft;
        step = std::min(step * 1.2, 2.0);
      } else {
        step *= 0.5;
        if (step < 1e-14) break;
      }
    }
    best = std::min(best, std::sqrt(f));
  };

  // Equal-modulus superpositions over every pair of basis states.
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      ComplexVector psi = ComplexVector::Zero(d);
      psi(i) = 1.0;
      psi(j) = 1.0;
      descend(psi);
    }
  }
  for (int s = 0; s < starts; ++s) descend(random::random_pure_state(d, rng));
  return best;
}

/// Bloch-sphere grid minimum of |<psi|W|psi>| for a qubit unitary.
inline double min_overlap_bloch_grid(const ComplexMatrix& w, int theta_steps, int phi_steps) {
  double best = 1.0;
  for (int a = 0; a <= theta_steps; ++a) {
    const double theta = std::numbers::pi * a / theta_steps;
    for (int b = 0; b < phi_steps; ++b) {
      const double phi = 2.0 * std::numbers::pi * b / phi_steps;
      ComplexVector psi(2);
      psi << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
      best = std::min(best, std::abs(psi.dot(w * psi)));
    }
  }
  return best;
}

/// Minimum error over binary projective measurements {|m><m|, I - |m><m|}
/// on real 2-d states, scanning the measurement angle.
inline double helstrom_projective_scan(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                       double p1, double p2, int steps) {
  double best = 1.0;
  for (int k = 0; k <= steps; ++k) {
    const double t = std::numbers::pi * k / steps;
    const Eigen::Vector2d m(std::cos(t), std::sin(t));
    const double pa = std::pow(m.dot(a), 2), pb = std::pow(m.dot(b), 2);
    best = std::min({best, p1 * (1 - pa) + p2 * pb, p1 * pa + p2 * (1 - pb)});
  }
  return best;
}

}  // namespace entprobe::oracle
