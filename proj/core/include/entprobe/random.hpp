#pragma once

// Random matrices and states for property checks, benchmarks and the
// irreducibility certificate.

#include <algorithm>
#include <cmath>

#include "entprobe/linops.hpp"
#include "entprobe/rng.hpp"

namespace entprobe::random {

inline ComplexMatrix ginibre(Index rows, Index cols, CounterRng& rng) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const auto [re, im] = rng.normal_pair();
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return m;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the R phases removed).
inline ComplexMatrix haar_unitary(Index d, CounterRng& rng) {
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

inline ComplexVector random_pure_state(Index d, CounterRng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

/// Random probe of the requested Schmidt rank (1 <= rank <= d).
inline ProbeState random_probe(Index d, Index rank, CounterRng& rng) {
  rank = std::clamp<Index>(rank, 1, d);
  const ComplexMatrix e = ginibre(d, rank, rng) * ginibre(rank, d, rng);
  return ProbeState::normalized(e);
}

inline ProbeState random_probe(Index d, CounterRng& rng) { return random_probe(d, d, rng); }

/// Random probability vector (normalized exponentials).
inline std::vector<double> random_distribution(std::size_t n, CounterRng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    x = -std::log(rng.uniform());
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace entprobe::random
