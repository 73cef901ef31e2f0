#pragma once

#include <complex>

#include "entprobe/linops.hpp"

namespace entprobe::testing {

// Pauli matrices written out by hand, independent of discrim::pauli_group().
inline ComplexMatrix pauli(char which) {
  using namespace std::complex_literals;
  ComplexMatrix m(2, 2);
  switch (which) {
    case 'x':
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case 'y':
      m << 0.0, -1i, 1i, 0.0;
      break;
    case 'z':
      m << 1.0, 0.0, 0.0, -1.0;
      break;
    default:
      m << 1.0, 0.0, 0.0, 1.0;
  }
  return m;
}

inline ComplexMatrix diag_phases(std::initializer_list<double> phases) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(phases.size()),
                                        static_cast<Index>(phases.size()));
  Index k = 0;
  for (double t : phases) {
    m(k, k) = std::polar(1.0, t);
    ++k;
  }
  return m;
}

}  // namespace entprobe::testing
