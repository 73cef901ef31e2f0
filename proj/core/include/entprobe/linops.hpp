#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "entprobe/errors.hpp"

namespace entprobe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

namespace linops {

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kRankThreshold = 1e-10;
/// Element-wise max-norm tolerance on U^dagger U - I for group elements.
inline constexpr double kUnitaryTolerance = 1e-10;
/// Looser unitarity tolerance for matrices supplied from outside
/// (CLI input, products of several unitaries).
inline constexpr double kInputUnitaryTolerance = 1e-8;
inline constexpr double kDensityTolerance = 1e-10;
inline constexpr Index kDefaultDimensionCap = 4096;

ComplexMatrix identity(Index d);

/// Kronecker product, (a (x) b)_{(ik)(jl)} = a_ij b_kl.
/// Throws SizeError when either result dimension would exceed `cap`.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   Index cap = kDefaultDimensionCap);

/// |A>> = sum_ij A_ij |i>|j>, i.e. row-major flattening (index i*d + j).
ComplexVector vectorize(const ComplexMatrix& a);
ComplexMatrix devectorize(const ComplexVector& v, Index d);

/// <<A|B>> = Tr[A^dagger B].
Complex double_ket_inner(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { First, Second };

/// Traces out `traced` from an operator on C^d1 (x) C^d2.
ComplexMatrix partial_trace(const ComplexMatrix& m, Index d1, Index d2,
                            Subsystem traced);

double max_abs(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTolerance);
bool is_hermitian(const ComplexMatrix& m, double tol = kDensityTolerance);
bool is_density(const ComplexMatrix& rho, double tol = kDensityTolerance);

/// Descending singular values.
std::vector<double> singular_values(const ComplexMatrix& m);
/// Number of singular values above kRankThreshold times the largest one.
Index numerical_rank(std::span<const double> singular_values);
Index numerical_rank(const ComplexMatrix& m);

/// Ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

/// Shannon entropy in bits with 0 log 0 = 0; entries below zero are
/// treated as round-off and ignored.
double shannon_entropy_bits(std::span<const double> probabilities);

/// Von Neumann entropy in bits. Throws DomainError on non-density input.
double von_neumann_entropy(const ComplexMatrix& rho);

struct UnitaryEigen {
  std::vector<double> phases;  // in (-pi, pi]
  ComplexMatrix vectors;       // column k pairs with phases[k]
};

/// Eigendecomposition of a unitary through the commuting Hermitian pair
/// (U + U^dagger)/2 and (U - U^dagger)/2i. Throws DomainError when
/// U^dagger U deviates from I by more than `tol`.
UnitaryEigen eig_unitary(const ComplexMatrix& u,
                         double tol = kInputUnitaryTolerance);

}  // namespace linops

/// Bipartite pure state |E>> on C^d (x) C^d held through its operator
/// representative E.
class ProbeState {
 public:
  /// Throws ShapeError for non-square E, DomainError unless Tr[E^dagger E] = 1
  /// within 1e-10.
  explicit ProbeState(ComplexMatrix e);

  /// Rescales E to unit norm. Throws DomainError for E = 0.
  static ProbeState normalized(ComplexMatrix e);
  /// I / sqrt(d).
  static ProbeState maximally_entangled(Index d);
  /// diag(c_0, c_1, ...) padded to dimension d, normalized.
  static ProbeState from_schmidt(std::span<const double> coefficients, Index d);
  /// |v> (x) |0>, the product state carrying a local input vector.
  static ProbeState product(const ComplexVector& local);

  const ComplexMatrix& op() const { return e_; }
  Index dim() const { return e_.rows(); }
  ComplexVector vector() const { return linops::vectorize(e_); }
  /// E^dagger E, the reduced state of the second factor up to transposition.
  ComplexMatrix reduced() const { return e_.adjoint() * e_; }

 private:
  ComplexMatrix e_;
};

namespace linops {

/// Descending Schmidt coefficients (singular values of E).
std::vector<double> schmidt_coefficients(const ProbeState& p);
Index schmidt_number(const ProbeState& p);

}  // namespace linops
}  // namespace entprobe
