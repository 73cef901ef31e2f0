#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entprobe/linops.hpp"

namespace entprobe::discrim {

/// Finite projective unitary representation of a group, U_g U_h = w(g,h) U_k.
class UnitaryGroup {
 public:
  /// Validates unitarity (1e-10) and closure up to a unit-modulus phase
  /// (1e-8). Throws DomainError otherwise.
  UnitaryGroup(std::vector<ComplexMatrix> elements, std::vector<std::string> labels);

  Index dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const ComplexMatrix& operator[](std::size_t g) const { return elements_[g]; }

  struct Product {
    std::size_t index;
    Complex phase;
  };
  /// U_g U_h = phase * U_index.
  Product multiply(std::size_t g, std::size_t h) const;

  /// Irreducibility certificate: (1/|G|) sum_g U_g M U_g^dagger = Tr[M] I / d
  /// within 1e-8 for five pseudo-random test matrices M.
  bool is_irreducible() const;

  /// (1/|G|) sum_g (U_g (x) I) X (U_g (x) I)^dagger for X on C^d (x) C^d.
  ComplexMatrix twirl_first(const ComplexMatrix& x) const;

 private:
  Index dim_;
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
  std::vector<Product> table_;
  bool irreducible_;
};

/// sigma_0 = I, sigma_x, sigma_y, sigma_z.
UnitaryGroup pauli_group();

/// Matrix of U(m,n) = sum_k exp(2 pi i k m / d) |k><k (+) n|.
ComplexMatrix weyl_heisenberg(Index d, Index m, Index n);
/// All d^2 operators U(m,n), element index m*d + n. Throws DomainError for d < 2.
UnitaryGroup weyl_heisenberg_group(Index d);

/// (U (x) I)|E>>, i.e. the operator U E.
ProbeState apply_local(const ComplexMatrix& u, const ProbeState& e);

/// Outputs U_g E for every group element.
std::vector<ProbeState> outputs(const UnitaryGroup& g, const ProbeState& e);

/// Rank of the averaged output projector (1/|G|) sum_g |Psi_g>><<Psi_g|.
Index output_span_dimension(const UnitaryGroup& g, const ProbeState& e);

/// Gram matrix <<Psi_g|Psi_h>> of the outputs.
ComplexMatrix output_gram(const UnitaryGroup& g, const ProbeState& e);

/// Holevo quantity in bits of the equiprobable output ensemble computed from
/// S(average) - average S(output). Throws UnsupportedRepresentation when the
/// group fails the irreducibility certificate.
double holevo_chi(const UnitaryGroup& g, const ProbeState& e);

/// log2 d + S(E^dagger E), the value the ensemble entropy takes for an
/// irreducible group.
double holevo_chi_closed_form(const ProbeState& e);

/// Throws DomainError unless S >= 0 (floor -1e-10) and Tr_1[S] = I within 1e-8.
void validate_seed(const ComplexMatrix& seed, Index d);

/// Pi_g = (d/|G|) (U_g (x) I) S (U_g (x) I)^dagger.
std::vector<ComplexMatrix> covariant_povm(const UnitaryGroup& g, const ComplexMatrix& seed);

/// <<E|S|E>>.
double average_likelihood(const ComplexMatrix& seed, const ProbeState& e);

struct DiscriminationProblem {
  /// Throws DomainError for non-unitary inputs (1e-8) or invalid priors,
  /// ShapeError when the dimensions differ.
  DiscriminationProblem(ComplexMatrix u1, ComplexMatrix u2, double p1 = 0.5, double p2 = 0.5);

  ComplexMatrix u1;
  ComplexMatrix u2;
  double p1;
  double p2;

  Index dim() const { return u1.rows(); }
  /// W = U2^dagger U1.
  ComplexMatrix w() const { return u2.adjoint() * u1; }
};

/// 1/2 [1 - sqrt(1 - 4 p1 p2 |overlap|^2)].
double helstrom_from_overlap(double p1, double p2, double overlap);

/// |<psi|W|psi>| for a local state, or <<E|(W (x) I)|E>> for a probe.
double output_overlap(const DiscriminationProblem& p, const ComplexVector& local);
double output_overlap(const DiscriminationProblem& p, const ProbeState& probe);

double helstrom_error(const DiscriminationProblem& p, const ComplexVector& local);
double helstrom_error(const DiscriminationProblem& p, const ProbeState& probe);

struct EigenvaluePolygon {
  std::vector<double> phases;  // distinct eigenphases, ascending in (-pi, pi]
  double r = 1.0;              // distance from the origin to the hull
  double spread = 0.0;         // shortest arc covering every eigenvalue
};

/// Distinct sorted phases, merged when closer than 1e-9 on the circle.
std::vector<double> distinct_phases(std::vector<double> phases);

/// 2 pi minus the largest circular gap; 0 for a single phase.
double phase_spread(const std::vector<double>& distinct);

/// Phases lifted to reals inside one arc [a, a + spread].
std::vector<double> lift_phases(const std::vector<double>& distinct);

/// Hull distance r(W) and angular spread of the eigenvalues of W.
EigenvaluePolygon min_overlap_r(const ComplexMatrix& w);

/// Unentangled input attaining |<psi|W|psi>| = r(W): a superposition of at
/// most three eigenvectors whose weighted eigenvalue average is the hull
/// point closest to the origin.
ComplexVector optimal_pair_input(const ComplexMatrix& w);

struct CopiesReport {
  std::optional<int> copies;      // smallest N with 0 in hull(spec W^(x)N)
  double single_spread = 0.0;     // spread of W
  std::vector<double> spreads;    // spread of W^(x)N for N = 1..checked
  std::vector<bool> origin_in_hull;
};

/// Lifted N-fold phase sums of W^(x)N, deduplicated (no d^N matrices).
std::vector<double> tensor_power_phase_sums(const std::vector<double>& distinct, int n,
                                            std::size_t cap = std::size_t{1} << 20);

/// Spread of the N-fold sums, capped at 2 pi.
double tensor_power_spread(const ComplexMatrix& w, int n);

/// Scans N = 1..n_max. Throws DomainError for n_max < 1.
CopiesReport copies_for_perfect(const DiscriminationProblem& p, int n_max);

/// Tr[(E^dagger E)^2].
double schur_overlap_omega(const ProbeState& e);

enum class Majorization { Equal, MajorizedBy, Majorizes, Incomparable };

/// Compares p and q by prefix sums of their descending rearrangements;
/// MajorizedBy means p < q (q is more ordered). Shorter vectors are padded
/// with zeros.
Majorization majorization_compare(std::vector<double> p, std::vector<double> q);

}  // namespace entprobe::discrim
