#include "entprobe/discrim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entprobe/hull.hpp"
#include "entprobe/random.hpp"

namespace entprobe::discrim {

using linops::identity;
using linops::kron;
using linops::max_abs;

namespace {

constexpr double kClosureTolerance = 1e-8;
constexpr double kCertificateTolerance = 1e-8;
constexpr double kSeedPositivityFloor = -1e-10;
constexpr double kSeedNormalizationTolerance = 1e-8;
constexpr double kPriorTolerance = 1e-12;
constexpr double kPhaseMergeTolerance = 1e-9;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kCertificateSeed = 0x1eed5eedULL;

ComplexMatrix lift_first(const ComplexMatrix& u) { return kron(u, identity(u.rows())); }

void require_dim(const ProbeState& e, Index d, const char* what) {
  if (e.dim() != d) {
    throw ShapeError(std::string(what) + ": probe dimension " + std::to_string(e.dim()) +
                     " does not match " + std::to_string(d));
  }
}

void require_irreducible(const UnitaryGroup& g, const char* what) {
  if (!g.is_irreducible()) {
    throw UnsupportedRepresentation(std::string(what) +
                                    ": group fails the irreducibility certificate");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// UnitaryGroup

UnitaryGroup::UnitaryGroup(std::vector<ComplexMatrix> elements, std::vector<std::string> labels)
    : dim_(0), elements_(std::move(elements)), labels_(std::move(labels)), irreducible_(false) {
  if (elements_.empty()) throw DomainError("UnitaryGroup: no elements");
  if (labels_.size() != elements_.size()) {
    throw ShapeError("UnitaryGroup: one label per element required");
  }
  dim_ = elements_.front().rows();
  for (const auto& u : elements_) {
    if (u.rows() != dim_ || u.cols() != dim_) {
      throw ShapeError("UnitaryGroup: elements must share one square dimension");
    }
    if (!linops::is_unitary(u)) throw DomainError("UnitaryGroup: element is not unitary");
  }

  const std::size_t n = elements_.size();
  const double d = static_cast<double>(dim_);
  table_.reserve(n * n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      const ComplexMatrix prod = elements_[g] * elements_[h];
      std::size_t best = 0;
      double best_abs = -1.0;
      Complex best_trace;
      for (std::size_t k = 0; k < n; ++k) {
        const Complex t = (elements_[k].adjoint() * prod).trace();
        if (std::abs(t) > best_abs) {
          best_abs = std::abs(t);
          best = k;
          best_trace = t;
        }
      }
      const Complex phase = best_trace / d;
      if (std::abs(std::abs(phase) - 1.0) > kClosureTolerance ||
          max_abs(prod - phase * elements_[best]) > kClosureTolerance) {
        throw DomainError("UnitaryGroup: not closed up to phase at (" + labels_[g] + ", " +
                          labels_[h] + ")");
      }
      table_.push_back({best, phase});
    }
  }

  CounterRng rng(kCertificateSeed);
  irreducible_ = true;
  for (int trial = 0; trial < 5 && irreducible_; ++trial) {
    const ComplexMatrix m = random::ginibre(dim_, dim_, rng);
    ComplexMatrix avg = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& u : elements_) avg += u * m * u.adjoint();
    avg /= static_cast<double>(n);
    const ComplexMatrix expected = m.trace() / d * identity(dim_);
    irreducible_ = max_abs(avg - expected) <= kCertificateTolerance;
  }
}

UnitaryGroup::Product UnitaryGroup::multiply(std::size_t g, std::size_t h) const {
  return table_.at(g * elements_.size() + h);
}

bool UnitaryGroup::is_irreducible() const { return irreducible_; }

ComplexMatrix UnitaryGroup::twirl_first(const ComplexMatrix& x) const {
  const Index big = dim_ * dim_;
  if (x.rows() != big || x.cols() != big) throw ShapeError("twirl_first: expected d^2 x d^2");
  ComplexMatrix out = ComplexMatrix::Zero(big, big);
  for (const auto& u : elements_) {
    const ComplexMatrix lifted = lift_first(u);
    out += lifted * x * lifted.adjoint();
  }
  return out / static_cast<double>(elements_.size());
}

UnitaryGroup pauli_group() {
  using namespace std::complex_literals;
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, -1i, 1i, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  return UnitaryGroup({identity(2), x, y, z}, {"I", "X", "Y", "Z"});
}

ComplexMatrix weyl_heisenberg(Index d, Index m, Index n) {
  if (d < 2) throw DomainError("weyl_heisenberg: d must be at least 2");
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    // Reduce k*m mod d before forming the angle to keep phases exact.
    const double angle = kTwoPi * static_cast<double>((k * m) % d) / static_cast<double>(d);
    u(k, (k + n) % d) = std::polar(1.0, angle);
  }
  return u;
}

UnitaryGroup weyl_heisenberg_group(Index d) {
  if (d < 2) throw DomainError("weyl_heisenberg_group: d must be at least 2");
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
  for (Index m = 0; m < d; ++m) {
    for (Index n = 0; n < d; ++n) {
      elements.push_back(weyl_heisenberg(d, m, n));
      labels.push_back("U(" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
  }
  return UnitaryGroup(std::move(elements), std::move(labels));
}

// ---------------------------------------------------------------------------
// Entangled-probe outputs

ProbeState apply_local(const ComplexMatrix& u, const ProbeState& e) {
  if (u.rows() != e.dim() || u.cols() != e.dim()) {
    throw ShapeError("apply_local: operator and probe dimensions differ");
  }
  return ProbeState::normalized(u * e.op());
}

std::vector<ProbeState> outputs(const UnitaryGroup& g, const ProbeState& e) {
  require_dim(e, g.dim(), "outputs");
  std::vector<ProbeState> out;
  out.reserve(g.size());
  for (const auto& u : g.elements()) out.push_back(apply_local(u, e));
  return out;
}

Index output_span_dimension(const UnitaryGroup& g, const ProbeState& e) {
  const auto outs = outputs(g, e);
  const Index big = g.dim() * g.dim();
  ComplexMatrix columns(big, static_cast<Index>(outs.size()));
  for (std::size_t k = 0; k < outs.size(); ++k) {
    columns.col(static_cast<Index>(k)) = outs[k].vector();
  }
  // rank[psi_1 ... psi_|G|] = rank of (1/|G|) sum |psi><psi|, on the same
  // singular-value scale as the Schmidt coefficients.
  return linops::numerical_rank(columns);
}

ComplexMatrix output_gram(const UnitaryGroup& g, const ProbeState& e) {
  const auto outs = outputs(g, e);
  const auto n = static_cast<Index>(outs.size());
  ComplexMatrix gram(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      gram(i, j) = linops::double_ket_inner(outs[static_cast<std::size_t>(i)].op(),
                                            outs[static_cast<std::size_t>(j)].op());
    }
  }
  return gram;
}

double holevo_chi(const UnitaryGroup& g, const ProbeState& e) {
  require_irreducible(g, "holevo_chi");
  const auto outs = outputs(g, e);
  const Index big = g.dim() * g.dim();
  ComplexMatrix average = ComplexMatrix::Zero(big, big);
  double mean_entropy = 0.0;
  for (const auto& psi : outs) {
    const ComplexVector v = psi.vector();
    const ComplexMatrix rho = v * v.adjoint();
    average += rho;
    mean_entropy += linops::von_neumann_entropy(rho);
  }
  const double n = static_cast<double>(outs.size());
  average /= n;
  return linops::von_neumann_entropy(average) - mean_entropy / n;
}

double holevo_chi_closed_form(const ProbeState& e) {
  return std::log2(static_cast<double>(e.dim())) + linops::von_neumann_entropy(e.reduced());
}

// ---------------------------------------------------------------------------
// Covariant POVM

void validate_seed(const ComplexMatrix& seed, Index d) {
  const Index big = d * d;
  if (seed.rows() != big || seed.cols() != big) {
    throw ShapeError("covariant seed must be d^2 x d^2");
  }
  if (!linops::is_hermitian(seed)) throw DomainError("covariant seed is not Hermitian");
  if (linops::hermitian_eigenvalues(seed).minCoeff() < kSeedPositivityFloor) {
    throw DomainError("covariant seed is not positive semidefinite");
  }
  const ComplexMatrix reduced = linops::partial_trace(seed, d, d, linops::Subsystem::First);
  if (max_abs(reduced - identity(d)) > kSeedNormalizationTolerance) {
    throw DomainError("covariant seed violates Tr_1[S] = I");
  }
}

std::vector<ComplexMatrix> covariant_povm(const UnitaryGroup& g, const ComplexMatrix& seed) {
  validate_seed(seed, g.dim());
  require_irreducible(g, "covariant_povm");
  const double weight = static_cast<double>(g.dim()) / static_cast<double>(g.size());
  std::vector<ComplexMatrix> povm;
  povm.reserve(g.size());
  for (const auto& u : g.elements()) {
    const ComplexMatrix lifted = lift_first(u);
    povm.push_back(weight * lifted * seed * lifted.adjoint());
  }
  return povm;
}

double average_likelihood(const ComplexMatrix& seed, const ProbeState& e) {
  const ComplexVector v = e.vector();
  if (seed.rows() != v.size() || seed.cols() != v.size()) {
    throw ShapeError("average_likelihood: seed and probe dimensions differ");
  }
  return v.dot(seed * v).real();
}

// ---------------------------------------------------------------------------
// Two-unitary discrimination

DiscriminationProblem::DiscriminationProblem(ComplexMatrix a, ComplexMatrix b, double q1,
                                             double q2)
    : u1(std::move(a)), u2(std::move(b)), p1(q1), p2(q2) {
  if (u1.rows() != u1.cols() || u2.rows() != u2.cols() || u1.rows() != u2.rows() ||
      u1.rows() == 0) {
    throw ShapeError("DiscriminationProblem: unitaries must be square with equal dimension");
  }
  if (!linops::is_unitary(u1, linops::kInputUnitaryTolerance) ||
      !linops::is_unitary(u2, linops::kInputUnitaryTolerance)) {
    throw DomainError("DiscriminationProblem: hypotheses must be unitary");
  }
  if (!(p1 >= 0.0) || !(p2 >= 0.0) || std::abs(p1 + p2 - 1.0) > kPriorTolerance) {
    throw DomainError("DiscriminationProblem: priors must be non-negative and sum to 1");
  }
}

double helstrom_from_overlap(double p1, double p2, double overlap) {
  const double arg = 1.0 - 4.0 * p1 * p2 * overlap * overlap;
  return 0.5 * (1.0 - std::sqrt(std::max(arg, 0.0)));
}

double output_overlap(const DiscriminationProblem& p, const ComplexVector& local) {
  if (local.size() != p.dim()) throw ShapeError("output_overlap: input dimension mismatch");
  if (std::abs(local.squaredNorm() - 1.0) > 1e-10) {
    throw DomainError("output_overlap: input state is not normalized");
  }
  return std::abs(local.dot(p.w() * local));
}

double output_overlap(const DiscriminationProblem& p, const ProbeState& probe) {
  require_dim(probe, p.dim(), "output_overlap");
  return std::abs((probe.op().adjoint() * p.w() * probe.op()).trace());
}

namespace {

// Uses 1 - |<a|b>|^2 = |b - <a|b> a|^2, which keeps full relative accuracy
// when the outputs nearly coincide.
double helstrom_from_outputs(double p1, double p2, const ComplexVector& a,
                             const ComplexVector& b) {
  const Complex ov = a.dot(b);
  const double perp = (b - ov * a).squaredNorm();
  const double arg = (p1 - p2) * (p1 - p2) + 4.0 * p1 * p2 * std::min(perp, 1.0);
  return 0.5 * (1.0 - std::sqrt(std::max(arg, 0.0)));
}

}  // namespace

double helstrom_error(const DiscriminationProblem& p, const ComplexVector& local) {
  output_overlap(p, local);  // validates the input
  return helstrom_from_outputs(p.p1, p.p2, p.u1 * local, p.u2 * local);
}

double helstrom_error(const DiscriminationProblem& p, const ProbeState& probe) {
  if (probe.dim() != p.dim()) throw ShapeError("helstrom_error: probe dimension mismatch");
  return helstrom_from_outputs(p.p1, p.p2, linops::vectorize(p.u1 * probe.op()),
                               linops::vectorize(p.u2 * probe.op()));
}

// ---------------------------------------------------------------------------
// Eigenvalue polygon

std::vector<double> distinct_phases(std::vector<double> phases) {
  std::sort(phases.begin(), phases.end());
  std::vector<double> out;
  for (double p : phases) {
    if (out.empty() || p - out.back() > kPhaseMergeTolerance) out.push_back(p);
  }
  if (out.size() > 1 && out.front() + kTwoPi - out.back() <= kPhaseMergeTolerance) {
    out.erase(out.begin());
  }
  return out;
}

namespace {

// Index of the phase that follows the largest circular gap.
std::size_t arc_start(const std::vector<double>& distinct, double* max_gap) {
  std::size_t start = 0;
  double widest = distinct.front() + kTwoPi - distinct.back();
  for (std::size_t k = 1; k < distinct.size(); ++k) {
    const double gap = distinct[k] - distinct[k - 1];
    if (gap > widest) {
      widest = gap;
      start = k;
    }
  }
  if (max_gap) *max_gap = widest;
  return start;
}

std::vector<hull::Point> unit_points(const std::vector<double>& phases) {
  std::vector<hull::Point> pts;
  pts.reserve(phases.size());
  for (double t : phases) pts.push_back(std::polar(1.0, t));
  return pts;
}

}  // namespace

double phase_spread(const std::vector<double>& distinct) {
  if (distinct.size() <= 1) return 0.0;
  double widest = 0.0;
  arc_start(distinct, &widest);
  return kTwoPi - widest;
}

std::vector<double> lift_phases(const std::vector<double>& distinct) {
  if (distinct.empty()) return {};
  const double start = distinct[arc_start(distinct, nullptr)];
  std::vector<double> lifted;
  lifted.reserve(distinct.size());
  for (double t : distinct) {
    double offset = t - start;
    if (offset < 0.0) offset += kTwoPi;
    lifted.push_back(start + offset);
  }
  std::sort(lifted.begin(), lifted.end());
  return lifted;
}

EigenvaluePolygon min_overlap_r(const ComplexMatrix& w) {
  const auto eig = linops::eig_unitary(w);
  EigenvaluePolygon poly;
  poly.phases = distinct_phases(eig.phases);
  poly.spread = phase_spread(poly.phases);
  const auto shape = hull::convex_hull(unit_points(poly.phases));
  poly.r = std::min(hull::closest_to_origin(shape).distance, 1.0);
  return poly;
}

ComplexVector optimal_pair_input(const ComplexMatrix& w) {
  const auto eig = linops::eig_unitary(w);
  const auto phases = distinct_phases(eig.phases);

  // One eigenvector per distinct eigenvalue (circular nearest match).
  std::vector<Index> representative;
  representative.reserve(phases.size());
  for (double t : phases) {
    Index best = 0;
    double best_dist = kTwoPi;
    for (std::size_t k = 0; k < eig.phases.size(); ++k) {
      const double diff = std::abs(std::remainder(eig.phases[k] - t, kTwoPi));
      if (diff < best_dist) {
        best_dist = diff;
        best = static_cast<Index>(k);
      }
    }
    representative.push_back(best);
  }
  if (phases.size() == 1) return eig.vectors.col(representative.front());

  const auto points = unit_points(phases);
  const auto shape = hull::convex_hull(points);
  const auto closest = hull::closest_to_origin(shape);

  ComplexVector psi = ComplexVector::Zero(w.rows());
  for (const auto& [vertex, weight] : closest.weights) {
    const auto it = std::find(points.begin(), points.end(), shape[vertex]);
    const auto k = static_cast<std::size_t>(it - points.begin());
    psi += std::sqrt(weight) * eig.vectors.col(representative[k]);
  }
  return psi / psi.norm();
}

// ---------------------------------------------------------------------------
// N copies

namespace {

constexpr std::size_t kPhaseSumCap = std::size_t{1} << 20;

// sums <- {s + l : s in sums, l in lifted}, merged at the phase tolerance.
void extend_sums(std::vector<double>& sums, const std::vector<double>& lifted,
                 std::size_t cap) {
  std::vector<double> next;
  next.reserve(sums.size() * lifted.size());
  for (double s : sums) {
    for (double l : lifted) next.push_back(s + l);
  }
  std::sort(next.begin(), next.end());
  sums.clear();
  for (double v : next) {
    if (sums.empty() || v - sums.back() > kPhaseMergeTolerance) sums.push_back(v);
  }
  if (sums.size() > cap) {
    throw SizeError("phase-sum enumeration exceeds " + std::to_string(cap) + " points");
  }
}

}  // namespace

std::vector<double> tensor_power_phase_sums(const std::vector<double>& distinct, int n,
                                            std::size_t cap) {
  if (n < 0) throw DomainError("tensor_power_phase_sums: negative power");
  const auto lifted = lift_phases(distinct);
  std::vector<double> sums{0.0};
  for (int step = 0; step < n; ++step) extend_sums(sums, lifted, cap);
  return sums;
}

double tensor_power_spread(const ComplexMatrix& w, int n) {
  const auto phases = distinct_phases(linops::eig_unitary(w).phases);
  const auto sums = tensor_power_phase_sums(phases, n);
  return std::min(sums.back() - sums.front(), kTwoPi);
}

CopiesReport copies_for_perfect(const DiscriminationProblem& p, int n_max) {
  if (n_max < 1) throw DomainError("copies_for_perfect: n_max must be at least 1");
  const auto phases = distinct_phases(linops::eig_unitary(p.w()).phases);
  CopiesReport report;
  report.single_spread = phase_spread(phases);
  if (phases.size() <= 1) return report;  // W = e^{i theta} I

  const auto lifted = lift_phases(phases);
  std::vector<double> sums{0.0};
  for (int n = 1; n <= n_max; ++n) {
    extend_sums(sums, lifted, kPhaseSumCap);
    report.spreads.push_back(std::min(sums.back() - sums.front(), kTwoPi));
    const bool inside = hull::contains_origin(hull::convex_hull(unit_points(sums)));
    report.origin_in_hull.push_back(inside);
    if (inside) {
      report.copies = n;
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Schur convexity

double schur_overlap_omega(const ProbeState& e) {
  const ComplexMatrix r = e.reduced();
  return (r * r).trace().real();
}

Majorization majorization_compare(std::vector<double> p, std::vector<double> q) {
  constexpr double tol = 1e-12;
  const std::size_t n = std::max(p.size(), q.size());
  p.resize(n, 0.0);
  q.resize(n, 0.0);
  std::sort(p.begin(), p.end(), std::greater<>());
  std::sort(q.begin(), q.end(), std::greater<>());
  double sp = 0.0, sq = 0.0;
  bool below = true, above = true;
  for (std::size_t k = 0; k < n; ++k) {
    sp += p[k];
    sq += q[k];
    if (sp > sq + tol) below = false;
    if (sp < sq - tol) above = false;
  }
  if (std::abs(sp - sq) > 1e-9) return Majorization::Incomparable;
  if (below && above) return Majorization::Equal;
  if (below) return Majorization::MajorizedBy;
  if (above) return Majorization::Majorizes;
  return Majorization::Incomparable;
}

}  // namespace entprobe::discrim
