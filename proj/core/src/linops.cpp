#include "entprobe/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace entprobe {
namespace linops {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeError(std::string(what) + ": expected a non-empty square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Eigenvalue gaps below this fraction of the spread are merged into one
// cluster and resolved by the other member of the commuting pair.
constexpr double kClusterGap = 1e-6;
// Both restricted generators below this spread: the subspace is an eigenspace.
constexpr double kDegenerateSpread = 1e-13;

double spread_of(const Eigen::VectorXd& ascending) {
  return ascending.size() == 0 ? 0.0 : ascending(ascending.size() - 1) - ascending(0);
}

// Splits span(basis) into joint eigenspaces of the commuting Hermitian pair
// (herm, skew). Each level diagonalizes whichever restricted generator has the
// larger spread, after centring and rescaling, so accuracy is relative to the
// separation still left to resolve.
void split_joint(const ComplexMatrix& herm, const ComplexMatrix& skew,
                 const ComplexMatrix& basis, std::vector<ComplexVector>& out) {
  const Index k = basis.cols();
  if (k == 1) {
    out.emplace_back(basis.col(0));
    return;
  }
  const ComplexMatrix h = basis.adjoint() * herm * basis;
  const ComplexMatrix s = basis.adjoint() * skew * basis;
  const Eigen::VectorXd h_eval = hermitian_eigenvalues(h);
  const Eigen::VectorXd s_eval = hermitian_eigenvalues(s);
  const double h_spread = spread_of(h_eval);
  const double s_spread = spread_of(s_eval);
  if (std::max(h_spread, s_spread) < kDegenerateSpread) {
    for (Index c = 0; c < k; ++c) out.emplace_back(basis.col(c));
    return;
  }

  const bool use_h = h_spread >= s_spread;
  const ComplexMatrix& gen = use_h ? h : s;
  const double spread = use_h ? h_spread : s_spread;
  const double centre = gen.diagonal().real().mean();
  ComplexMatrix scaled = (gen - centre * ComplexMatrix::Identity(k, k)) / spread;
  scaled = (scaled + scaled.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(scaled);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_unitary: Hermitian eigensolver failed");
  }
  const Eigen::VectorXd& eval = solver.eigenvalues();
  const ComplexMatrix rotated = basis * solver.eigenvectors();

  Index start = 0;
  while (start < k) {
    Index end = start + 1;
    while (end < k && eval(end) - eval(end - 1) < kClusterGap) ++end;
    if (start == 0 && end == k) {
      // Cannot happen for a unit spread; guard against NaN input.
      throw NumericalError("eig_unitary: failed to separate eigenspaces");
    }
    split_joint(herm, skew, rotated.middleCols(start, end - start), out);
    start = end;
  }
}

}  // namespace

ComplexMatrix identity(Index d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, Index cap) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > cap || cols > cap) {
    throw SizeError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " exceeds dimension cap " + std::to_string(cap));
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector vectorize(const ComplexMatrix& a) {
  require_square(a, "vectorize");
  const Index d = a.rows();
  ComplexVector v(d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) v(i * d + j) = a(i, j);
  }
  return v;
}

ComplexMatrix devectorize(const ComplexVector& v, Index d) {
  if (d <= 0 || v.size() != d * d) {
    throw ShapeError("devectorize: vector of length " + std::to_string(v.size()) +
                     " is not d^2 for d = " + std::to_string(d));
  }
  ComplexMatrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) a(i, j) = v(i * d + j);
  }
  return a;
}

Complex double_ket_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("double_ket_inner: operand shapes differ");
  }
  return (a.adjoint() * b).trace();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index d1, Index d2,
                            Subsystem traced) {
  if (d1 <= 0 || d2 <= 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw ShapeError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " + std::to_string(d1 * d2) +
                     " square");
  }
  if (traced == Subsystem::First) {
    ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
    for (Index i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
    return out;
  }
  ComplexMatrix out(d1, d1);
  for (Index i = 0; i < d1; ++i) {
    for (Index k = 0; k < d1; ++k) out(i, k) = m.block(i * d2, k * d2, d2, d2).trace();
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  return max_abs(u.adjoint() * u - identity(u.rows())) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_density(const ComplexMatrix& rho, double tol) {
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
  return hermitian_eigenvalues(rho).minCoeff() >= -tol;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

Index numerical_rank(std::span<const double> sv) {
  if (sv.empty()) return 0;
  const double largest = *std::max_element(sv.begin(), sv.end());
  if (largest <= 0.0) return 0;
  return static_cast<Index>(std::count_if(
      sv.begin(), sv.end(), [&](double s) { return s > kRankThreshold * largest; }));
}

Index numerical_rank(const ComplexMatrix& m) { return numerical_rank(singular_values(m)); }

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigenvalues: eigensolver failed");
  }
  return solver.eigenvalues();
}

double shannon_entropy_bits(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  require_square(rho, "von_neumann_entropy");
  if (!is_density(rho)) {
    throw DomainError("von_neumann_entropy: input is not a density matrix");
  }
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
  const double h = shannon_entropy_bits({ev.data(), static_cast<std::size_t>(ev.size())});
  return std::clamp(h, 0.0, std::log2(static_cast<double>(rho.rows())));
}

UnitaryEigen eig_unitary(const ComplexMatrix& u, double tol) {
  require_square(u, "eig_unitary");
  if (!is_unitary(u, tol)) {
    throw DomainError("eig_unitary: matrix is not unitary within tolerance");
  }
  const Index d = u.rows();
  const ComplexMatrix herm = (u + u.adjoint()) / 2.0;
  const ComplexMatrix skew = (u - u.adjoint()) / Complex(0.0, 2.0);

  std::vector<ComplexVector> columns;
  columns.reserve(static_cast<std::size_t>(d));
  split_joint(herm, skew, identity(d), columns);

  UnitaryEigen out;
  out.vectors.resize(d, d);
  out.phases.reserve(static_cast<std::size_t>(d));
  for (Index c = 0; c < d; ++c) {
    const ComplexVector& v = columns[static_cast<std::size_t>(c)];
    out.vectors.col(c) = v;
    double phase = std::arg(v.dot(u * v));
    if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
    out.phases.push_back(phase);
  }
  return out;
}

std::vector<double> schmidt_coefficients(const ProbeState& p) {
  return singular_values(p.op());
}

Index schmidt_number(const ProbeState& p) { return numerical_rank(schmidt_coefficients(p)); }

}  // namespace linops

namespace {
constexpr double kNormTolerance = 1e-10;
}

ProbeState::ProbeState(ComplexMatrix e) : e_(std::move(e)) {
  if (e_.rows() != e_.cols() || e_.rows() == 0) {
    throw ShapeError("ProbeState: operator representative must be square");
  }
  const double norm2 = e_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw DomainError("ProbeState: Tr[E^dagger E] = " + std::to_string(norm2) + ", expected 1");
  }
}

ProbeState ProbeState::normalized(ComplexMatrix e) {
  const double n = e.norm();
  if (!(n > 0.0)) throw DomainError("ProbeState::normalized: zero operator");
  return ProbeState(e / n);
}

ProbeState ProbeState::maximally_entangled(Index d) {
  if (d <= 0) throw ShapeError("ProbeState::maximally_entangled: d must be positive");
  return ProbeState(linops::identity(d) / std::sqrt(static_cast<double>(d)));
}

ProbeState ProbeState::from_schmidt(std::span<const double> coefficients, Index d) {
  if (static_cast<Index>(coefficients.size()) > d) {
    throw ShapeError("ProbeState::from_schmidt: more coefficients than the dimension");
  }
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (coefficients[k] < 0.0) {
      throw DomainError("ProbeState::from_schmidt: negative coefficient");
    }
    e(static_cast<Index>(k), static_cast<Index>(k)) = coefficients[k];
  }
  return normalized(std::move(e));
}

ProbeState ProbeState::product(const ComplexVector& local) {
  const Index d = local.size();
  if (d == 0) throw ShapeError("ProbeState::product: empty vector");
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e.col(0) = local;
  return normalized(std::move(e));
}

}  // namespace entprobe
