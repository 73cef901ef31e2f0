#include "entprobe/mc.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <thread>

namespace entprobe::mc {

namespace {

constexpr std::uint64_t kBlockSize = 1024;

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw DomainError("at least one trial is required");
}

double z_score(double empirical, double analytic, double standard_error) {
  return (empirical - analytic) / standard_error;
}

TrialReport helstrom_report(const discrim::DiscriminationProblem& p, const ComplexVector& psi1,
                            const ComplexVector& psi2, double analytic, std::uint64_t trials,
                            std::uint64_t seed) {
  require_trials(trials);
  const ComplexMatrix gamma =
      p.p1 * psi1 * psi1.adjoint() - p.p2 * psi2 * psi2.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((gamma + gamma.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) throw NumericalError("sample_helstrom: eigensolver failed");
  ComplexMatrix guess_first = ComplexMatrix::Zero(gamma.rows(), gamma.cols());
  for (Index k = 0; k < gamma.rows(); ++k) {
    if (solver.eigenvalues()(k) > 0.0) {
      const ComplexVector v = solver.eigenvectors().col(k);
      guess_first += v * v.adjoint();
    }
  }
  // Born probabilities of answering "1" under each hypothesis.
  const double q1 = std::clamp(psi1.dot(guess_first * psi1).real(), 0.0, 1.0);
  const double q2 = std::clamp(psi2.dot(guess_first * psi2).real(), 0.0, 1.0);
  const double prior1 = p.p1;

  const double errors = deterministic_sum(trials, seed, [&](CounterRng& rng) {
    const bool first = rng.uniform() < prior1;
    const bool answer_first = rng.uniform() < (first ? q1 : q2);
    return answer_first != first ? 1.0 : 0.0;
  });

  TrialReport r;
  r.scenario = "helstrom";
  r.seed = seed;
  r.trials = trials;
  r.empirical = errors / static_cast<double>(trials);
  r.analytic = analytic;
  const double n = static_cast<double>(trials);
  // Binomial standard error, floored at half a count so z stays finite when
  // the analytic rate is 0.
  r.standard_error = std::max(std::sqrt(analytic * (1.0 - analytic) / n), 0.5 / n);
  r.z_score = z_score(r.empirical, r.analytic, r.standard_error);
  return r;
}

}  // namespace

unsigned thread_count() {
  if (const char* env = std::getenv("ENTPROBE_THREADS")) {
    unsigned value = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double deterministic_sum(std::uint64_t trials, std::uint64_t seed,
                         const std::function<double(CounterRng&)>& per_trial,
                         unsigned threads) {
  const std::uint64_t blocks = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<CompensatedSum> partial(blocks);

  const auto run_block = [&](std::uint64_t b) {
    CompensatedSum acc;
    const std::uint64_t end = std::min(trials, (b + 1) * kBlockSize);
    for (std::uint64_t t = b * kBlockSize; t < end; ++t) {
      CounterRng rng(seed, t);
      acc.add(per_trial(rng));
    }
    partial[b] = acc;
  };

  if (threads == 0) threads = thread_count();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(blocks, 1)));
  if (threads <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  CompensatedSum total;
  for (const auto& block : partial) {
    total.add(block.sum);
    total.add(block.carry);
  }
  return total.value();
}

TrialReport sample_helstrom(const discrim::DiscriminationProblem& p, const ProbeState& input,
                            std::uint64_t trials, std::uint64_t seed) {
  if (input.dim() != p.dim()) throw ShapeError("sample_helstrom: probe dimension mismatch");
  const ComplexVector psi1 = linops::vectorize(p.u1 * input.op());
  const ComplexVector psi2 = linops::vectorize(p.u2 * input.op());
  return helstrom_report(p, psi1, psi2, discrim::helstrom_error(p, input), trials, seed);
}

TrialReport sample_helstrom(const discrim::DiscriminationProblem& p, const ComplexVector& local,
                            std::uint64_t trials, std::uint64_t seed) {
  const double analytic = discrim::helstrom_error(p, local);  // validates shape and norm
  return helstrom_report(p, p.u1 * local, p.u2 * local, analytic, trials, seed);
}

gauss::NoiseSpec scheme_noise(Scheme scheme, double nbar_total) {
  return scheme == Scheme::Entangled ? gauss::NoiseSpec({nbar_total, nbar_total})
                                     : gauss::NoiseSpec({nbar_total, 0.0});
}

double heterodyne_variance_closed_form(double x, const gauss::NoiseSpec& noise, Scheme scheme) {
  if (noise.nbar_per_mode.size() != 2) throw ShapeError("expected noise for two modes");
  const double intrinsic = scheme == Scheme::Entangled ? gauss::epr_variance(x) : 1.0;
  return intrinsic + noise.nbar_per_mode[0] + noise.nbar_per_mode[1];
}

TrialReport sample_heterodyne(double x, Complex alpha, const gauss::NoiseSpec& noise,
                              Scheme scheme, std::uint64_t trials, std::uint64_t seed) {
  require_trials(trials);
  const gauss::GaussianState probe = scheme == Scheme::Entangled
                                         ? gauss::make_state(gauss::TwoModeSqueezed{x})
                                         : gauss::make_state(gauss::Vacuum{2});
  const gauss::HeterodyneLaw law = gauss::epr_heterodyne(probe, alpha, noise);
  const Eigen::LLT<Eigen::Matrix2d> chol(law.cov);
  if (chol.info() != Eigen::Success) throw NumericalError("sample_heterodyne: singular law");
  const Eigen::Matrix2d l = chol.matrixL();
  const Complex centre = law.mean;

  const double sum = deterministic_sum(trials, seed, [&](CounterRng& rng) {
    const auto [g1, g2] = rng.normal_pair();
    const Eigen::Vector2d dz = l * Eigen::Vector2d(g1, g2);
    const Complex z = centre + Complex(dz(0), dz(1));
    return std::norm(z - alpha);
  });

  TrialReport r;
  r.scenario = scheme == Scheme::Entangled ? "heterodyne-entangled" : "heterodyne-unentangled";
  r.seed = seed;
  r.trials = trials;
  r.empirical = sum / static_cast<double>(trials);
  r.analytic = heterodyne_variance_closed_form(x, noise, scheme);
  // |z - alpha|^2 is exponential with mean delta^2 for an isotropic law.
  r.standard_error = r.analytic / std::sqrt(static_cast<double>(trials));
  r.z_score = z_score(r.empirical, r.analytic, r.standard_error);
  return r;
}

double matched_tmsv_parameter(double s) {
  const double n = std::sinh(s) * std::sinh(s);
  return std::sqrt(n / (2.0 + n));
}

std::vector<StabilityRow> stability_scan(double s, double x, std::span<const double> phi_grid) {
  if (phi_grid.empty()) throw DomainError("stability_scan: empty phase grid");
  const gauss::GaussianState squeezed = gauss::make_state(gauss::Squeezed{s, 0.0});
  const gauss::GaussianState epr = gauss::make_state(gauss::TwoModeSqueezed{x});
  const double squeezed_photons = gauss::mean_photon_number(squeezed);
  const double entangled_photons = gauss::mean_photon_number(epr);

  std::vector<StabilityRow> rows;
  rows.reserve(phi_grid.size());
  for (double phi : phi_grid) {
    StabilityRow row;
    row.phi = phi;
    row.squeezed_variance = gauss::quadrature_variance(squeezed, 0, phi);
    row.entangled_variance = gauss::epr_rotated_variance(epr, phi) +
                             gauss::epr_rotated_variance(epr, phi + std::numbers::pi / 2.0);
    row.squeezed_photons = squeezed_photons;
    row.entangled_photons = entangled_photons;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace entprobe::mc
