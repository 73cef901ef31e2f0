#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "entprobe/discrim.hpp"
#include "entprobe/gauss.hpp"
#include "entprobe/rng.hpp"

namespace entprobe::mc {

struct TrialReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  double empirical = 0.0;
  double analytic = 0.0;
  double standard_error = 0.0;  // from the analytic (plug-in) variance
  double z_score = 0.0;
  std::string rng = CounterRng::kName;
  std::string gaussian_method = CounterRng::kGaussianMethod;
};

/// Worker threads used by the samplers: ENTPROBE_THREADS when set to a
/// positive integer, otherwise the hardware concurrency.
unsigned thread_count();

/// Sum over trials t = 0..trials-1 of `per_trial(rng_t)` where rng_t is the
/// substream (seed, t). Trials are summed in fixed blocks with compensated
/// summation and blocks are combined in order, so the result is identical
/// for any thread count.
double deterministic_sum(std::uint64_t trials, std::uint64_t seed,
                         const std::function<double(CounterRng&)>& per_trial,
                         unsigned threads = 0);

/// Samples the binary Helstrom measurement (projector onto the positive part
/// of p1 rho1 - p2 rho2) and compares the error rate with the closed form.
/// Throws DomainError for trials == 0.
TrialReport sample_helstrom(const discrim::DiscriminationProblem& p, const ProbeState& input,
                            std::uint64_t trials, std::uint64_t seed);
TrialReport sample_helstrom(const discrim::DiscriminationProblem& p, const ComplexVector& local,
                            std::uint64_t trials, std::uint64_t seed);

enum class Scheme { Entangled, Unentangled };

/// Per-mode noise of a scheme: nbar_T on both modes of the entangled probe,
/// nbar_T on the probe mode only (noiseless ancilla) otherwise.
gauss::NoiseSpec scheme_noise(Scheme scheme, double nbar_total);

/// Closed-form complex-plane variance: Delta^2 + n1 + n2 (entangled) or
/// 1 + n1 + n2 (unentangled).
double heterodyne_variance_closed_form(double x, const gauss::NoiseSpec& noise, Scheme scheme);

/// Samples z from the outcome law of gauss::epr_heterodyne and compares the
/// mean of |z - alpha|^2 with the closed form.
TrialReport sample_heterodyne(double x, Complex alpha, const gauss::NoiseSpec& noise,
                              Scheme scheme, std::uint64_t trials, std::uint64_t seed);

struct StabilityRow {
  double phi = 0.0;
  double squeezed_variance = 0.0;
  double entangled_variance = 0.0;
  double squeezed_photons = 0.0;
  double entangled_photons = 0.0;
};

/// Squeezed probe read out along X_phi against the EPR pair of tmsv(x) read
/// out with the same phase offset. Throws DomainError for an empty grid.
std::vector<StabilityRow> stability_scan(double s, double x, std::span<const double> phi_grid);

/// x with 2x^2/(1 - x^2) = sinh^2 s.
double matched_tmsv_parameter(double s);

}  // namespace entprobe::mc
