#include "entprobe/mc.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace entprobe;
using namespace entprobe::mc;
using entprobe::discrim::DiscriminationProblem;
using entprobe::testing::pauli;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix rotation(double angle) {
  ComplexMatrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

ComplexVector ket0() {
  ComplexVector v = ComplexVector::Zero(2);
  v(0) = 1.0;
  return v;
}

bool same_report(const TrialReport& a, const TrialReport& b) {
  return a.scenario == b.scenario && a.seed == b.seed && a.trials == b.trials &&
         a.empirical == b.empirical && a.analytic == b.analytic &&
         a.standard_error == b.standard_error && a.z_score == b.z_score;
}

}  // namespace

TEST(rng, substreams_are_reproducible_and_distinct) {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  for (int k = 0; k < 100; ++k) {
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
  }
  CounterRng u(1, 0);
  double sum = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double x = u.uniform();
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
    sum += x;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 4 * std::sqrt(1.0 / 12 / 100000));
}

TEST(deterministic_sum, independent_of_thread_count) {
  const auto f = [](CounterRng& rng) { return rng.normal(); };
  const double one = deterministic_sum(12345, 9, f, 1);
  EXPECT_EQ(one, deterministic_sum(12345, 9, f, 4));
  EXPECT_EQ(one, deterministic_sum(12345, 9, f, 3));
  EXPECT_NE(one, deterministic_sum(12345, 10, f, 1));
  EXPECT_EQ(deterministic_sum(0, 9, f, 2), 0.0);
  EXPECT_NEAR(deterministic_sum(100000, 3, [](CounterRng&) { return 0.1; }, 2), 10000.0, 1e-9);
}

TEST(thread_count, reads_environment) {
  ::setenv("ENTPROBE_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3u);
  ::setenv("ENTPROBE_THREADS", "junk", 1);
  EXPECT_GE(thread_count(), 1u);
  ::unsetenv("ENTPROBE_THREADS");
  EXPECT_GE(thread_count(), 1u);
}

TEST(sample_helstrom, bell_outputs_never_err) {
  const DiscriminationProblem p(pauli('x'), pauli('z'));
  const auto report = sample_helstrom(p, ProbeState::maximally_entangled(2), 5000, 1);
  EXPECT_EQ(report.empirical, 0.0);
  EXPECT_NEAR(report.analytic, 0.0, 1e-15);
  EXPECT_LE(std::abs(report.z_score), 4.0);
}

TEST(sample_helstrom, overlap_cos_quarter_pi) {
  const DiscriminationProblem p(ComplexMatrix::Identity(2, 2), rotation(kPi / 4));
  const auto report = sample_helstrom(p, ket0(), 100000, 2024);
  EXPECT_NEAR(report.analytic, 0.14644660940672627, 1e-15);
  EXPECT_LE(std::abs(report.z_score), 4.0);
  EXPECT_NEAR(report.empirical, 0.1464, 0.005);
  EXPECT_EQ(report.rng, "splitmix64-counter");
  EXPECT_EQ(report.gaussian_method, "box-muller");
}

TEST(sample_helstrom, deterministic_across_runs_and_threads) {
  const DiscriminationProblem p(ComplexMatrix::Identity(2, 2), rotation(0.6), 0.3, 0.7);
  ::setenv("ENTPROBE_THREADS", "1", 1);
  const auto a = sample_helstrom(p, ket0(), 20000, 77);
  ::setenv("ENTPROBE_THREADS", "4", 1);
  const auto b = sample_helstrom(p, ket0(), 20000, 77);
  ::unsetenv("ENTPROBE_THREADS");
  const auto c = sample_helstrom(p, ket0(), 20000, 77);
  EXPECT_TRUE(same_report(a, b));
  EXPECT_TRUE(same_report(a, c));
  EXPECT_THROW(sample_helstrom(p, ket0(), 0, 1), DomainError);
}

TEST(sample_helstrom, soundness_over_seeds) {
  const DiscriminationProblem p(ComplexMatrix::Identity(2, 2), rotation(0.9), 0.4, 0.6);
  int within = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto report = sample_helstrom(p, ket0(), 4000, seed);
    if (std::abs(report.z_score) <= 4.0) ++within;
    // Never beats the bound by more than 4 standard errors.
    EXPECT_GE(report.empirical, report.analytic - 4 * report.standard_error);
  }
  EXPECT_GE(within, 49);
}

TEST(sample_heterodyne, examples) {
  const auto vac =
      sample_heterodyne(0.0, {0.5, -0.5}, gauss::NoiseSpec::none(2), Scheme::Unentangled, 100000, 5);
  EXPECT_NEAR(vac.analytic, 1.0, 1e-14);
  EXPECT_LE(std::abs(vac.z_score), 4.0);

  const double x = std::tanh(1.0);
  const auto ent =
      sample_heterodyne(x, {0.0, 0.0}, gauss::NoiseSpec::none(2), Scheme::Entangled, 100000, 6);
  EXPECT_NEAR(ent.analytic, std::exp(-2.0), 1e-12);
  EXPECT_LE(std::abs(ent.z_score), 4.0);
}

TEST(sample_heterodyne, noise_beyond_one_photon_removes_advantage) {
  for (double x : {0.1, 0.5, 0.9, 0.999}) {
    const double ent = heterodyne_variance_closed_form(x, scheme_noise(Scheme::Entangled, 1.0),
                                                       Scheme::Entangled);
    const double un = heterodyne_variance_closed_form(x, scheme_noise(Scheme::Unentangled, 1.0),
                                                      Scheme::Unentangled);
    EXPECT_GT(ent, un);
  }
  const auto noise = scheme_noise(Scheme::Entangled, 0.3);
  EXPECT_EQ(noise.nbar_per_mode, (std::vector<double>{0.3, 0.3}));
  EXPECT_EQ(scheme_noise(Scheme::Unentangled, 0.3).nbar_per_mode,
            (std::vector<double>{0.3, 0.0}));
}

TEST(sample_heterodyne, soundness_over_seeds) {
  int within = 0;
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const auto report = sample_heterodyne(0.6, {1.0, 0.2}, scheme_noise(Scheme::Entangled, 0.4),
                                          Scheme::Entangled, 2000, seed);
    if (std::abs(report.z_score) <= 4.0) ++within;
  }
  EXPECT_GE(within, 49);
}

TEST(sample_heterodyne, deterministic) {
  const auto a = sample_heterodyne(0.3, {0.1, 0.1}, scheme_noise(Scheme::Entangled, 0.2),
                                   Scheme::Entangled, 3000, 11);
  const auto b = sample_heterodyne(0.3, {0.1, 0.1}, scheme_noise(Scheme::Entangled, 0.2),
                                   Scheme::Entangled, 3000, 11);
  EXPECT_TRUE(same_report(a, b));
}

TEST(stability_scan, columns) {
  const std::vector<double> grid{-0.1, -0.05, 0.0, 0.05, 0.1};
  const double s = 2.0;
  const double x = matched_tmsv_parameter(s);
  EXPECT_NEAR(2 * x * x / (1 - x * x), std::pow(std::sinh(s), 2), 1e-10);
  const auto rows = stability_scan(s, x, grid);
  ASSERT_EQ(rows.size(), grid.size());
  for (const auto& row : rows) {
    const double expect = 0.25 * (std::exp(2 * s) * std::pow(std::sin(row.phi), 2) +
                                  std::exp(-2 * s) * std::pow(std::cos(row.phi), 2));
    EXPECT_NEAR(row.squeezed_variance, expect, 1e-14 * std::exp(2 * s));
    EXPECT_NEAR(row.entangled_variance, rows.front().entangled_variance, 1e-12);
    EXPECT_NEAR(row.entangled_variance, gauss::epr_variance(x), 1e-12);
    EXPECT_NEAR(row.squeezed_photons, row.entangled_photons, 1e-10);
  }
  EXPECT_NEAR(rows[2].squeezed_variance, std::exp(-2 * s) / 4, 1e-16);
  EXPECT_NEAR(rows[3].squeezed_variance / rows[2].squeezed_variance, 8.443688790843755, 1e-10);
  EXPECT_THROW(stability_scan(s, x, std::vector<double>{}), DomainError);
}
