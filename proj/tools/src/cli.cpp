#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "entprobe/discrim.hpp"
#include "entprobe/gauss.hpp"
#include "entprobe/hull.hpp"
#include "entprobe/mc.hpp"
#include "table.hpp"
#include "unitary_spec.hpp"

namespace entprobe::cli {

namespace {

using discrim::DiscriminationProblem;

struct Options {
  std::string format = "csv";
  std::string output;

  int d = 2;
  std::string u1, u2, priors;
  int n_max = 20;
  std::string schmidt = "max";
  double x = 0.0;
  double nbar = 0.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string alpha = "0,0";
  std::string x_grid = "0:0.9:10";
  double s = 1.0;
  std::optional<double> stability_x;
  std::string phi_grid = "-0.1:0.1:21";
};

std::pair<double, double> parse_priors(const std::string& text) {
  if (text.empty()) return {0.5, 0.5};
  const auto p = parse_list(text);
  if (p.size() != 2) throw DomainError("--priors takes two values p1,p2");
  return {p[0], p[1]};
}

Table pauli_demo() {
  const auto group = discrim::pauli_group();
  const auto bell = ProbeState::maximally_entangled(2);
  const auto outs = discrim::outputs(group, bell);
  const ComplexMatrix gram = discrim::output_gram(group, bell);
  Table t{{"g", "h", "gram_re", "gram_im", "p_error"}, {}};
  for (std::size_t g = 0; g < group.size(); ++g) {
    for (std::size_t h = 0; h < group.size(); ++h) {
      const DiscriminationProblem p(group[g], group[h]);
      const auto gi = static_cast<Index>(g), hi = static_cast<Index>(h);
      t.add_row({group.labels()[g], group.labels()[h], gram(gi, hi).real(), gram(gi, hi).imag(),
                 discrim::helstrom_error(p, bell)});
    }
  }
  return t;
}

Table wh_group(int d) {
  if (d < 2 || d > 16) throw DomainError("--d must be in [2, 16]");
  const auto group = discrim::weyl_heisenberg_group(d);
  const ComplexMatrix gram =
      discrim::output_gram(group, ProbeState::maximally_entangled(static_cast<Index>(d)));
  const auto n = static_cast<Index>(group.size());
  Table t{{"index", "m", "n", "max_trace_deviation", "max_gram_deviation"}, {}};
  for (Index a = 0; a < n; ++a) {
    double trace_dev = 0.0, gram_dev = 0.0;
    for (Index b = 0; b < n; ++b) {
      const Complex tr = (group[static_cast<std::size_t>(a)].adjoint() *
                          group[static_cast<std::size_t>(b)])
                             .trace();
      const double expect = a == b ? 1.0 : 0.0;
      trace_dev = std::max(trace_dev, std::abs(tr - expect * d));
      gram_dev = std::max(gram_dev, std::abs(gram(a, b) - expect));
    }
    t.add_row({static_cast<std::int64_t>(a), static_cast<std::int64_t>(a / d),
               static_cast<std::int64_t>(a % d), trace_dev, gram_dev});
  }
  return t;
}

Table discriminate(const Options& o) {
  const auto [p1, p2] = parse_priors(o.priors);
  const DiscriminationProblem p(parse_unitary(o.u1), parse_unitary(o.u2), p1, p2);
  const ComplexMatrix w = p.w();
  const auto poly = discrim::min_overlap_r(w);
  const ComplexVector psi = discrim::optimal_pair_input(w);
  Table t{{"dim", "r", "spread", "p_error", "p_error_max_entangled"}, {}};
  for (Index k = 0; k < psi.size(); ++k) {
    t.columns.push_back("input_re_" + std::to_string(k));
    t.columns.push_back("input_im_" + std::to_string(k));
  }
  std::vector<Cell> row{static_cast<std::int64_t>(p.dim()), poly.r, poly.spread,
                        discrim::helstrom_error(p, psi),
                        discrim::helstrom_error(p, ProbeState::maximally_entangled(p.dim()))};
  for (Index k = 0; k < psi.size(); ++k) {
    row.emplace_back(psi(k).real());
    row.emplace_back(psi(k).imag());
  }
  t.add_row(std::move(row));
  return t;
}

Table ncopies(const Options& o) {
  if (o.n_max < 1 || o.n_max > 10000) throw DomainError("--n-max must be in [1, 10000]");
  const auto [p1, p2] = parse_priors(o.priors);
  const DiscriminationProblem p(parse_unitary(o.u1), parse_unitary(o.u2), p1, p2);
  const auto report = discrim::copies_for_perfect(p, o.n_max);
  const auto phases = discrim::distinct_phases(linops::eig_unitary(p.w()).phases);
  Table t{{"n", "spread", "r", "p_error", "perfect"}, {}};
  if (report.spreads.empty()) {
    // W proportional to the identity: the outputs coincide for every N.
    t.add_row({std::int64_t{1}, 0.0, 1.0, discrim::helstrom_from_overlap(p1, p2, 1.0), false});
    return t;
  }
  for (std::size_t k = 0; k < report.spreads.size(); ++k) {
    const int n = static_cast<int>(k) + 1;
    std::vector<hull::Point> pts;
    for (double s : discrim::tensor_power_phase_sums(phases, n)) pts.push_back(std::polar(1.0, s));
    const double r = hull::closest_to_origin(hull::convex_hull(pts)).distance;
    t.add_row({static_cast<std::int64_t>(n), report.spreads[k], r,
               discrim::helstrom_from_overlap(p1, p2, r), bool(report.origin_in_hull[k])});
  }
  return t;
}

ProbeState schmidt_probe(const std::string& spec, Index d) {
  if (spec == "max") return ProbeState::maximally_entangled(d);
  if (spec == "product") return ProbeState::from_schmidt(std::vector<double>{1.0}, d);
  const auto c = parse_list(spec);
  if (static_cast<Index>(c.size()) > d) throw DomainError("more Schmidt coefficients than --d");
  double norm = 0.0;
  for (double v : c) {
    if (v < 0.0) throw DomainError("Schmidt coefficients must be non-negative");
    norm += v * v;
  }
  if (norm == 0.0) throw DomainError("Schmidt coefficients are all zero");
  return ProbeState::from_schmidt(c, d);
}

Table covariant(const Options& o) {
  if (o.d < 2 || o.d > 12) throw DomainError("--d must be in [2, 12]");
  const Index d = o.d;
  const ProbeState e = schmidt_probe(o.schmidt, d);
  const auto group = discrim::weyl_heisenberg_group(d);

  // Rank-one seed |V>><<V| with V the unitary polar factor of E maximizes
  // the likelihood over such seeds.
  Eigen::JacobiSVD<ComplexMatrix> svd(e.op(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix v = svd.matrixU() * svd.matrixV().adjoint();
  const ComplexVector vv = linops::vectorize(v);
  const ComplexMatrix seed = vv * vv.adjoint();
  const auto povm = discrim::covariant_povm(group, seed);
  ComplexMatrix total = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& pi : povm) total += pi;

  Table t{{"d", "schmidt_rank", "chi", "chi_closed_form", "span_dimension", "likelihood",
           "likelihood_bound", "povm_completeness_error"},
          {}};
  t.add_row({static_cast<std::int64_t>(d), static_cast<std::int64_t>(linops::schmidt_number(e)),
             discrim::holevo_chi(group, e), discrim::holevo_chi_closed_form(e),
             static_cast<std::int64_t>(discrim::output_span_dimension(group, e)),
             discrim::average_likelihood(seed, e), static_cast<double>(d),
             linops::max_abs(total - linops::identity(d * d))});
  return t;
}

Table cv_estimate(const Options& o) {
  if (!(o.x >= 0.0 && o.x < 1.0)) throw DomainError("--x must be in [0, 1)");
  if (!(o.nbar >= 0.0)) throw DomainError("--nbar must be non-negative");
  if (o.trials < 1) throw DomainError("--trials must be positive");
  const auto a = parse_list(o.alpha);
  if (a.size() != 2) throw DomainError("--alpha takes re,im");
  const Complex alpha(a[0], a[1]);
  Table t{{"scheme", "x", "nbar", "trials", "seed", "empirical", "analytic", "standard_error",
           "z_score"},
          {}};
  for (auto scheme : {mc::Scheme::Entangled, mc::Scheme::Unentangled}) {
    const auto r = mc::sample_heterodyne(o.x, alpha, mc::scheme_noise(scheme, o.nbar), scheme,
                                         o.trials, o.seed);
    t.add_row({std::string(scheme == mc::Scheme::Entangled ? "entangled" : "unentangled"), o.x,
               o.nbar, static_cast<std::int64_t>(r.trials), static_cast<std::int64_t>(r.seed),
               r.empirical, r.analytic, r.standard_error, r.z_score});
  }
  return t;
}

Table threshold_scan(const Options& o) {
  Table t{{"x", "delta2", "advantage_nbar", "ppt_nbar_per_mode", "ppt_nbar_closed_form"}, {}};
  for (double x : parse_grid(o.x_grid)) {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("--x-grid values must be in [0, 1)");
    const auto r = gauss::threshold_report(x);
    t.add_row({r.x, r.delta2, r.advantage_nbar, r.ppt_nbar_per_mode, r.ppt_nbar_closed_form});
  }
  return t;
}

Table stability(const Options& o) {
  if (!std::isfinite(o.s) || std::abs(o.s) > 20) throw DomainError("--s must be in [-20, 20]");
  const double x = o.stability_x ? *o.stability_x : mc::matched_tmsv_parameter(o.s);
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("--x must be in [0, 1)");
  const auto grid = parse_grid(o.phi_grid);
  Table t{{"phi", "squeezed_variance", "entangled_variance", "squeezed_photons",
           "entangled_photons"},
          {}};
  for (const auto& row : mc::stability_scan(o.s, x, grid)) {
    t.add_row({row.phi, row.squeezed_variance, row.entangled_variance, row.squeezed_photons,
               row.entangled_photons});
  }
  return t;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Entangled-probe discrimination and estimation experiments", "entprobe"};
  app.set_version_flag("--version", ENTPROBE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", o.output, "Write the table to a file instead of stdout");

  std::vector<std::pair<CLI::App*, std::function<Table()>>> commands;

  auto* pauli = app.add_subcommand("pauli-demo", "Bell outputs of the Pauli group");
  commands.emplace_back(pauli, [] { return pauli_demo(); });

  auto* wh = app.add_subcommand("wh-group", "Orthogonality of the Weyl-Heisenberg outputs");
  wh->add_option("--d", o.d, "Dimension")->required();
  commands.emplace_back(wh, [&] { return wh_group(o.d); });

  auto* disc = app.add_subcommand("discriminate", "Two-unitary discrimination");
  disc->add_option("--u1", o.u1, "First unitary")->required();
  disc->add_option("--u2", o.u2, "Second unitary")->required();
  disc->add_option("--priors", o.priors, "Priors p1,p2");
  commands.emplace_back(disc, [&] { return discriminate(o); });

  auto* copies = app.add_subcommand("ncopies", "Copies needed for perfect discrimination");
  copies->add_option("--u1", o.u1, "First unitary")->required();
  copies->add_option("--u2", o.u2, "Second unitary")->required();
  copies->add_option("--n-max", o.n_max, "Largest N scanned")->capture_default_str();
  copies->add_option("--priors", o.priors, "Priors p1,p2");
  commands.emplace_back(copies, [&] { return ncopies(o); });

  auto* cov = app.add_subcommand("covariant", "Covariant POVM and Holevo quantity");
  cov->add_option("--d", o.d, "Dimension")->required();
  cov->add_option("--schmidt-spec", o.schmidt, "max, product or c1,c2,...")
      ->capture_default_str();
  commands.emplace_back(cov, [&] { return covariant(o); });

  auto* cv = app.add_subcommand("cv-estimate", "Monte Carlo heterodyne variance");
  cv->add_option("--x", o.x, "Two-mode squeezing parameter")->required();
  cv->add_option("--nbar", o.nbar, "Displacement-noise photons")->required();
  cv->add_option("--trials", o.trials, "Trials")->capture_default_str();
  cv->add_option("--seed", o.seed, "Seed")->capture_default_str();
  cv->add_option("--alpha", o.alpha, "Displacement re,im")->capture_default_str();
  commands.emplace_back(cv, [&] { return cv_estimate(o); });

  auto* thr = app.add_subcommand("threshold-scan", "Advantage and PPT noise thresholds");
  thr->add_option("--x-grid", o.x_grid, "List or start:stop:count")->capture_default_str();
  commands.emplace_back(thr, [&] { return threshold_scan(o); });

  auto* stab = app.add_subcommand("stability", "Phase stability of squeezed and entangled probes");
  stab->add_option("--s", o.s, "Squeezing parameter")->required();
  stab->add_option("--x", o.stability_x, "Two-mode parameter (default: matched photons)");
  stab->add_option("--phi-grid", o.phi_grid, "List or start:stop:count")->capture_default_str();
  commands.emplace_back(stab, [&] { return stability(o); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ENTPROBE_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "entprobe: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  for (auto& [sub, make] : commands) {
    if (!sub->parsed()) continue;
    Table table;
    try {
      table = make();
    } catch (const DomainError& e) {
      err << "entprobe: " << one_line(e.what()) << '\n';
      return kExitUsage;
    } catch (const ShapeError& e) {
      err << "entprobe: " << one_line(e.what()) << '\n';
      return kExitUsage;
    } catch (const SizeError& e) {
      err << "entprobe: " << one_line(e.what()) << '\n';
      return kExitUsage;
    } catch (const UnsupportedRepresentation& e) {
      err << "entprobe: " << one_line(e.what()) << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "entprobe: internal error: " << one_line(e.what()) << '\n';
      return kExitInternal;
    }

    Metadata meta{ENTPROBE_VERSION, sub->get_name(), std::nullopt, {}};
    if (sub == cv) meta.seed = o.seed;
    meta.flags.emplace_back("--format", o.format);
    for (const auto* opt : sub->get_options()) {
      if (opt->count() == 0) continue;
      std::string value;
      for (const auto& r : opt->reduced_results()) value += (value.empty() ? "" : " ") + r;
      meta.flags.emplace_back(opt->get_name(), value);
    }

    std::ofstream file;
    if (!o.output.empty()) {
      file.open(o.output);
      if (!file) {
        err << "entprobe: cannot write '" << o.output << "'\n";
        return kExitUsage;
      }
    }
    std::ostream& sink = o.output.empty() ? out : file;
    if (o.format == "json") {
      write_json(sink, table, meta);
    } else {
      write_csv(sink, table);
    }
    return kExitOk;
  }
  err << "entprobe: no command given\n";
  return kExitUsage;
}

}  // namespace entprobe::cli
