#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qhop/analytics.hpp"
#include "qhop/channel.hpp"
#include "qhop/io.hpp"
#include "qhop/protocol.hpp"
#include "qhop/verification.hpp"

namespace qhop {

enum class Command { Simulate, Analytic, Verify, Sweep, Hetero };

// Which default concurrence grid a sweep walks: the ratio curves only spread
// out near maximal entanglement, the probability curves over a wider range.
enum class SweepKind { Ratio, Probability };

struct RunSpec {
  Command command = Command::Verify;
  ProtocolKind protocol = ProtocolKind::Gmtp;
  std::optional<int> n;     // parties minus one, i.e. hops = 2n
  std::optional<int> hops;  // hop count directly
  std::optional<double> alpha_squared;
  std::optional<double> concurrence;
  std::vector<double> alphas_squared;  // per-hop channel parameters
  std::size_t trials = 100000;
  std::uint64_t seed = 12345;
  std::string format = "csv";
  std::string out_path;  // empty: standard output
  std::vector<int> sweep_n = {1, 5, 10};
  SweepKind sweep_kind = SweepKind::Ratio;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<double> grid_step;

  int resolve_hops() const {
    if (n && hops) {
      throw std::invalid_argument("give --n or --hops, not both");
    }
    if (n) {
      if (*n < 1) throw std::invalid_argument("--n must be >= 1");
      return 2 * *n;
    }
    if (hops) {
      if (*hops < 1) throw std::invalid_argument("--hops must be >= 1");
      return *hops;
    }
    throw std::invalid_argument("need --n or --hops");
  }

  Channel resolve_channel() const {
    if (alpha_squared && concurrence) {
      throw std::invalid_argument("give --alpha2 or --concurrence, not both");
    }
    if (alpha_squared) return Channel::from_alpha_squared(*alpha_squared);
    if (concurrence) return Channel::from_concurrence(*concurrence);
    throw std::invalid_argument("need --alpha2 or --concurrence");
  }

  std::vector<Channel> resolve_chain() const {
    if (!alphas_squared.empty()) {
      if (alpha_squared || concurrence) {
        throw std::invalid_argument(
            "--alphas2 excludes --alpha2/--concurrence");
      }
      std::vector<Channel> chain;
      for (double a2 : alphas_squared) {
        chain.push_back(Channel::from_alpha_squared(a2));
      }
      if (n || hops) {
        if (static_cast<std::size_t>(resolve_hops()) != chain.size()) {
          throw std::invalid_argument(
              "--alphas2 length disagrees with --n/--hops");
        }
      }
      return chain;
    }
    return std::vector<Channel>(static_cast<std::size_t>(resolve_hops()),
                                resolve_channel());
  }
};

// Endpoint-exact affine grid: both ends land exactly on lo and hi, with the
// point count implied by the requested step.
inline std::vector<double> concurrence_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("concurrence_grid: need hi > lo and step > 0");
  }
  const int count = static_cast<int>(std::lround((hi - lo) / step)) + 1;
  if (count < 2) throw std::invalid_argument("concurrence_grid: too few points");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    grid[static_cast<std::size_t>(k)] =
        (lo * (count - 1 - k) + hi * k) / (count - 1);
  }
  return grid;
}

inline std::string render(const Table& t, const std::string& format) {
  if (format == "csv") return to_csv(t);
  if (format == "json") return to_jsonl(t);
  throw std::invalid_argument("format must be csv or json");
}

// Monte Carlo estimate next to the matching closed form.
inline Table cmd_simulate(const RunSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  ChainConfig config;
  config.kind = spec.protocol;
  config.channels = spec.resolve_chain();
  const McResult mc = monte_carlo(config, spec.trials, spec.seed);
  const double closed = spec.protocol == ProtocolKind::Smtp
                            ? smtp_success_probability(config.channels)
                            : gmtp_success_probability(config.channels);
  Table t;
  t.columns = {"protocol", "hops",     "trials",    "seed",       "successes",
               "estimate", "std_error", "closed_form", "abs_error"};
  t.add_row({Cell(to_string(spec.protocol)),
             Cell(static_cast<std::int64_t>(config.channels.size())),
             Cell(mc.trials), Cell(static_cast<std::int64_t>(spec.seed)),
             Cell(mc.successes), Cell(mc.estimate), Cell(mc.std_error),
             Cell(closed), Cell(std::abs(mc.estimate - closed))});
  return t;
}

// Closed-form values for one configuration.
inline Table cmd_analytic(const RunSpec& spec) {
  Table t;
  t.columns = {"hops",   "alpha2", "concurrence", "p_single",
               "p_smtp", "p_gmtp", "ratio",       "p_hetero"};
  if (!spec.alphas_squared.empty()) {
    const std::vector<Channel> chain = spec.resolve_chain();
    const double ps = smtp_success_probability(chain);
    const double pg = gmtp_success_probability(chain);
    Cell hetero = chain.size() == 2
                      ? Cell(gmtp_two_channel_success(chain[0], chain[1]))
                      : Cell();
    t.add_row({Cell(static_cast<std::int64_t>(chain.size())), Cell(), Cell(),
               Cell(), Cell(ps), Cell(pg), Cell(ps > 0.0 ? pg / ps : 0.0),
               hetero});
    return t;
  }
  const int hops = spec.resolve_hops();
  const Channel ch = spec.resolve_channel();
  const double ps = smtp_success_probability(hops, ch);
  const double pg = gmtp_success_probability(hops, ch);
  t.add_row({Cell(static_cast<std::int64_t>(hops)), Cell(ch.alpha_squared()),
             Cell(ch.concurrence()), Cell(2.0 * ch.alpha_squared()), Cell(ps),
             Cell(pg), Cell(ps > 0.0 ? pg / ps : 0.0), Cell()});
  return t;
}

struct VerifyReport {
  Table table;
  bool all_pass = true;
};

namespace detail {

inline void add_check(VerifyReport& report, const std::string& name,
                      const std::string& detail, double expected,
                      double actual, double tolerance) {
  const bool pass = std::abs(actual - expected) <= tolerance;
  report.all_pass = report.all_pass && pass;
  report.table.add_row({Cell(name), Cell(detail), Cell(expected), Cell(actual),
                        Cell(tolerance), Cell(pass)});
}

}  // namespace detail

// Cross-checks of the exact enumerator, the closed forms, and the sampler.
// Exit-code material: every row must pass.
inline VerifyReport cmd_verify(const RunSpec& spec) {
  VerifyReport report;
  report.table.columns = {"check", "detail", "expected",
                          "actual", "tolerance", "pass"};

  RandomSource rng(spec.seed);

  // Correction filters stay trace-complete across random distortions.
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Distortion d(0.05 + 0.95 * rng.next(), 0.05 + 0.95 * rng.next());
      const KrausPair k = correction_kraus(d);
      const Mat2 s =
          k.e_success.adjoint() * k.e_success + k.e_fail.adjoint() * k.e_fail;
      worst = std::max(worst, std::abs(s.m00 - 1.0));
      worst = std::max(worst, std::abs(s.m11 - 1.0));
      worst = std::max(worst, std::abs(s.m01));
      worst = std::max(worst, std::abs(s.m10));
    }
    detail::add_check(report, "kraus_completeness",
                      "max |E_S^dag E_S + E_F^dag E_F - I| over 200 random "
                      "filters",
                      0.0, worst, 1e-12);
  }

  // Bell branch probabilities sum to one on random three-qubit states.
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      std::vector<cplx> amps(8);
      for (cplx& a : amps) a = cplx{rng.next() - 0.5, rng.next() - 0.5};
      const PureState s = PureState::raw(3, std::move(amps)).normalized();
      double sum = 0.0;
      for (const BellBranch& b : bell_branches(s, 0, 1)) sum += b.probability;
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    detail::add_check(report, "bell_branch_normalization",
                      "max |sum of branch probabilities - 1| over 200 random "
                      "states",
                      0.0, worst, 1e-12);
  }

  // Exact enumeration against both closed forms on a small grid.
  for (const ProtocolKind kind : {ProtocolKind::Smtp, ProtocolKind::Gmtp}) {
    double worst = 0.0;
    for (const int parties_n : {1, 2}) {
      for (const double a2 : {0.2, 0.3, 0.45}) {
        ChainConfig config;
        config.kind = kind;
        config.channels.assign(static_cast<std::size_t>(2 * parties_n),
                               Channel::from_alpha_squared(a2));
        const double exact = enumerate_branches(config).success_probability;
        const double closed =
            kind == ProtocolKind::Smtp
                ? smtp_success_probability(2 * parties_n, config.channels[0])
                : gmtp_success_probability(2 * parties_n, config.channels[0]);
        worst = std::max(worst, std::abs(exact - closed));
      }
    }
    detail::add_check(report,
                      kind == ProtocolKind::Smtp ? "oracle_vs_smtp_form"
                                                 : "oracle_vs_gmtp_form",
                      "max |enumeration - closed form|, N in {1,2}, alpha^2 "
                      "in {0.2,0.3,0.45}",
                      0.0, worst, 1e-12);
  }

  // Two unequal channels: enumeration equals the min law.
  {
    double worst = 0.0;
    for (const double a1 : {0.1, 0.25, 0.4}) {
      for (const double a2 : {0.15, 0.3, 0.5}) {
        ChainConfig config;
        config.kind = ProtocolKind::Gmtp;
        config.channels = {Channel::from_alpha_squared(a1),
                           Channel::from_alpha_squared(a2)};
        const double exact = enumerate_branches(config).success_probability;
        const double closed =
            gmtp_two_channel_success(config.channels[0], config.channels[1]);
        worst = std::max(worst, std::abs(exact - closed));
      }
    }
    detail::add_check(report, "hetero_min_law",
                      "max |enumeration - min(2a1^2, 2a2^2)| over 3x3 grid",
                      0.0, worst, 1e-12);
  }

  // Balanced two-hop branches carry exactly the self-corrected weight.
  {
    ChainConfig config;
    config.kind = ProtocolKind::Gmtp;
    config.channels.assign(2, Channel::from_alpha_squared(0.3));
    const ExactResult exact = enumerate_branches(config);
    detail::add_check(report, "error_self_correction",
                      "weight of error-index-1 branches at alpha^2=0.3, "
                      "hops=2",
                      2.0 * 0.3 * 0.7, exact.per_error_index[1], 1e-12);
  }

  // Sampler agrees with the enumerator within 4 sigma.
  for (const ProtocolKind kind : {ProtocolKind::Smtp, ProtocolKind::Gmtp}) {
    ChainConfig config;
    config.kind = kind;
    config.channels.assign(2, Channel::from_alpha_squared(0.3));
    const double exact = enumerate_branches(config).success_probability;
    const std::size_t trials = spec.trials < 1 ? 100000 : spec.trials;
    const McResult mc = monte_carlo(config, trials, derive_seed(spec.seed, 17));
    const double sigma = std::sqrt(exact * (1.0 - exact) /
                                   static_cast<double>(mc.trials));
    detail::add_check(report,
                      kind == ProtocolKind::Smtp ? "mc_vs_oracle_smtp"
                                                 : "mc_vs_oracle_gmtp",
                      "Monte Carlo estimate at alpha^2=0.3, hops=2", exact,
                      mc.estimate, 4.0 * sigma + 1e-12);
  }

  // Success probability must not depend on the teleported state.
  {
    double worst = 0.0;
    ChainConfig config;
    config.kind = ProtocolKind::Gmtp;
    config.channels.assign(3, Channel::from_alpha_squared(0.35));
    const double base = enumerate_branches(config).success_probability;
    for (int i = 0; i < 5; ++i) {
      const cplx a{rng.next() - 0.5, rng.next() - 0.5};
      const cplx b{rng.next() - 0.5, rng.next() - 0.5};
      config.input = PureState::raw(1, {a, b}).normalized();
      worst = std::max(
          worst, std::abs(enumerate_branches(config).success_probability - base));
    }
    detail::add_check(report, "input_independence",
                      "max success-probability shift over 5 random inputs",
                      0.0, worst, 1e-12);
  }

  // Every successful branch reproduces the input exactly.
  {
    double worst_loss = 0.0;
    for (const ProtocolKind kind : {ProtocolKind::Smtp, ProtocolKind::Gmtp}) {
      ChainConfig config;
      config.kind = kind;
      config.channels = {Channel::from_alpha_squared(0.2),
                         Channel::from_alpha_squared(0.4),
                         Channel::from_alpha_squared(0.3)};
      config.input = PureState::qubit(cplx{0.6, 0.0}, cplx{0.0, 0.8});
      const ExactResult exact = enumerate_branches(config);
      worst_loss = std::max(worst_loss, 1.0 - exact.min_success_fidelity);
    }
    detail::add_check(report, "fidelity_on_success",
                      "max (1 - fidelity) over all successful branches",
                      0.0, worst_loss, 1e-10);
  }

  return report;
}

// Plot-ready data: closed-form curves over a concurrence grid.
inline Table cmd_sweep(const RunSpec& spec) {
  double lo = spec.sweep_kind == SweepKind::Ratio ? 0.90 : 0.50;
  double hi = 1.0;
  double step = spec.sweep_kind == SweepKind::Ratio ? 0.001 : 0.005;
  if (spec.grid_min) lo = *spec.grid_min;
  if (spec.grid_max) hi = *spec.grid_max;
  if (spec.grid_step) step = *spec.grid_step;

  std::vector<int> n_list = spec.sweep_n;
  if (spec.n) n_list = {*spec.n};
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("sweep: N values must be >= 1");
  }

  Table t;
  t.columns = {"concurrence", "N", "p_smtp", "p_gmtp", "ratio"};
  for (const int n : n_list) {
    for (const double c : concurrence_grid(lo, hi, step)) {
      const Channel ch = Channel::from_concurrence(c);
      const double ps = smtp_success_probability(2 * n, ch);
      const double pg = gmtp_success_probability(2 * n, ch);
      t.add_row({Cell(c), Cell(static_cast<std::int64_t>(n)), Cell(ps),
                 Cell(pg), Cell(pg / ps)});
    }
  }
  return t;
}

// Two-channel chains: exact enumeration next to the min law.
inline Table cmd_hetero(const RunSpec& spec) {
  std::vector<std::pair<double, double>> pairs;
  if (!spec.alphas_squared.empty()) {
    if (spec.alphas_squared.size() != 2) {
      throw std::invalid_argument("hetero: --alphas2 needs exactly two values");
    }
    pairs.emplace_back(spec.alphas_squared[0], spec.alphas_squared[1]);
  } else {
    for (const double a1 : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      for (const double a2 : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        pairs.emplace_back(a1, a2);
      }
    }
  }

  Table t;
  t.columns = {"alpha1_sq",     "alpha2_sq", "p_gmtp_exact",
               "p_gmtp_closed", "p_smtp",    "matches"};
  for (const auto& [a1, a2] : pairs) {
    ChainConfig config;
    config.kind = ProtocolKind::Gmtp;
    config.channels = {Channel::from_alpha_squared(a1),
                       Channel::from_alpha_squared(a2)};
    const double exact = enumerate_branches(config).success_probability;
    const double closed =
        gmtp_two_channel_success(config.channels[0], config.channels[1]);
    const double ps = smtp_success_probability(config.channels);
    t.add_row({Cell(a1), Cell(a2), Cell(exact), Cell(closed), Cell(ps),
               Cell(std::abs(exact - closed) <= 1e-12)});
  }
  return t;
}

}  // namespace qhop
