// Command-line front end: Monte Carlo runs, closed-form tables, oracle
// cross-checks, concurrence sweeps, and two-channel comparisons.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhop/qhop.hpp"

namespace {

int emit(const qhop::Table& table, const qhop::RunSpec& spec) {
  const std::string text = qhop::render(table, spec.format);
  if (spec.out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(spec.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << spec.out_path << " for writing\n";
    return 1;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Multi-hop qubit teleportation over partially entangled channels: "
      "exact simulation, closed forms, and self-verification"};
  app.require_subcommand(1);

  std::string protocol = "gmtp";
  int n_value = 0;
  int hops_value = 0;
  double alpha2 = 0.0;
  double concurrence = 0.0;
  std::vector<double> alphas2;
  std::size_t trials = 100000;
  std::uint64_t seed = 12345;
  std::string format = "csv";
  std::string out_path;
  std::vector<int> sweep_n;
  std::string sweep_kind = "ratio";
  double cmin = 0.0;
  double cmax = 0.0;
  double cstep = 0.0;

  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "Write output to a file");
  };
  const auto add_channel = [&](CLI::App* cmd) {
    cmd->add_option("--alpha2", alpha2,
                    "Channel parameter alpha^2 (smaller Schmidt weight)");
    cmd->add_option("--concurrence", concurrence, "Channel concurrence");
    cmd->add_option("--alphas2", alphas2,
                    "Per-hop alpha^2 list for an inhomogeneous chain")
        ->delimiter(',');
  };
  const auto add_length = [&](CLI::App* cmd) {
    cmd->add_option("--n", n_value, "Relay pairs: the chain has 2n hops");
    cmd->add_option("--hops", hops_value, "Hop count directly");
  };

  CLI::App* sim = app.add_subcommand(
      "simulate", "Monte Carlo estimate next to the closed form");
  sim->add_option("--protocol", protocol, "smtp or gmtp")
      ->check(CLI::IsMember({"smtp", "gmtp"}));
  add_length(sim);
  add_channel(sim);
  sim->add_option("--trials", trials, "Number of protocol runs");
  sim->add_option("--seed", seed, "Master seed; trials reseed independently");
  add_format(sim);

  CLI::App* ana =
      app.add_subcommand("analytic", "Closed-form success probabilities");
  add_length(ana);
  add_channel(ana);
  add_format(ana);

  CLI::App* ver = app.add_subcommand(
      "verify", "Cross-check enumerator, closed forms, and sampler; "
                "exit 0 only if every row passes");
  ver->add_option("--trials", trials, "Monte Carlo trials per check");
  ver->add_option("--seed", seed, "Master seed");
  add_format(ver);

  CLI::App* swp = app.add_subcommand(
      "sweep", "Success probabilities and ratio over a concurrence grid");
  swp->add_option("--n", sweep_n, "N values, one curve each")->delimiter(',');
  swp->add_option("--kind", sweep_kind,
                  "Default grid: ratio (0.90..1.00) or prob (0.50..1.00)")
      ->check(CLI::IsMember({"ratio", "prob"}));
  swp->add_option("--cmin", cmin, "Grid lower end");
  swp->add_option("--cmax", cmax, "Grid upper end");
  swp->add_option("--cstep", cstep, "Grid step");
  add_format(swp);

  CLI::App* het = app.add_subcommand(
      "hetero", "Two-channel chain: exact result next to the min law");
  het->add_option("--alphas2", alphas2, "The two channels' alpha^2 values")
      ->delimiter(',');
  add_format(het);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  CLI::App* active = app.get_subcommands().front();
  const auto given = [&](const char* name) {
    const CLI::Option* o = active->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };

  qhop::RunSpec spec;
  spec.protocol = protocol == "smtp" ? qhop::ProtocolKind::Smtp
                                     : qhop::ProtocolKind::Gmtp;
  if (given("--n") && active != swp) spec.n = n_value;
  if (given("--hops")) spec.hops = hops_value;
  if (given("--alpha2")) spec.alpha_squared = alpha2;
  if (given("--concurrence")) spec.concurrence = concurrence;
  spec.alphas_squared = alphas2;
  spec.trials = trials;
  spec.seed = seed;
  spec.format = format;
  spec.out_path = out_path;
  if (!sweep_n.empty()) spec.sweep_n = sweep_n;
  spec.sweep_kind = sweep_kind == "prob" ? qhop::SweepKind::Probability
                                         : qhop::SweepKind::Ratio;
  if (given("--cmin")) spec.grid_min = cmin;
  if (given("--cmax")) spec.grid_max = cmax;
  if (given("--cstep")) spec.grid_step = cstep;

  try {
    if (active == sim) {
      spec.command = qhop::Command::Simulate;
      return emit(qhop::cmd_simulate(spec), spec);
    }
    if (active == ana) {
      spec.command = qhop::Command::Analytic;
      return emit(qhop::cmd_analytic(spec), spec);
    }
    if (active == ver) {
      spec.command = qhop::Command::Verify;
      const qhop::VerifyReport report = qhop::cmd_verify(spec);
      const int rc = emit(report.table, spec);
      if (rc != 0) return rc;
      return report.all_pass ? 0 : 1;
    }
    if (active == swp) {
      spec.command = qhop::Command::Sweep;
      return emit(qhop::cmd_sweep(spec), spec);
    }
    spec.command = qhop::Command::Hetero;
    return emit(qhop::cmd_hetero(spec), spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
