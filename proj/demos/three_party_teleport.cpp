// Walkthrough: Alice sends an unknown qubit to Charlie through Bob over two
// partially entangled channels, once with per-hop filtering (smtp) and once
// with a single receiver-side correction (gmtp).

#include <cstdio>

#include "qhop/qhop.hpp"

namespace {

void print_transcript(const qhop::Transcript& t, const qhop::PureState& input) {
  for (const qhop::HopRecord& h : t.hops) {
    std::printf("  hop %d: outcome %-4s", h.hop_index,
                qhop::to_string(h.bell_outcome));
    if (h.pauli_applied) {
      std::printf("  pauli %-2s", qhop::to_string(*h.pauli_applied));
    }
    if (h.kraus_success) {
      std::printf("  filter %s", *h.kraus_success ? "pass" : "FAIL");
    }
    std::printf("  branch p=%.6f\n", h.branch_probability);
  }
  if (t.final_kraus_success) {
    std::printf("  receiver filter: %s (p=%.6f)\n",
                *t.final_kraus_success ? "pass" : "FAIL",
                *t.final_kraus_probability);
  } else if (t.kind == qhop::ProtocolKind::Gmtp) {
    std::printf("  receiver filter: skipped, distortion self-corrected\n");
  }
  std::printf("  error index %d, run probability %.6f -> %s", t.error_index,
              t.total_probability, t.success ? "success" : "failure");
  if (t.success) {
    std::printf(", fidelity %.12f", qhop::fidelity(t.final_state, input));
  }
  std::printf("\n");
}

}  // namespace

int main() {
  const qhop::Channel channel = qhop::Channel::from_alpha_squared(0.3);
  std::printf("channel: %.4f|00> + %.4f|11>, concurrence %.4f\n",
              channel.alpha(), channel.beta(), channel.concurrence());

  qhop::ChainConfig config;
  config.channels = {channel, channel};
  config.input = qhop::PureState::qubit(qhop::cplx{0.6}, qhop::cplx{0.0, 0.8});
  std::printf("input: 0.6|0> + 0.8i|1>\n\n");

  qhop::RandomSource rng(2024);
  for (const qhop::ProtocolKind kind :
       {qhop::ProtocolKind::Smtp, qhop::ProtocolKind::Gmtp}) {
    config.kind = kind;
    std::printf("%s run:\n", qhop::to_string(kind));
    print_transcript(qhop::run(config, rng), config.input);
    std::printf("\n");
  }

  const double ps = qhop::smtp_success_probability(2, channel);
  const double pg = qhop::gmtp_success_probability(2, channel);
  std::printf("closed forms over many runs: smtp %.4f, gmtp %.4f (x%.2f)\n",
              ps, pg, pg / ps);

  const qhop::McResult mc = qhop::monte_carlo(config, 200000, 7);
  std::printf("gmtp Monte Carlo, 200000 trials: %.4f +- %.4f\n", mc.estimate,
              mc.std_error);
  return 0;
}
