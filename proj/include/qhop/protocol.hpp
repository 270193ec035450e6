#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qhop/channel.hpp"
#include "qhop/measure.hpp"
#include "qhop/random.hpp"
#include "qhop/state.hpp"

namespace qhop {

// smtp: each relay applies the Pauli fix and then filters its hop's amplitude
// distortion immediately; any filter failure aborts the chain.
// gmtp: relays apply only Pauli fixes (or defer them classically when the
// Pauli-frame option is on); the receiver undoes the accumulated distortion
// with a single filter, which is skipped entirely when the distortion is
// balanced.
enum class ProtocolKind { Smtp, Gmtp };

inline const char* to_string(ProtocolKind k) {
  return k == ProtocolKind::Smtp ? "smtp" : "gmtp";
}

struct ChainConfig {
  ProtocolKind kind = ProtocolKind::Gmtp;
  std::vector<Channel> channels;
  // |+> by default: every Bell branch is populated.
  PureState input = PureState::qubit(cplx{std::sqrt(0.5)}, cplx{std::sqrt(0.5)});
  // Track Pauli corrections classically and apply them once before the final
  // filter instead of per hop. Only meaningful for gmtp.
  bool pauli_frame = false;

  void validate() const {
    if (channels.empty()) {
      throw std::invalid_argument("ChainConfig: need at least one channel");
    }
    for (const Channel& ch : channels) {
      if (!(ch.alpha() > 0.0)) {
        throw std::invalid_argument(
            "ChainConfig: product-state channel (alpha = 0) cannot teleport");
      }
    }
    if (input.num_qubits() != 1) {
      throw std::invalid_argument("ChainConfig: input must be a single qubit");
    }
    if (pauli_frame && kind != ProtocolKind::Gmtp) {
      throw std::invalid_argument(
          "ChainConfig: pauli_frame applies to gmtp only");
    }
  }
};

struct HopRecord {
  int hop_index = 0;
  BellOutcome bell_outcome = BellOutcome::PhiPlus;
  // Absent when the correction was deferred to the Pauli frame.
  std::optional<PauliCorrection> pauli_applied;
  // smtp only: whether this hop's filter succeeded.
  std::optional<bool> kraus_success;
  // Probability of this hop's realized branch: Bell outcome probability,
  // times the filter outcome probability for smtp.
  double branch_probability = 1.0;
};

struct Transcript {
  ProtocolKind kind = ProtocolKind::Gmtp;
  std::vector<HopRecord> hops;
  // Number of hops whose (frame-adjusted) outcome swapped the distortion
  // orientation; determines the final distortion for gmtp.
  int error_index = 0;
  // gmtp only: outcome of the receiver's filter. Absent when the accumulated
  // distortion was balanced and no filter was needed.
  std::optional<bool> final_kraus_success;
  std::optional<double> final_kraus_probability;
  bool success = false;
  double total_probability = 1.0;
  PureState final_state = PureState::qubit(cplx{1.0}, cplx{0.0});
};

// Distortion left on the receiver's qubit by a gmtp run with the given
// (frame-adjusted) outcome sequence.
inline Distortion accumulated_distortion(const std::vector<Channel>& channels,
                                         const std::vector<BellOutcome>& outcomes) {
  if (channels.size() != outcomes.size()) {
    throw std::invalid_argument(
        "accumulated_distortion: need one outcome per channel");
  }
  Distortion d;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    d = d.then(channels[k], outcomes[k]);
  }
  return d;
}

namespace detail {

struct HopStep {
  BellOutcome outcome;
  PureState state;       // one qubit, post-measurement
  double probability;    // Bell branch probability
};

// One teleportation hop: attach the channel pair, Bell-measure the flying
// qubit against the near half, hand back the far half.
inline HopStep teleport_hop(const PureState& flying, const Channel& ch,
                            RandomSource& rng) {
  const PureState joint = tensor(flying, ch.state());
  BellSample s = bell_measure(joint, 0, 1, rng);
  return {s.outcome, std::move(s.state), s.probability};
}

}  // namespace detail

inline Transcript run_smtp(const ChainConfig& config, RandomSource& rng) {
  config.validate();
  Transcript t;
  t.kind = ProtocolKind::Smtp;
  PureState state = config.input;
  for (std::size_t k = 0; k < config.channels.size(); ++k) {
    const Channel& ch = config.channels[k];
    detail::HopStep step = detail::teleport_hop(state, ch, rng);
    HopRecord rec;
    rec.hop_index = static_cast<int>(k);
    rec.bell_outcome = step.outcome;
    const PauliCorrection pauli = correction_for(step.outcome);
    rec.pauli_applied = pauli;
    state = apply_single_qubit(step.state, 0, pauli_matrix(pauli));
    if (swaps_distortion(step.outcome)) ++t.error_index;

    const Distortion hop_distortion = Distortion().then(ch, step.outcome);
    if (hop_distortion.balanced()) {
      rec.kraus_success = true;
      rec.branch_probability = step.probability;
      state = state.normalized();
    } else {
      MeasureResult m =
          generalized_measure(state, 0, correction_kraus(hop_distortion), rng);
      rec.kraus_success = m.success;
      rec.branch_probability = step.probability * m.probability;
      state = m.post_state;
      if (!m.success) {
        t.hops.push_back(rec);
        t.total_probability *= rec.branch_probability;
        t.success = false;
        t.final_state = state;
        return t;
      }
    }
    t.hops.push_back(rec);
    t.total_probability *= rec.branch_probability;
  }
  t.success = true;
  t.final_state = state;
  return t;
}

inline Transcript run_gmtp(const ChainConfig& config, RandomSource& rng) {
  config.validate();
  Transcript t;
  t.kind = ProtocolKind::Gmtp;
  PureState state = config.input;
  Distortion distortion;
  bool frame_x = false;
  bool frame_z = false;
  for (std::size_t k = 0; k < config.channels.size(); ++k) {
    const Channel& ch = config.channels[k];
    detail::HopStep step = detail::teleport_hop(state, ch, rng);
    HopRecord rec;
    rec.hop_index = static_cast<int>(k);
    rec.bell_outcome = step.outcome;
    rec.branch_probability = step.probability;
    if (config.pauli_frame) {
      // Defer the Pauli: fold this outcome into the frame. The distortion
      // orientation seen by the physical qubit swaps whenever the updated
      // frame carries an X.
      frame_x = frame_x != swaps_distortion(step.outcome);
      frame_z = frame_z != phase_bit(step.outcome);
      state = std::move(step.state);
      if (frame_x) ++t.error_index;
      distortion = distortion.then(
          ch, frame_x ? BellOutcome::PsiPlus : BellOutcome::PhiPlus);
    } else {
      const PauliCorrection pauli = correction_for(step.outcome);
      rec.pauli_applied = pauli;
      state = apply_single_qubit(step.state, 0, pauli_matrix(pauli));
      if (swaps_distortion(step.outcome)) ++t.error_index;
      distortion = distortion.then(ch, step.outcome);
    }
    t.hops.push_back(rec);
    t.total_probability *= rec.branch_probability;
  }

  if (config.pauli_frame) {
    if (frame_x) {
      state = apply_single_qubit(state, 0,
                                 pauli_matrix(PauliCorrection::X));
    }
    if (frame_z) {
      state = apply_single_qubit(state, 0, pauli_matrix(PauliCorrection::Z));
    }
  }

  if (distortion.balanced()) {
    // Equal accumulated amplitudes on both branches: the distortion is a
    // global factor and the state is already the input. No filter needed.
    t.success = true;
    t.final_state = state.normalized();
    return t;
  }

  MeasureResult m =
      generalized_measure(state.normalized(), 0, correction_kraus(distortion), rng);
  t.final_kraus_success = m.success;
  t.final_kraus_probability = m.probability;
  t.total_probability *= m.probability;
  t.success = m.success;
  t.final_state = m.post_state;
  return t;
}

inline Transcript run(const ChainConfig& config, RandomSource& rng) {
  return config.kind == ProtocolKind::Smtp ? run_smtp(config, rng)
                                           : run_gmtp(config, rng);
}

}  // namespace qhop
