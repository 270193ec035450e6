#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qhop/protocol.hpp"

namespace qhop {

// Exact enumeration covers every Bell-outcome path; 4^hops of them, so the
// tree is capped well below where it stops being instant.
inline constexpr int kMaxEnumerationHops = 10;

struct ExactResult {
  double success_probability = 0.0;
  double failure_probability = 0.0;
  // Success probability split by error index (number of distortion-swapping
  // outcomes); size hops + 1.
  std::vector<double> per_error_index;
  // Terminal branches with non-negligible weight.
  std::size_t branch_count = 0;
  // Smallest fidelity between a successful branch's output and the input;
  // 1 up to rounding when the protocol is faithful.
  double min_success_fidelity = 1.0;
};

namespace detail {

struct EnumContext {
  const ChainConfig* config = nullptr;
  ExactResult* out = nullptr;
};

inline void record_success(const EnumContext& ctx, const PureState& state,
                           double weight, int error_index) {
  ctx.out->success_probability += weight;
  ctx.out->per_error_index[static_cast<std::size_t>(error_index)] += weight;
  ctx.out->branch_count += 1;
  const double f = fidelity(state, ctx.config->input);
  if (f < ctx.out->min_success_fidelity) ctx.out->min_success_fidelity = f;
}

inline void record_failure(const EnumContext& ctx, double weight) {
  ctx.out->failure_probability += weight;
  ctx.out->branch_count += 1;
}

// Walk every Bell-outcome path, carrying the path weight exactly as the
// sampling runner multiplies branch probabilities.
inline void enumerate_paths(const EnumContext& ctx, const PureState& state,
                            std::size_t hop, double weight,
                            const Distortion& distortion, bool frame_x,
                            bool frame_z, int error_index) {
  const ChainConfig& config = *ctx.config;
  if (hop == config.channels.size()) {
    if (config.kind == ProtocolKind::Smtp) {
      // Every per-hop filter already succeeded on this path.
      record_success(ctx, state, weight, error_index);
      return;
    }
    PureState final_state = state;
    if (config.pauli_frame) {
      if (frame_x) {
        final_state =
            apply_single_qubit(final_state, 0, pauli_matrix(PauliCorrection::X));
      }
      if (frame_z) {
        final_state =
            apply_single_qubit(final_state, 0, pauli_matrix(PauliCorrection::Z));
      }
    }
    if (distortion.balanced()) {
      record_success(ctx, final_state, weight, error_index);
      return;
    }
    const KrausPair kraus = correction_kraus(distortion);
    const PureState succ = apply_single_qubit(final_state, 0, kraus.e_success);
    const double p_succ = succ.norm_sq();
    if (weight * p_succ >= kZeroProbTol) {
      record_success(ctx, succ.normalized(), weight * p_succ, error_index);
    }
    if (weight * (1.0 - p_succ) >= kZeroProbTol) {
      record_failure(ctx, weight * (1.0 - p_succ));
    }
    return;
  }

  const Channel& ch = config.channels[hop];
  const PureState joint = tensor(state, ch.state());
  for (const BellBranch& branch : bell_branches(joint, 0, 1)) {
    const double w = weight * branch.probability;
    if (!branch.collapsed || w < kZeroProbTol) continue;

    if (config.kind == ProtocolKind::Gmtp && config.pauli_frame) {
      const bool fx = frame_x != swaps_distortion(branch.outcome);
      const bool fz = frame_z != phase_bit(branch.outcome);
      enumerate_paths(ctx, *branch.collapsed, hop + 1, w,
                      distortion.then(ch, fx ? BellOutcome::PsiPlus
                                             : BellOutcome::PhiPlus),
                      fx, fz, error_index + (fx ? 1 : 0));
      continue;
    }

    const PureState corrected = apply_single_qubit(
        *branch.collapsed, 0, pauli_matrix(correction_for(branch.outcome)));
    const int swaps = swaps_distortion(branch.outcome) ? 1 : 0;

    if (config.kind == ProtocolKind::Gmtp) {
      enumerate_paths(ctx, corrected, hop + 1, w,
                      distortion.then(ch, branch.outcome), false, false,
                      error_index + swaps);
      continue;
    }

    // smtp: filter this hop's distortion now; only the success branch
    // continues down the chain.
    const Distortion hop_distortion = Distortion().then(ch, branch.outcome);
    if (hop_distortion.balanced()) {
      enumerate_paths(ctx, corrected.normalized(), hop + 1, w, Distortion(),
                      false, false, error_index + swaps);
      continue;
    }
    const KrausPair kraus = correction_kraus(hop_distortion);
    const PureState succ = apply_single_qubit(corrected, 0, kraus.e_success);
    const double p_succ = succ.norm_sq();
    if (w * p_succ >= kZeroProbTol) {
      enumerate_paths(ctx, succ.normalized(), hop + 1, w * p_succ,
                      Distortion(), false, false, error_index + swaps);
    }
    if (w * (1.0 - p_succ) >= kZeroProbTol) {
      record_failure(ctx, w * (1.0 - p_succ));
    }
  }
}

}  // namespace detail

// Exact success/failure probabilities by summing every measurement branch.
inline ExactResult enumerate_branches(const ChainConfig& config) {
  config.validate();
  if (config.channels.size() > kMaxEnumerationHops) {
    throw std::length_error("enumerate_branches: chain too long to enumerate");
  }
  ExactResult result;
  result.per_error_index.assign(config.channels.size() + 1, 0.0);
  detail::EnumContext ctx{&config, &result};
  detail::enumerate_paths(ctx, config.input, 0, 1.0, Distortion(), false,
                          false, 0);
  return result;
}

struct McResult {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double estimate = 0.0;
  double std_error = 0.0;
};

// Repeated protocol runs with per-trial seeds derived from the master seed,
// so any single trial can be replayed independently.
inline McResult monte_carlo(const ChainConfig& config, std::size_t trials,
                            std::uint64_t master_seed) {
  config.validate();
  if (trials == 0) {
    throw std::invalid_argument("monte_carlo: need at least one trial");
  }
  McResult r;
  r.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomSource rng(derive_seed(master_seed, t));
    if (run(config, rng).success) ++r.successes;
  }
  r.estimate = static_cast<double>(r.successes) / static_cast<double>(trials);
  r.std_error =
      std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
  return r;
}

// Two-sided consistency test of an estimate against a known probability,
// using the binomial deviation the known value implies.
inline bool mc_consistent(double exact, const McResult& mc,
                          double n_sigma = 4.0) {
  const double sigma =
      std::sqrt(exact * (1.0 - exact) / static_cast<double>(mc.trials));
  return std::abs(mc.estimate - exact) <= n_sigma * sigma + 1e-12;
}

}  // namespace qhop
