#pragma once

// Deterministic generators shared by the property suites. Everything is
// seeded explicitly so failures replay exactly.

#include <vector>

#include "qhop/qhop.hpp"

namespace qhop_test {

inline qhop::cplx random_amp(qhop::RandomSource& rng) {
  return {rng.next() * 2.0 - 1.0, rng.next() * 2.0 - 1.0};
}

inline qhop::PureState random_state(qhop::RandomSource& rng, int num_qubits) {
  std::vector<qhop::cplx> amps(std::size_t{1} << num_qubits);
  for (qhop::cplx& a : amps) a = random_amp(rng);
  return qhop::PureState::raw(num_qubits, std::move(amps)).normalized();
}

inline qhop::PureState random_qubit(qhop::RandomSource& rng) {
  return random_state(rng, 1);
}

// Channel away from both degenerate ends (alpha = 0 and alpha = beta).
inline qhop::Channel random_channel(qhop::RandomSource& rng,
                                    double a2_min = 0.05,
                                    double a2_max = 0.45) {
  return qhop::Channel::from_alpha_squared(a2_min +
                                           (a2_max - a2_min) * rng.next());
}

inline std::vector<qhop::Channel> random_chain(qhop::RandomSource& rng,
                                               int hops) {
  std::vector<qhop::Channel> chain;
  for (int i = 0; i < hops; ++i) chain.push_back(random_channel(rng));
  return chain;
}

}  // namespace qhop_test
