#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qhop/random.hpp"
#include "qhop/state.hpp"

namespace qhop {

// The four Bell states. Enumerator values are the 2-bit wire encoding
// (parity bit << 1) | phase bit: parity set for the Psi (antiparallel)
// family, phase set for the minus sign.
enum class BellOutcome : int {
  PhiPlus = 0,
  PhiMinus = 1,
  PsiPlus = 2,
  PsiMinus = 3,
};

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus,
    BellOutcome::PsiMinus};

constexpr int wire_code(BellOutcome o) { return static_cast<int>(o); }

inline BellOutcome bell_outcome_from_wire(int code) {
  if (code < 0 || code > 3) {
    throw std::out_of_range("bell_outcome_from_wire: code must be 0..3");
  }
  return static_cast<BellOutcome>(code);
}

// Psi-family outcomes teleport through the swapped channel branch, flipping
// the orientation of the amplitude distortion.
constexpr bool swaps_distortion(BellOutcome o) {
  return (static_cast<int>(o) & 2) != 0;
}

constexpr bool phase_bit(BellOutcome o) { return (static_cast<int>(o) & 1) != 0; }

inline const char* to_string(BellOutcome o) {
  switch (o) {
    case BellOutcome::PhiPlus: return "Phi+";
    case BellOutcome::PhiMinus: return "Phi-";
    case BellOutcome::PsiPlus: return "Psi+";
    case BellOutcome::PsiMinus: return "Psi-";
  }
  return "?";
}

enum class PauliCorrection : int { Identity = 0, Z = 1, X = 2, IY = 3 };

inline const char* to_string(PauliCorrection c) {
  switch (c) {
    case PauliCorrection::Identity: return "I";
    case PauliCorrection::Z: return "Z";
    case PauliCorrection::X: return "X";
    case PauliCorrection::IY: return "iY";
  }
  return "?";
}

inline PauliCorrection correction_for(BellOutcome o) {
  switch (o) {
    case BellOutcome::PhiPlus: return PauliCorrection::Identity;
    case BellOutcome::PhiMinus: return PauliCorrection::Z;
    case BellOutcome::PsiPlus: return PauliCorrection::X;
    case BellOutcome::PsiMinus: return PauliCorrection::IY;
  }
  throw std::invalid_argument("correction_for: bad outcome");
}

// iY = [[0,1],[-1,0]] = Z*X; the -1 global phase it leaves on one branch is
// irrelevant under fidelity checks.
inline Mat2 pauli_matrix(PauliCorrection c) {
  switch (c) {
    case PauliCorrection::Identity: return Mat2::identity();
    case PauliCorrection::Z: return {1.0, 0.0, 0.0, -1.0};
    case PauliCorrection::X: return {0.0, 1.0, 1.0, 0.0};
    case PauliCorrection::IY: return {0.0, 1.0, -1.0, 0.0};
  }
  throw std::invalid_argument("pauli_matrix: bad correction");
}

struct BellBranch {
  BellOutcome outcome;
  double probability = 0.0;
  // Post-measurement state with the two measured qubits removed. Absent for
  // impossible branches (probability < kZeroProbTol).
  std::optional<PureState> collapsed;
};

namespace detail {

// Basis index with the bit positions of q1 and q2 deleted; the remaining
// qubits keep their order.
inline std::size_t squeeze_index(std::size_t i, int hi_pos, int lo_pos) {
  const std::size_t top = i >> (hi_pos + 1);
  const std::size_t mid =
      (i >> (lo_pos + 1)) & ((std::size_t{1} << (hi_pos - lo_pos - 1)) - 1);
  const std::size_t low = i & ((std::size_t{1} << lo_pos) - 1);
  return (top << (hi_pos - 1)) | (mid << lo_pos) | low;
}

}  // namespace detail

// Deterministic enumeration of all four Bell branches of a joint measurement
// on qubits q1, q2. Probabilities sum to 1 for a normalized input.
inline std::array<BellBranch, 4> bell_branches(const PureState& state, int q1,
                                               int q2) {
  const int n = state.num_qubits();
  if (n < 2) {
    throw std::invalid_argument("bell_branches: need at least 2 qubits");
  }
  if (q1 < 0 || q1 >= n || q2 < 0 || q2 >= n) {
    throw std::out_of_range("bell_branches: qubit index out of range");
  }
  if (q1 == q2) {
    throw std::invalid_argument("bell_branches: qubit indices must differ");
  }

  const int p1 = n - 1 - q1;
  const int p2 = n - 1 - q2;
  const int hi = p1 > p2 ? p1 : p2;
  const int lo = p1 > p2 ? p2 : p1;

  const std::size_t rdim = state.dim() >> 2;
  // c[(b1<<1)|b2][r]: amplitude with q1=b1, q2=b2 and reduced index r.
  std::array<std::vector<cplx>, 4> c;
  for (auto& v : c) v.assign(rdim, cplx{0.0});
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const int b1 = state.bit(i, q1);
    const int b2 = state.bit(i, q2);
    c[(b1 << 1) | b2][detail::squeeze_index(i, hi, lo)] = state[i];
  }

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::array<std::vector<cplx>, 4> proj;
  for (auto& v : proj) v.resize(rdim);
  for (std::size_t r = 0; r < rdim; ++r) {
    proj[wire_code(BellOutcome::PhiPlus)][r] = (c[0][r] + c[3][r]) * inv_sqrt2;
    proj[wire_code(BellOutcome::PhiMinus)][r] = (c[0][r] - c[3][r]) * inv_sqrt2;
    proj[wire_code(BellOutcome::PsiPlus)][r] = (c[1][r] + c[2][r]) * inv_sqrt2;
    proj[wire_code(BellOutcome::PsiMinus)][r] = (c[1][r] - c[2][r]) * inv_sqrt2;
  }

  std::array<BellBranch, 4> branches;
  for (int k = 0; k < 4; ++k) {
    double p = 0.0;
    for (const cplx& a : proj[k]) p += std::norm(a);
    branches[k].outcome = kBellOutcomes[k];
    branches[k].probability = p;
    if (p >= kZeroProbTol) {
      const double inv = 1.0 / std::sqrt(p);
      for (cplx& a : proj[k]) a *= inv;
      branches[k].collapsed = PureState::raw(n - 2, std::move(proj[k]));
    }
  }
  return branches;
}

struct BellSample {
  BellOutcome outcome;
  PureState state;  // q1, q2 removed, normalized
  double probability;
};

// Samples one branch of bell_branches proportionally to its probability.
// Consumes exactly one value from the random stream.
inline BellSample bell_measure(const PureState& state, int q1, int q2,
                               RandomSource& rng) {
  auto branches = bell_branches(state, q1, q2);
  const double u = rng.next();
  double acc = 0.0;
  const BellBranch* picked = nullptr;
  for (const BellBranch& b : branches) {
    if (!b.collapsed) continue;
    acc += b.probability;
    if (u < acc) {
      picked = &b;
      break;
    }
  }
  if (picked == nullptr) {
    // u landed beyond the accumulated total (rounding); take the last
    // possible branch.
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) {
      if (it->collapsed) {
        picked = &*it;
        break;
      }
    }
  }
  if (picked == nullptr) {
    throw std::domain_error("bell_measure: no branch has positive probability");
  }
  return {picked->outcome, *picked->collapsed, picked->probability};
}

// Two-outcome generalized measurement {E_S, E_F}.
struct KrausPair {
  Mat2 e_success;
  Mat2 e_fail;
};

// Completeness: E_S^dag E_S + E_F^dag E_F = I.
inline bool is_complete(const KrausPair& kraus, double tol = 1e-12) {
  const Mat2 s = kraus.e_success.adjoint() * kraus.e_success +
                 kraus.e_fail.adjoint() * kraus.e_fail;
  return std::abs(s.m00 - 1.0) <= tol && std::abs(s.m11 - 1.0) <= tol &&
         std::abs(s.m01) <= tol && std::abs(s.m10) <= tol;
}

struct MeasureResult {
  bool success;
  PureState post_state;  // renormalized
  double probability;    // of the realized outcome
};

// Applies the two-outcome measurement to one qubit. Success occurs with
// probability <psi|E_S^dag E_S|psi>; the post-state is the renormalized image
// under the realized operator. Consumes exactly one random value.
inline MeasureResult generalized_measure(const PureState& state, int qubit,
                                         const KrausPair& kraus,
                                         RandomSource& rng) {
  if (!is_complete(kraus)) {
    throw std::invalid_argument("generalized_measure: Kraus pair not complete");
  }
  const PureState succ = apply_single_qubit(state, qubit, kraus.e_success);
  const PureState fail = apply_single_qubit(state, qubit, kraus.e_fail);
  const double p_succ = succ.norm_sq();
  const double p_fail = fail.norm_sq();
  bool success = rng.next() < p_succ;
  if (!success && p_fail < kZeroProbTol) success = true;
  if (success) {
    return {true, succ.normalized(), p_succ};
  }
  return {false, fail.normalized(), p_fail};
}

}  // namespace qhop
