#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qhop {

using cplx = std::complex<double>;

// Register cap. Hop-by-hop simulation removes spent qubits, so live registers
// stay at 3 qubits; 24 is generous headroom for direct experiments.
inline constexpr int kMaxQubits = 24;

// States marked normalized stay within this of unit norm.
inline constexpr double kNormTol = 1e-10;

// Branch probabilities below this are treated as impossible; the collapsed
// state is not produced (normalizing a null vector is meaningless).
inline constexpr double kZeroProbTol = 1e-14;

// 2x2 complex matrix, row-major.
struct Mat2 {
  cplx m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }

  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
  }
};

// Dense pure state over an ordered qubit register.
//
// Indexing is big-endian: qubit 0 is the most significant bit of the basis
// index. Measured qubits are removed from the register by the collapse
// operations, so a 0-qubit state (a single scalar amplitude) is legal; it is
// what remains after measuring a whole register and it is the tensor unit.
class PureState {
 public:
  // Computational basis state |basis_index> on num_qubits qubits.
  explicit PureState(int num_qubits = 0, std::size_t basis_index = 0)
      : num_qubits_(checked_qubit_count(num_qubits)),
        amps_(std::size_t{1} << num_qubits, cplx{0.0}) {
    if (basis_index >= amps_.size()) {
      throw std::out_of_range("PureState: basis index out of range");
    }
    amps_[basis_index] = 1.0;
  }

  // Normalized state from explicit amplitudes. The vector must already be
  // within kNormTol of unit norm; it is then rescaled to machine precision.
  PureState(int num_qubits, std::vector<cplx> amplitudes)
      : PureState(raw_tag{}, num_qubits, std::move(amplitudes)) {
    const double n2 = norm_sq();
    if (std::abs(n2 - 1.0) > kNormTol) {
      throw std::invalid_argument("PureState: amplitudes are not normalized");
    }
    rescale(1.0 / std::sqrt(n2));
  }

  // Possibly sub-normalized vector, e.g. the image under a Kraus operator.
  static PureState raw(int num_qubits, std::vector<cplx> amplitudes) {
    return PureState(raw_tag{}, num_qubits, std::move(amplitudes));
  }

  // Single qubit a|0> + b|1>.
  static PureState qubit(cplx a, cplx b) { return PureState(1, {a, b}); }

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
  }

  // Value of `qubit` within basis index i (big-endian).
  int bit(std::size_t i, int qubit) const {
    return static_cast<int>((i >> (num_qubits_ - 1 - qubit)) & std::size_t{1});
  }

  PureState normalized() const {
    const double n2 = norm_sq();
    if (n2 < kZeroProbTol) {
      throw std::domain_error("PureState: cannot normalize a null vector");
    }
    PureState out = *this;
    out.rescale(1.0 / std::sqrt(n2));
    return out;
  }

 private:
  struct raw_tag {};

  PureState(raw_tag, int num_qubits, std::vector<cplx> amplitudes)
      : num_qubits_(checked_qubit_count(num_qubits)),
        amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << num_qubits_)) {
      throw std::invalid_argument(
          "PureState: amplitude vector length must be 2^num_qubits");
    }
    for (const cplx& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw std::invalid_argument("PureState: amplitudes must be finite");
      }
    }
  }

  static int checked_qubit_count(int n) {
    if (n < 0) throw std::invalid_argument("PureState: negative qubit count");
    if (n > kMaxQubits) {
      throw std::length_error("PureState: register exceeds 24 qubits");
    }
    return n;
  }

  void rescale(double f) {
    for (cplx& a : amps_) a *= f;
  }

  int num_qubits_;
  std::vector<cplx> amps_;
};

// Kronecker product; a's qubits become the most significant ones.
inline PureState tensor(const PureState& a, const PureState& b) {
  if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
    throw std::length_error("tensor: combined register exceeds 24 qubits");
  }
  std::vector<cplx> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      out[i * b.dim() + j] = a[i] * b[j];
    }
  }
  return PureState::raw(a.num_qubits() + b.num_qubits(), std::move(out));
}

// Applies `op` to one tensor factor. No renormalization: op need not be
// unitary (Kraus operators shrink the norm).
inline PureState apply_single_qubit(const PureState& state, int qubit,
                                    const Mat2& op) {
  const int n = state.num_qubits();
  if (qubit < 0 || qubit >= n) {
    throw std::out_of_range("apply_single_qubit: qubit index out of range");
  }
  const std::size_t step = std::size_t{1} << (n - 1 - qubit);
  std::vector<cplx> out(state.amplitudes());
  for (std::size_t base = 0; base < state.dim(); base += step << 1) {
    for (std::size_t off = 0; off < step; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + step;
      const cplx a0 = out[i0];
      const cplx a1 = out[i1];
      out[i0] = op.m00 * a0 + op.m01 * a1;
      out[i1] = op.m10 * a0 + op.m11 * a1;
    }
  }
  return PureState::raw(n, std::move(out));
}

inline cplx inner_product(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner_product: qubit count mismatch");
  }
  cplx s{0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// |<a|b>|^2. Global-phase insensitive; the success metric throughout.
inline double fidelity(const PureState& a, const PureState& b) {
  return std::norm(inner_product(a, b));
}

}  // namespace qhop
