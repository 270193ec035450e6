#include "qhop/state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qhop/random.hpp"
#include "test_util.hpp"

using namespace qhop;

namespace {

void expect_state_near(const PureState& s, const std::vector<cplx>& ref,
                       double tol = 1e-12) {
  ASSERT_EQ(s.dim(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_NEAR(s[i].real(), ref[i].real(), tol) << "i=" << i;
    EXPECT_NEAR(s[i].imag(), ref[i].imag(), tol) << "i=" << i;
  }
}

}  // namespace

TEST(PureState, BasisStateIsOneHot) {
  const PureState s(3, 5);
  ASSERT_EQ(s.dim(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_DOUBLE_EQ(std::abs(s[i]), i == 5 ? 1.0 : 0.0);
  }
}

TEST(PureState, ZeroQubitScalarIsLegal) {
  const PureState s;
  EXPECT_EQ(s.num_qubits(), 0);
  ASSERT_EQ(s.dim(), 1u);
  EXPECT_DOUBLE_EQ(s[0].real(), 1.0);
  EXPECT_DOUBLE_EQ(s.norm_sq(), 1.0);
}

TEST(PureState, BigEndianBitOrder) {
  const PureState s(3);
  // index 5 = 0b101: qubit 0 is the most significant bit.
  EXPECT_EQ(s.bit(5, 0), 1);
  EXPECT_EQ(s.bit(5, 1), 0);
  EXPECT_EQ(s.bit(5, 2), 1);
}

TEST(PureState, NormalizingCtorRescalesSmallDrift) {
  // Norm within kNormTol of 1: accepted and snapped back to exactly 1.
  const double eps = 5e-12;
  const PureState s(1, {cplx{std::sqrt(0.5 + eps)}, cplx{std::sqrt(0.5)}});
  EXPECT_NEAR(s.norm_sq(), 1.0, 1e-15);
}

TEST(PureState, NormalizingCtorRejectsUnnormalized) {
  EXPECT_THROW(PureState(1, {cplx{1.0}, cplx{1.0}}), std::invalid_argument);
  EXPECT_THROW(PureState::qubit(cplx{0.5}, cplx{0.5}), std::invalid_argument);
}

TEST(PureState, CtorValidatesShapeAndValues) {
  EXPECT_THROW(PureState(-1), std::invalid_argument);
  EXPECT_THROW(PureState(25), std::length_error);
  EXPECT_THROW(PureState(2, std::size_t{4}), std::out_of_range);
  EXPECT_THROW(PureState::raw(2, {cplx{1.0}}), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(PureState::raw(0, {cplx{inf}}), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(PureState::raw(0, {cplx{nan}}), std::invalid_argument);
}

TEST(PureState, RawKeepsSubNormalizedVectors) {
  const PureState s = PureState::raw(1, {cplx{0.3}, cplx{0.4}});
  EXPECT_NEAR(s.norm_sq(), 0.25, 1e-15);
  const PureState n = s.normalized();
  expect_state_near(n, {cplx{0.6}, cplx{0.8}});
}

TEST(PureState, NormalizedThrowsOnNullVector) {
  const PureState s = PureState::raw(1, {cplx{0.0}, cplx{0.0}});
  EXPECT_THROW(s.normalized(), std::domain_error);
}

TEST(Tensor, OrdersFactorsBigEndian) {
  const PureState a = PureState::qubit(cplx{0.6}, cplx{0.8});
  const PureState b(1, 1);  // |1>
  // a (x) b: a's qubit is more significant.
  expect_state_near(tensor(a, b),
                    {cplx{0.0}, cplx{0.6}, cplx{0.0}, cplx{0.8}});
  expect_state_near(tensor(b, a),
                    {cplx{0.0}, cplx{0.0}, cplx{0.6}, cplx{0.8}});
}

TEST(Tensor, ScalarIsIdentity) {
  const PureState a = PureState::qubit(cplx{0.6}, cplx{0.8});
  expect_state_near(tensor(PureState(), a), {cplx{0.6}, cplx{0.8}});
  expect_state_near(tensor(a, PureState()), {cplx{0.6}, cplx{0.8}});
}

TEST(Tensor, RejectsOversizedRegisters) {
  const PureState a(13);
  const PureState b(12);
  EXPECT_THROW(tensor(a, b), std::length_error);
}

TEST(ApplySingleQubit, HitsTheAddressedQubitOnly) {
  const Mat2 x{0.0, 1.0, 1.0, 0.0};
  const PureState s(3, 0);  // |000>
  expect_state_near(apply_single_qubit(s, 0, x), PureState(3, 4).amplitudes());
  expect_state_near(apply_single_qubit(s, 1, x), PureState(3, 2).amplitudes());
  expect_state_near(apply_single_qubit(s, 2, x), PureState(3, 1).amplitudes());
  EXPECT_THROW(apply_single_qubit(s, 3, x), std::out_of_range);
  EXPECT_THROW(apply_single_qubit(s, -1, x), std::out_of_range);
}

TEST(ApplySingleQubit, DoesNotRenormalize) {
  // Kraus-style shrinking operator: norm must shrink accordingly.
  const Mat2 k{0.5, 0.0, 0.0, 0.0};
  const PureState s = PureState::qubit(cplx{std::sqrt(0.5)}, cplx{std::sqrt(0.5)});
  const PureState out = apply_single_qubit(s, 0, k);
  EXPECT_NEAR(out.norm_sq(), 0.125, 1e-15);
}

TEST(ApplySingleQubit, UnitaryPreservesNormOnRandomStates) {
  RandomSource rng(11);
  const double is = 1.0 / std::sqrt(2.0);
  const Mat2 h{is, is, is, -is};
  for (int trial = 0; trial < 50; ++trial) {
    const PureState s = qhop_test::random_state(rng, 4);
    const int q = static_cast<int>(rng.next_u64() % 4);
    EXPECT_NEAR(apply_single_qubit(s, q, h).norm_sq(), 1.0, 1e-12);
  }
}

TEST(Mat2, AdjointAndProduct) {
  const Mat2 m{cplx{1.0, 2.0}, cplx{0.0, 1.0}, cplx{3.0, 0.0}, cplx{0.0, -4.0}};
  const Mat2 a = m.adjoint();
  EXPECT_EQ(a.m01, std::conj(m.m10));
  EXPECT_EQ(a.m10, std::conj(m.m01));
  const Mat2 p = m * Mat2::identity();
  EXPECT_EQ(p.m00, m.m00);
  EXPECT_EQ(p.m11, m.m11);
  const Mat2 s = m + m;
  EXPECT_EQ(s.m10, m.m10 + m.m10);
}

TEST(InnerProduct, MatchesHandComputedOverlap) {
  const PureState a = PureState::qubit(cplx{0.6}, cplx{0.8});
  const PureState b = PureState::qubit(cplx{0.6}, cplx{0.0, 0.8});
  const cplx ip = inner_product(a, b);
  EXPECT_NEAR(ip.real(), 0.36, 1e-15);
  EXPECT_NEAR(ip.imag(), 0.64, 1e-15);
  EXPECT_THROW(inner_product(a, PureState(2, 0)), std::invalid_argument);
}

TEST(Fidelity, IgnoresGlobalPhase) {
  RandomSource rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState s = qhop_test::random_state(rng, 2);
    const double phi = rng.next() * 6.283185307179586;
    std::vector<cplx> shifted(s.amplitudes());
    for (cplx& a : shifted) a *= cplx{std::cos(phi), std::sin(phi)};
    const PureState t = PureState::raw(2, std::move(shifted));
    EXPECT_NEAR(fidelity(s, t), 1.0, 1e-12);
  }
}

TEST(Fidelity, OrthogonalStatesScoreZero) {
  EXPECT_DOUBLE_EQ(fidelity(PureState(1, 0), PureState(1, 1)), 0.0);
}
