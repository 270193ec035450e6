#include "qhop/analytics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qhop/random.hpp"
#include "test_util.hpp"

using namespace qhop;

TEST(Binomial, ExactSmallValues) {
  EXPECT_DOUBLE_EQ(binomial(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(binomial(5, 0), 1.0);
  EXPECT_DOUBLE_EQ(binomial(5, 5), 1.0);
  EXPECT_DOUBLE_EQ(binomial(6, 2), 15.0);
  EXPECT_DOUBLE_EQ(binomial(20, 10), 184756.0);
  EXPECT_DOUBLE_EQ(binomial(60, 30), 118264581564861424.0);
}

TEST(Binomial, LogGammaBranchMatchesPascalExtension) {
  // First n beyond the exact branch: C(61,30) = C(60,30) + C(60,29).
  const double exact = binomial(60, 30) + binomial(60, 29);
  EXPECT_NEAR(binomial(61, 30) / exact, 1.0, 1e-9);
  // Larger case against an independently computed reference.
  EXPECT_NEAR(binomial(70, 35) / 1.1218627781666285e20, 1.0, 1e-9);
}

TEST(Binomial, RejectsBadArguments) {
  EXPECT_THROW(binomial(-1, 0), std::out_of_range);
  EXPECT_THROW(binomial(3, 4), std::out_of_range);
  EXPECT_THROW(binomial(3, -1), std::out_of_range);
}

TEST(SmtpForm, KnownValues) {
  // (2 alpha^2)^hops.
  EXPECT_NEAR(smtp_success_probability(1, Channel::from_alpha_squared(0.3)),
              0.6, 1e-14);
  EXPECT_NEAR(smtp_success_probability(2, Channel::from_alpha_squared(0.3)),
              0.36, 1e-14);
  EXPECT_NEAR(smtp_success_probability(4, Channel::from_alpha_squared(0.3)),
              0.1296, 1e-14);
  EXPECT_NEAR(smtp_success_probability(6, Channel::from_alpha_squared(0.2)),
              0.004096, 1e-14);
  EXPECT_NEAR(smtp_success_probability(4, Channel::from_alpha_squared(0.25)),
              0.0625, 1e-14);
  EXPECT_NEAR(smtp_success_probability(7, Channel::from_concurrence(1.0)),
              1.0, 1e-13);
}

TEST(GmtpForm, KnownValues) {
  EXPECT_NEAR(gmtp_success_probability(1, Channel::from_alpha_squared(0.3)),
              0.6, 1e-14);
  EXPECT_NEAR(gmtp_success_probability(2, Channel::from_alpha_squared(0.3)),
              0.6, 1e-14);
  EXPECT_NEAR(gmtp_success_probability(4, Channel::from_alpha_squared(0.3)),
              0.432, 1e-14);
  EXPECT_NEAR(gmtp_success_probability(4, Channel::from_alpha_squared(0.25)),
              0.3125, 1e-14);
  EXPECT_NEAR(gmtp_success_probability(6, Channel::from_alpha_squared(0.2)),
              0.11584, 1e-14);
  EXPECT_NEAR(gmtp_success_probability(20, Channel::from_concurrence(1.0)),
              1.0, 1e-13);
}

TEST(GmtpForm, HeadlineTwentyHopValues) {
  // C = 0.96 is alpha^2 = 0.36; at 20 hops the deferred protocol keeps a
  // fifth of the runs while per-hop filtering keeps a seventieth of that.
  const Channel ch = Channel::from_concurrence(0.96);
  EXPECT_NEAR(ch.alpha_squared(), 0.36, 1e-12);
  EXPECT_NEAR(smtp_success_probability(20, ch), 0.0014016833953562607, 1e-15);
  EXPECT_NEAR(gmtp_success_probability(20, ch), 0.20691832088295342, 1e-13);
  EXPECT_NEAR(success_ratio(20, ch), 147.62129705500417, 1e-9);
}

TEST(GmtpForm, BranchWeightsSumToTotal) {
  RandomSource rng(211);
  for (int trial = 0; trial < 50; ++trial) {
    const Channel ch = qhop_test::random_channel(rng);
    const int hops = 1 + static_cast<int>(rng.next_u64() % 10);
    double sum = 0.0;
    for (int i = 0; i <= hops; ++i) sum += gmtp_branch_weight(hops, i, ch);
    EXPECT_NEAR(sum, gmtp_success_probability(hops, ch), 1e-13);
  }
  // Balanced two-hop weight: C(2,1) a^2 b^2.
  EXPECT_NEAR(gmtp_branch_weight(2, 1, Channel::from_alpha_squared(0.3)),
              0.42, 1e-14);
  EXPECT_NEAR(gmtp_branch_weight(2, 0, Channel::from_alpha_squared(0.3)),
              0.09, 1e-14);
  // Swap symmetry: i and hops - i carry the same weight.
  EXPECT_NEAR(gmtp_branch_weight(7, 2, Channel::from_alpha_squared(0.2)),
              gmtp_branch_weight(7, 5, Channel::from_alpha_squared(0.2)),
              1e-15);
}

TEST(GmtpForm, LogGammaBranchMatchesPascalReference) {
  // hops = 61 takes the log-gamma path; rebuild the same sum from exact
  // n = 60 binomials via Pascal's rule.
  const Channel ch = Channel::from_alpha_squared(0.3);
  const double a2 = ch.alpha_squared();
  const double b2 = 1.0 - a2;
  double ref = 0.0;
  for (int i = 0; i <= 61; ++i) {
    const double c61 =
        (i == 0 || i == 61) ? 1.0 : binomial(60, i - 1) + binomial(60, i);
    const int hi = std::max(i, 61 - i);
    ref += c61 * std::pow(a2, hi) * std::pow(b2, 61 - hi);
  }
  const double p61 = gmtp_success_probability(61, ch);
  EXPECT_NEAR(p61 / ref, 1.0, 1e-9);
  // Compare like parity for decay: odd chains lack the balanced branch, so
  // p(60) is not below p(59), but p(61) is.
  EXPECT_GT(p61, 0.0);
  EXPECT_LT(p61, gmtp_success_probability(59, ch));
}

TEST(RatioForm, TwoHopRatioIsInverseSingleHopLaw) {
  for (double a2 : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const Channel ch = Channel::from_alpha_squared(a2);
    EXPECT_NEAR(success_ratio(2, ch), 1.0 / (2.0 * a2), 1e-12);
  }
  EXPECT_THROW(success_ratio(2, Channel::from_alpha_squared(0.0)),
               std::domain_error);
}

TEST(RatioForm, DeferredCorrectionDominates) {
  RandomSource rng(221);
  for (int trial = 0; trial < 1000; ++trial) {
    const Channel ch = qhop_test::random_channel(rng, 0.02, 0.5);
    const int hops = 1 + static_cast<int>(rng.next_u64() % 12);
    const double pg = gmtp_success_probability(hops, ch);
    const double ps = smtp_success_probability(hops, ch);
    EXPECT_GE(pg, ps - 1e-15);
  }
}

TEST(MonotonicityInConcurrence, BothProtocols) {
  RandomSource rng(231);
  for (int trial = 0; trial < 1000; ++trial) {
    double c1 = 0.05 + 0.95 * rng.next();
    double c2 = 0.05 + 0.95 * rng.next();
    if (c1 > c2) std::swap(c1, c2);
    const int hops = 1 + static_cast<int>(rng.next_u64() % 10);
    const Channel lo = Channel::from_concurrence(c1);
    const Channel hi = Channel::from_concurrence(c2);
    EXPECT_GE(smtp_success_probability(hops, hi),
              smtp_success_probability(hops, lo) - 1e-15);
    EXPECT_GE(gmtp_success_probability(hops, hi),
              gmtp_success_probability(hops, lo) - 1e-15);
  }
}

TEST(HeteroForm, VectorOverloadsMatchScalarOnes) {
  const Channel ch = Channel::from_alpha_squared(0.35);
  const std::vector<Channel> chain(6, ch);
  EXPECT_DOUBLE_EQ(smtp_success_probability(chain),
                   smtp_success_probability(6, ch));
  EXPECT_DOUBLE_EQ(gmtp_success_probability(chain),
                   gmtp_success_probability(6, ch));
}

TEST(HeteroForm, TwoChannelMinLaw) {
  RandomSource rng(241);
  for (int trial = 0; trial < 200; ++trial) {
    const Channel c1 = qhop_test::random_channel(rng, 0.02, 0.5);
    const Channel c2 = qhop_test::random_channel(rng, 0.02, 0.5);
    const double enumerated = gmtp_success_probability({c1, c2});
    const double closed = gmtp_two_channel_success(c1, c2);
    EXPECT_NEAR(enumerated, closed, 1e-13);
    // Symmetric in the two channels.
    EXPECT_DOUBLE_EQ(closed, gmtp_two_channel_success(c2, c1));
  }
  // The better channel's parameter is irrelevant once it exceeds the worse.
  const double base = gmtp_two_channel_success(
      Channel::from_alpha_squared(0.2), Channel::from_alpha_squared(0.3));
  for (double a2 : {0.25, 0.35, 0.45, 0.5}) {
    EXPECT_DOUBLE_EQ(gmtp_two_channel_success(Channel::from_alpha_squared(0.2),
                                              Channel::from_alpha_squared(a2)),
                     base);
  }
}

TEST(HeteroForm, MixedChainSubsetSum) {
  // Three unequal channels: check against a hand-rolled subset sum.
  const std::vector<Channel> chain = {Channel::from_alpha_squared(0.2),
                                      Channel::from_alpha_squared(0.3),
                                      Channel::from_alpha_squared(0.4)};
  double expect = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    double hu = 1.0, hv = 1.0;
    for (int k = 0; k < 3; ++k) {
      const double a = chain[static_cast<std::size_t>(k)].alpha();
      const double b = chain[static_cast<std::size_t>(k)].beta();
      if (mask & (1 << k)) {
        hu *= b;
        hv *= a;
      } else {
        hu *= a;
        hv *= b;
      }
    }
    const double m = std::min(hu, hv);
    expect += m * m;
  }
  EXPECT_NEAR(gmtp_success_probability(chain), expect, 1e-15);
}

TEST(Analytics, RejectsBadArguments) {
  const Channel ch = Channel::from_alpha_squared(0.3);
  EXPECT_THROW(smtp_success_probability(0, ch), std::invalid_argument);
  EXPECT_THROW(gmtp_success_probability(0, ch), std::invalid_argument);
  EXPECT_THROW(gmtp_branch_weight(0, 0, ch), std::invalid_argument);
  EXPECT_THROW(gmtp_branch_weight(3, 4, ch), std::out_of_range);
  EXPECT_THROW(smtp_success_probability(std::vector<Channel>{}),
               std::invalid_argument);
  EXPECT_THROW(gmtp_success_probability(std::vector<Channel>{}),
               std::invalid_argument);
  // Heterogeneous chains enumerate 2^hops patterns; far too long must throw.
  std::vector<Channel> longchain(25, ch);
  longchain[0] = Channel::from_alpha_squared(0.2);
  EXPECT_THROW(gmtp_success_probability(longchain), std::length_error);
}
