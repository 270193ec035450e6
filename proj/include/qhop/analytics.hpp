#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qhop/channel.hpp"

namespace qhop {

// Largest n for which C(n, k) is computed exactly in 64-bit integers
// (C(60, 30)*60 still fits); beyond that the log-gamma form takes over.
inline constexpr int kExactBinomialMax = 60;

inline double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::out_of_range("binomial: need 0 <= k <= n");
  }
  if (k > n - k) k = n - k;
  if (n <= kExactBinomialMax) {
    std::uint64_t r = 1;
    for (int j = 1; j <= k; ++j) {
      r = r * static_cast<std::uint64_t>(n - k + j) /
          static_cast<std::uint64_t>(j);
    }
    return static_cast<double>(r);
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

// Success probability of one Bell-sequence class under gmtp: the C(hops, i)
// sequences with i swapped outcomes share the distortion
// diag(alpha^(hops-i) beta^i, alpha^i beta^(hops-i)), and each contributes
// the squared smaller amplitude product.
inline double gmtp_branch_weight(int hops, int swaps, const Channel& ch) {
  if (hops < 1) throw std::invalid_argument("gmtp_branch_weight: hops < 1");
  if (swaps < 0 || swaps > hops) {
    throw std::out_of_range("gmtp_branch_weight: swaps must be 0..hops");
  }
  const double a2 = ch.alpha_squared();
  const double b2 = 1.0 - a2;
  const int hi = swaps > hops - swaps ? swaps : hops - swaps;
  const int lo = hops - hi;
  if (a2 == 0.0) return 0.0;
  if (hops <= kExactBinomialMax) {
    return binomial(hops, swaps) * std::pow(a2, hi) * std::pow(b2, lo);
  }
  const double log_c = std::lgamma(hops + 1.0) - std::lgamma(swaps + 1.0) -
                       std::lgamma(hops - swaps + 1.0);
  return std::exp(log_c + hi * std::log(a2) + lo * std::log(b2));
}

// gmtp success probability over a homogeneous chain: sum of the branch
// weights over all swap counts.
inline double gmtp_success_probability(int hops, const Channel& ch) {
  if (hops < 1) {
    throw std::invalid_argument("gmtp_success_probability: hops < 1");
  }
  if (ch.alpha() == 0.0) return 0.0;
  double p = 0.0;
  for (int i = 0; i <= hops; ++i) p += gmtp_branch_weight(hops, i, ch);
  return p;
}

// smtp success probability over a homogeneous chain: each hop's filter
// succeeds with probability 2 alpha^2, independently.
inline double smtp_success_probability(int hops, const Channel& ch) {
  if (hops < 1) {
    throw std::invalid_argument("smtp_success_probability: hops < 1");
  }
  return std::pow(2.0 * ch.alpha_squared(), hops);
}

inline double smtp_success_probability(const std::vector<Channel>& channels) {
  if (channels.empty()) {
    throw std::invalid_argument("smtp_success_probability: no channels");
  }
  double p = 1.0;
  for (const Channel& ch : channels) p *= 2.0 * ch.alpha_squared();
  return p;
}

namespace detail {

inline constexpr int kMaxHeteroHops = 24;

inline double gmtp_hetero_sum(const std::vector<Channel>& channels,
                              std::size_t k, double hu, double hv) {
  if (k == channels.size()) {
    const double m = hu < hv ? hu : hv;
    return m * m;
  }
  const double a = channels[k].alpha();
  const double b = channels[k].beta();
  return gmtp_hetero_sum(channels, k + 1, hu * a, hv * b) +
         gmtp_hetero_sum(channels, k + 1, hu * b, hv * a);
}

}  // namespace detail

// gmtp success probability over an arbitrary chain, by summing the squared
// smaller amplitude product over all 2^hops swap patterns. Falls back to the
// binomial form when the chain is homogeneous.
inline double gmtp_success_probability(const std::vector<Channel>& channels) {
  if (channels.empty()) {
    throw std::invalid_argument("gmtp_success_probability: no channels");
  }
  bool homogeneous = true;
  for (const Channel& ch : channels) {
    if (!(ch == channels.front())) {
      homogeneous = false;
      break;
    }
  }
  if (homogeneous) {
    return gmtp_success_probability(static_cast<int>(channels.size()),
                                    channels.front());
  }
  if (channels.size() > detail::kMaxHeteroHops) {
    throw std::length_error(
        "gmtp_success_probability: heterogeneous chain too long to enumerate");
  }
  return detail::gmtp_hetero_sum(channels, 0, 1.0, 1.0);
}

// Closed form for two unequal channels: the weaker channel alone sets the
// rate, min(2 alpha1^2, 2 alpha2^2). Coincides with the general sum.
inline double gmtp_two_channel_success(const Channel& c1, const Channel& c2) {
  const double p1 = 2.0 * c1.alpha_squared();
  const double p2 = 2.0 * c2.alpha_squared();
  return p1 < p2 ? p1 : p2;
}

// gmtp-to-smtp success ratio; >= 1 everywhere, = 1 only for a maximally
// entangled channel.
inline double success_ratio(int hops, const Channel& ch) {
  const double ps = smtp_success_probability(hops, ch);
  if (ps == 0.0) {
    throw std::domain_error("success_ratio: smtp probability is zero");
  }
  return gmtp_success_probability(hops, ch) / ps;
}

}  // namespace qhop
