#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qhop/measure.hpp"
#include "qhop/state.hpp"

namespace qhop {

// A two-qubit entangled resource alpha|00> + beta|11>, stored in canonical
// form 0 <= alpha <= beta with alpha^2 + beta^2 = 1.
class Channel {
 public:
  static Channel from_amplitudes(double alpha, double beta) {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
      throw std::invalid_argument("Channel: amplitudes must be non-negative");
    }
    if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12) {
      throw std::invalid_argument("Channel: amplitudes must satisfy a^2+b^2=1");
    }
    if (alpha > beta) std::swap(alpha, beta);
    return Channel(alpha, beta);
  }

  static Channel from_alpha(double alpha) {
    if (!(alpha >= 0.0) || alpha > 1.0) {
      throw std::invalid_argument("Channel: alpha must lie in [0,1]");
    }
    double b2 = 1.0 - alpha * alpha;
    if (b2 < 0.0) b2 = 0.0;
    return from_amplitudes(alpha, std::sqrt(b2));
  }

  static Channel from_alpha_squared(double alpha_sq) {
    if (!(alpha_sq >= 0.0) || alpha_sq > 1.0) {
      throw std::invalid_argument("Channel: alpha^2 must lie in [0,1]");
    }
    return from_alpha(std::sqrt(alpha_sq));
  }

  // Concurrence c = 2*alpha*beta; inverted via the smaller root
  // alpha^2 = (1 - sqrt(1 - c^2)) / 2.
  static Channel from_concurrence(double c) {
    if (!(c >= 0.0) || c > 1.0) {
      throw std::invalid_argument("Channel: concurrence must lie in [0,1]");
    }
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return from_alpha_squared(0.5 * (1.0 - s));
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double alpha_squared() const { return alpha_ * alpha_; }
  double concurrence() const { return 2.0 * alpha_ * beta_; }
  bool maximally_entangled(double tol = 1e-12) const {
    return std::abs(alpha_ - beta_) <= tol;
  }

  // The resource as a two-qubit state.
  PureState state() const {
    return PureState(2, {cplx{alpha_}, cplx{0.0}, cplx{0.0}, cplx{beta_}});
  }

  friend bool operator==(const Channel& a, const Channel& b) {
    return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
  }

 private:
  Channel(double alpha, double beta) : alpha_(alpha), beta_(beta) {}
  double alpha_;
  double beta_;
};

// Accumulated diagonal amplitude distortion diag(hu, hv) carried by the
// teleported qubit. Only the ratio matters physically; the pair is rescaled
// when the magnitudes drift far from 1 so long chains cannot underflow.
class Distortion {
 public:
  Distortion() : hu_(1.0), hv_(1.0) {}

  Distortion(double hu, double hv) : hu_(hu), hv_(hv) {
    if (!(hu > 0.0) || !(hv > 0.0)) {
      throw std::invalid_argument("Distortion: factors must be positive");
    }
    rescale();
  }

  double hu() const { return hu_; }
  double hv() const { return hv_; }

  // Chains this distortion with one more hop: outcome in the Phi family
  // multiplies by diag(alpha, beta), the Psi family by diag(beta, alpha).
  Distortion then(const Channel& ch, BellOutcome outcome) const {
    if (swaps_distortion(outcome)) {
      return Distortion(hu_ * ch.beta(), hv_ * ch.alpha());
    }
    return Distortion(hu_ * ch.alpha(), hv_ * ch.beta());
  }

  double ratio() const { return hu_ < hv_ ? hu_ / hv_ : hv_ / hu_; }

  // Balanced distortion (hu == hv up to relative tolerance) needs no
  // correction measurement at all.
  bool balanced(double rel_tol = 1e-12) const {
    return std::abs(hu_ - hv_) <= rel_tol * std::max(hu_, hv_);
  }

  // The teleported state's unnormalized amplitudes are scaled by diag(hu,hv).
  PureState apply(const PureState& state, int qubit) const {
    return apply_single_qubit(state, qubit,
                              Mat2{cplx{hu_}, cplx{0.0}, cplx{0.0}, cplx{hv_}});
  }

 private:
  void rescale() {
    const double mx = std::max(hu_, hv_);
    const double mn = std::min(hu_, hv_);
    if (mx > 1e6 || mn < 1e-6) {
      hu_ /= mx;
      hv_ /= mx;
    }
  }

  double hu_;
  double hv_;
};

// The filter that undoes diag(hu, hv): success operator proportional to
// diag(min/max applied to the larger side, 1 on the smaller side), failure
// operator absorbing the remaining weight on the dominant branch. For a
// balanced distortion this degenerates to {I, 0} and always succeeds.
inline KrausPair correction_kraus(const Distortion& d) {
  const double r = d.ratio();
  const double f = std::sqrt(std::max(0.0, 1.0 - r * r));
  if (d.hu() >= d.hv()) {
    return {Mat2{cplx{r}, cplx{0.0}, cplx{0.0}, cplx{1.0}},
            Mat2{cplx{f}, cplx{0.0}, cplx{0.0}, cplx{0.0}}};
  }
  return {Mat2{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{r}},
          Mat2{cplx{0.0}, cplx{0.0}, cplx{0.0}, cplx{f}}};
}

}  // namespace qhop
