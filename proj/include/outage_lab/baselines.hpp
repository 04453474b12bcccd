// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "outage_lab/exponents.hpp"

namespace outage_lab::baselines {

using exponents::ExponentBound;
using largedev::ChannelSpec;
using largedev::RatePoint;

/// Chernoff upper bound min_{lam>=0} e^{lam Rbar} [E{(1+snr X)^{-lam/L}}]^L,
/// computed from the moment-generating integral (the Whittaker-function form
/// of the same object is spot-checked in tests, not used here).
ExponentBound kaplan_shamai_bound(const ChannelSpec& ch, const RatePoint& rate,
                                  const QuadratureConfig& cfg = {});

/// High-SNR lower bound (1 - e^{-(e^Rbar - 1)/snr})^L; exact closed form.
ExponentBound tse_viswanath_bound(const ChannelSpec& ch, const RatePoint& rate);

}  // namespace outage_lab::baselines
