// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>

#include "outage_lab/largedev.hpp"
#include "outage_lab/montecarlo.hpp"

namespace outage_lab::exponents {

using largedev::ChannelSpec;
using largedev::RatePoint;

enum class BoundKind { upper, lower };
enum class Regime { low_rate, high_rate, low_snr };

/// A computed bound coefficient * exp(-L * exponent_rate). `probability` is
/// the [0,1]-clamped value; `raw_probability` keeps the unclamped object so
/// ordering tests stay meaningful at extreme parameters.
struct ExponentBound {
    BoundKind kind = BoundKind::upper;
    double coefficient = 1.0;
    double exponent_rate = 0.0;  // nats per subchannel
    double probability = 0.0;
    double raw_probability = 0.0;
    Regime regime = Regime::low_rate;
    std::string diagnostic;  // empty when the value is clean
};

/// The accepted Theorem-3 search point: the tilt split alpha, the segment
/// fraction delta solved from the stationarity relation, and the resulting
/// prefactor 1 - e^{-Lam*_a(dR)} - e^{-Lam*_a(R)}.
struct LowerLDParams {
    double alpha = 0.0;
    double delta = 0.0;
    double prefactor = 0.0;
};

/// High-rate reliable-function parts. e10 = e11/snr by construction; e0
/// carries the lambda correction. lambda_cal is echoed for traceability.
struct ReliableFunctionParts {
    double e11 = 0.0;
    double e10 = 0.0;
    double e0 = 0.0;
    double lambda_cal = 0.0;
};

struct CalibrationResult {
    double lambda_cal = 0.0;
    std::string flag;  // empty, or "clamped_low"/"clamped_high"
};

/// Saddle-point upper bound: (1/sqrt(2 pi L) sigma Xi(0)) e^{-L Lambda*(0)}.
/// Requires the low-rate regime (per-subchannel rate below ergodic capacity).
ExponentBound upper_exponent(const ChannelSpec& ch, const RatePoint& rate,
                             const QuadratureConfig& cfg = {});

/// Tilted-measure lower bound: sup over alpha of
/// (1 - e^{-Lam*_a(dR)} - e^{-Lam*_a(R)}) e^{-L E1^a}, with delta from the
/// alpha-stationarity relation. Returns a degenerate zero bound with a
/// diagnostic when no alpha yields a positive prefactor.
std::pair<ExponentBound, LowerLDParams> lower_exponent_ld(const ChannelSpec& ch,
                                                          const RatePoint& rate,
                                                          const QuadratureConfig& cfg = {});

/// The low-rate exponent computed through the total-rate tilt machinery
/// (Lambda*(R)/L via Xi(R)); equals upper_exponent's exponent_rate, which the
/// deficit-variable route computes independently.
double rate_route_exponent(const ChannelSpec& ch, const RatePoint& rate,
                           const QuadratureConfig& cfg = {});

/// High-rate product-tail bounds:
/// upper = 1 - F_L((e^R - 1)/snr^L), lower = 1 - e^{L/snr} F_L(e^R / snr^L).
std::pair<ExponentBound, ExponentBound> high_rate_bounds(const ChannelSpec& ch,
                                                         const RatePoint& rate,
                                                         const QuadratureConfig& cfg = {});

/// Low-SNR Erlang approximation 1 - Gamma(L, r)/(L-1)!; depends on the
/// operating point only through the multiplexing gain.
double low_snr_outage(const ChannelSpec& ch, const RatePoint& rate);

/// Solves 1 - e^{lambda/snr} F_L(e^R/snr^L) = anchor at snr = 1 (0 dB) for
/// lambda in (0, L); clamps with a flag when the anchor is out of range.
CalibrationResult calibrate_lambda(const ChannelSpec& ch, const RatePoint& rate,
                                   const montecarlo::MCEstimate& anchor,
                                   const QuadratureConfig& cfg = {});

/// High-rate reliable-function decomposition (E11, E10, E0) and the bound it
/// reassembles to, exp(-L[(1 - r/L)E11 + E10 + E0/L]).
std::pair<ReliableFunctionParts, ExponentBound> reliable_function_high(
    const ChannelSpec& ch, const RatePoint& rate, double lambda_cal,
    const QuadratureConfig& cfg = {});

}  // namespace outage_lab::exponents
