// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "outage_lab/largedev.hpp"

namespace outage_lab::metrics {

using largedev::ChannelSpec;
using largedev::RatePoint;

/// An (x, y) series with strictly increasing x; the container behind the CSV
/// sweeps and the SNR-gain / empirical-diversity operations.
struct Curve {
    std::string label;
    std::vector<std::pair<double, double>> points;

    void validate() const;
};

enum class RegimeVariant { low_rate, high_rate, boundary };

struct RegimeTag {
    RegimeVariant variant;
    double threshold;  // r0(snr) used for the decision
};

/// ln(1 + snr), nats.
double awgn_capacity(double snr);

/// Per-subchannel ergodic capacity E{ln(1 + snr |h|^2)} = e^{1/snr} Gamma(0, 1/snr).
double ergodic_capacity(double snr, const QuadratureConfig& cfg = {});

/// Largest per-subchannel rate whose saddle-point outage bound equals eps
/// (numerical inverse of the low-rate upper bound; the closed form seeds it).
double outage_capacity_bound(const ChannelSpec& ch, double epsilon,
                             const QuadratureConfig& cfg = {});

/// r0(snr) = ergodic / awgn capacity: the threshold multiplexing gain between
/// the low-rate and high-rate bound families.
double r0_curve(double snr, const QuadratureConfig& cfg = {});

/// Golden-section minimum of r0 over snr in [1e-2, 1e4].
/// Returns (snr_star_linear, r0_star).
std::pair<double, double> r0_minimum(const QuadratureConfig& cfg = {});

/// Finite-SNR diversity-multiplexing tradeoff from the high-rate exponent
/// decomposition (requires the calibrated lambda in (0, L)).
double finite_snr_dmt(const ChannelSpec& ch, const RatePoint& rate, double lambda_cal,
                      const QuadratureConfig& cfg = {});

/// Definitional form -d ln p / d ln snr by central-differencing the
/// calibrated high-rate outage approximation at fixed multiplexing gain.
double finite_snr_dmt_fd(const ChannelSpec& ch, const RatePoint& rate, double lambda_cal,
                         const QuadratureConfig& cfg = {});

/// Asymptotic tradeoff L(1 - r/L) for r in [0, L].
double asymptotic_dmt(int L, double r);

/// Horizontal dB gap between two outage curves at the target outage level,
/// by log-linear interpolation. Positive when curve_b needs more SNR.
double snr_gain(const Curve& curve_a, const Curve& curve_b, double p_target);

/// Which bound family is expected to be tight at this operating point.
RegimeTag regime_select(const ChannelSpec& ch, const RatePoint& rate,
                        const QuadratureConfig& cfg = {});

}  // namespace outage_lab::metrics
