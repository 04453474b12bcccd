// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "outage_lab/largedev.hpp"
#include "outage_lab/metrics.hpp"

namespace outage_lab::montecarlo {

using largedev::ChannelSpec;
using largedev::RatePoint;

/// A Monte Carlo estimate with its binomial standard error. `resolved` is
/// false when fewer than 10 events were observed; such estimates carry no
/// statistical weight in the deep tail and are flagged rather than trusted.
struct MCEstimate {
    double p_hat = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t successes = 0;
    bool resolved = false;
};

/// One channel draw: the squared gains |h_l|^2, iid unit exponential.
struct ChannelSample {
    std::vector<double> gains;
};

/// Draws a channel sample from the given stream of the seeded generator.
ChannelSample draw_channel(int num_subchannels, std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index);

/// I(H) = sum_l ln(1 + |h_l|^2 snr), in nats.
double mutual_information(const ChannelSample& sample, double snr);

/// Empirical Pr{ I(H) < R }. Deterministic for fixed (seed, trials, params):
/// trials are split into fixed-size chunks, each chunk is a pure function of
/// (seed, chunk index), and the reduction is an integer sum, so the result is
/// bit-identical for any worker count. `max_workers` 0 means hardware choice.
MCEstimate outage_mc(const ChannelSpec& ch, const RatePoint& rate, std::uint64_t trials,
                     std::uint64_t seed, int max_workers = 0);

/// Empirical Pr{ prod of L unit exponentials >= z }.
MCEstimate product_exp_tail_mc(int L, double z, std::uint64_t trials, std::uint64_t seed,
                               int max_workers = 0);

/// Exact two-subchannel outage by 1-D quadrature over the first gain.
double exact_outage_l2(double snr, const RatePoint& rate, const QuadratureConfig& cfg = {});

/// Binary-search ordinal-optimization estimate of the normalized epsilon-
/// outage capacity (per-subchannel rate / awgn capacity). The search stops
/// when |p_hat - eps| < delta_tol_factor * eps or at the iteration cap, in
/// which case `converged` is false and the bracket midpoint is returned.
struct CapacitySearchResult {
    double c_norm = 0.0;
    bool converged = false;
    int iterations = 0;
};
CapacitySearchResult capacity_search(const ChannelSpec& ch, double epsilon,
                                     double delta_tol_factor, std::uint64_t trials_per_eval,
                                     std::uint64_t seed, int max_workers = 0);

/// Centered finite-difference diversity slope -d ln p / d ln snr of an
/// outage curve given as (snr_db, outage) points; defined at interior points.
metrics::Curve empirical_diversity(const metrics::Curve& curve);

}  // namespace outage_lab::montecarlo
