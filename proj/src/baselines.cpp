// SPDX-License-Identifier: Apache-2.0
#include "outage_lab/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "outage_lab/errors.hpp"
#include "outage_lab/roots.hpp"
#include "outage_lab/specialfn.hpp"

namespace outage_lab::baselines {

ExponentBound kaplan_shamai_bound(const ChannelSpec& ch, const RatePoint& rate,
                                  const QuadratureConfig& cfg) {
    ch.validate();
    if (!(rate.total_rate > 0.0)) throw std::domain_error("kaplan_shamai_bound: R must be > 0");
    const int L = ch.num_subchannels;
    const double a = 1.0 / ch.snr;
    // log objective: lam Rbar + L * ln E{(1+snr X)^{-lam/L}}
    //              = lam Rbar + L * [-(lam/L) ln snr + ln(e^a Gamma(1 - lam/L, a))]
    auto log_obj = [&](double lam) {
        const double s = lam / L;
        return lam * rate.per_subchannel_rate +
               L * (-s * std::log(ch.snr) + specialfn::log_scaled_gamma(1.0 - s, a, cfg));
    };
    // The objective is convex in lam (it is L times the deficit log-MGF at
    // lam/L); expand a bracket that contains the minimizer, then golden.
    double hi = 1.0;
    const double cap = 50.0 * L;
    while (hi < cap && log_obj(hi * 2.0) < log_obj(hi)) hi *= 2.0;
    hi = std::min(hi * 2.0, cap);
    const double lam_star =
        roots::golden_max([&](double lam) { return -log_obj(lam); }, 0.0, hi, 1e-10 * hi);
    if (lam_star > 0.999 * cap)
        throw numerical_error("kaplan_shamai_bound: minimizer escaped the bracket", lam_star);
    const double val = std::min(log_obj(lam_star), log_obj(0.0));  // lam = 0 gives 1

    ExponentBound b;
    b.kind = exponents::BoundKind::upper;
    b.regime = exponents::Regime::low_rate;
    b.coefficient = 1.0;
    b.exponent_rate = -val / L;
    b.raw_probability = std::exp(val);
    b.probability = std::min(1.0, b.raw_probability);
    return b;
}

ExponentBound tse_viswanath_bound(const ChannelSpec& ch, const RatePoint& rate) {
    ch.validate();
    if (!(rate.total_rate >= 0.0)) throw std::domain_error("tse_viswanath_bound: R must be >= 0");
    const int L = ch.num_subchannels;
    const double w = std::expm1(rate.per_subchannel_rate) / ch.snr;
    const double per = -std::expm1(-w);  // single-subchannel outage
    ExponentBound b;
    b.kind = exponents::BoundKind::lower;
    b.regime = exponents::Regime::low_rate;
    b.coefficient = 1.0;
    b.raw_probability = std::pow(per, L);
    b.probability = std::clamp(b.raw_probability, 0.0, 1.0);
    b.exponent_rate = per > 0.0 ? -std::log(per) : std::numeric_limits<double>::infinity();
    return b;
}

}  // namespace outage_lab::baselines
