// SPDX-License-Identifier: Apache-2.0
#include "outage_lab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "outage_lab/errors.hpp"
#include "outage_lab/roots.hpp"
#include "outage_lab/specialfn.hpp"

namespace outage_lab::exponents {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kDeltaFloor = 0.005;  // Xi(t) tabulation floor, as a fraction of R
}  // namespace

ExponentBound upper_exponent(const ChannelSpec& ch, const RatePoint& rate,
                             const QuadratureConfig& cfg) {
    const auto sol = largedev::solve_xi0(ch, rate, cfg);
    const double L = ch.num_subchannels;
    ExponentBound b;
    b.kind = BoundKind::upper;
    b.regime = Regime::low_rate;
    b.coefficient = 1.0 / (std::sqrt(2.0 * kPi * L * sol.curvature.value()) * sol.tilt);
    b.exponent_rate = sol.rate_function_value;
    b.raw_probability = b.coefficient * std::exp(-L * sol.rate_function_value);
    b.probability = std::min(1.0, b.raw_probability);
    return b;
}

double rate_route_exponent(const ChannelSpec& ch, const RatePoint& rate,
                           const QuadratureConfig& cfg) {
    if (!(rate.total_rate > 0.0)) throw std::domain_error("rate_route_exponent: R must be > 0");
    return largedev::rate_rate_function(rate.total_rate, ch, cfg) / ch.num_subchannels;
}

std::pair<ExponentBound, LowerLDParams> lower_exponent_ld(const ChannelSpec& ch,
                                                          const RatePoint& rate,
                                                          const QuadratureConfig& cfg) {
    const int L = ch.num_subchannels;
    const double R = rate.total_rate;
    // Force the same regime check as the upper bound.
    (void)largedev::solve_xi0(ch, rate, cfg);

    const largedev::XiInterpolant xi_tab(ch, kDeltaFloor * R, R, 129, cfg);

    struct Candidate {
        double value, alpha, delta, e1a, prefactor;
    };
    std::optional<Candidate> best;

    auto evaluate = [&](double alpha) -> std::optional<Candidate> {
        if (!(alpha > 0.0 && alpha < 1.0)) return std::nullopt;
        const double xi_aR = largedev::solve_xi_t(alpha * R, ch, cfg).tilt;
        const double lam_aR = R * (alpha - 1.0) * xi_aR + xi_tab.integral(alpha * R, R);
        if (!(lam_aR > 0.0)) return std::nullopt;
        const double eP = std::exp(-lam_aR);
        // Stationarity relation for delta; the right side does not actually
        // depend on delta, so the damped iteration settles immediately.
        double delta = alpha;
        for (int it = 0; it < 200; ++it) {
            const double next = (alpha - eP) / (1.0 - eP);
            const double moved = 0.5 * delta + 0.5 * next;
            if (std::fabs(moved - delta) < 1e-8) {
                delta = moved;
                break;
            }
            delta = moved;
        }
        if (!(delta > kDeltaFloor && delta < alpha)) return std::nullopt;
        const double lam_dR = R * (alpha - delta) * xi_aR - xi_tab.integral(delta * R, alpha * R);
        const double prefactor = -std::expm1(-lam_dR) - eP;
        if (!(prefactor > 0.0)) return std::nullopt;
        const double lam_star_aR = alpha * R * xi_aR - largedev::rate_log_mgf(xi_aR, ch, cfg);
        const double e1a = (lam_star_aR - xi_aR * R * (alpha - delta)) / L;
        return Candidate{prefactor * std::exp(-L * e1a), alpha, delta, e1a, prefactor};
    };

    for (double alpha = 0.05; alpha < 0.951; alpha += 0.05) {
        auto c = evaluate(alpha);
        if (c && (!best || c->value > best->value)) best = c;
    }
    if (best) {
        const double lo = std::max(0.001, best->alpha - 0.05);
        const double hi = std::min(0.999, best->alpha + 0.05);
        const double refined = roots::golden_max(
            [&](double a) {
                auto c = evaluate(a);
                return c ? c->value : -1.0;
            },
            lo, hi, 1e-4);
        auto c = evaluate(refined);
        if (c && c->value > best->value) best = c;
    }

    ExponentBound b;
    b.kind = BoundKind::lower;
    b.regime = Regime::low_rate;
    LowerLDParams params;
    if (!best) {
        b.coefficient = 0.0;
        b.exponent_rate = std::numeric_limits<double>::infinity();
        b.raw_probability = 0.0;
        b.probability = 0.0;
        b.diagnostic = "degenerate";
        return {b, params};
    }
    b.coefficient = best->prefactor;
    b.exponent_rate = best->e1a;
    b.raw_probability = best->value;
    b.probability = std::clamp(best->value, 0.0, 1.0);
    params.alpha = best->alpha;
    params.delta = best->delta;
    params.prefactor = best->prefactor;
    return {b, params};
}

// ---------------------------------------------------------------------------
// High-rate (product tail) family
// ---------------------------------------------------------------------------

namespace {

// 1 - e^c F_L(z) without cancellation: e^c (1 - F_L) - (e^c - 1).
double one_minus_scaled_fl(int L, double z, double c, const QuadratureConfig& cfg) {
    return std::exp(c) * specialfn::f_l_tail(L, z, cfg) - std::expm1(c);
}

}  // namespace

std::pair<ExponentBound, ExponentBound> high_rate_bounds(const ChannelSpec& ch,
                                                         const RatePoint& rate,
                                                         const QuadratureConfig& cfg) {
    ch.validate();
    if (!(rate.total_rate > 0.0)) throw std::domain_error("high_rate_bounds: R must be > 0");
    const int L = ch.num_subchannels;
    const double g = ch.snr;
    const double R = rate.total_rate;
    const double logzu = R + std::log1p(-std::exp(-R)) - L * std::log(g);
    const double logzl = R - L * std::log(g);

    ExponentBound up, lo;
    up.kind = BoundKind::upper;
    lo.kind = BoundKind::lower;
    up.regime = lo.regime = Regime::high_rate;
    up.raw_probability = specialfn::f_l_tail(L, std::exp(logzu), cfg);
    up.probability = std::clamp(up.raw_probability, 0.0, 1.0);
    lo.raw_probability = one_minus_scaled_fl(L, std::exp(logzl), double(L) / g, cfg);
    lo.probability = std::clamp(lo.raw_probability, 0.0, 1.0);
    if (lo.raw_probability < 0.0) lo.diagnostic = "clamped_zero";

    auto fill_exponent = [L](ExponentBound& b) {
        b.coefficient = 1.0;
        b.exponent_rate = b.raw_probability > 0.0
                              ? -std::log(b.raw_probability) / L
                              : std::numeric_limits<double>::infinity();
    };
    fill_exponent(up);
    fill_exponent(lo);
    return {up, lo};
}

double low_snr_outage(const ChannelSpec& ch, const RatePoint& rate) {
    ch.validate();
    if (!(rate.multiplexing_gain >= 0.0))
        throw std::domain_error("low_snr_outage: multiplexing gain must be >= 0");
    return 1.0 - specialfn::erlang_tail(ch.num_subchannels, rate.multiplexing_gain);
}

CalibrationResult calibrate_lambda(const ChannelSpec& ch, const RatePoint& rate,
                                   const montecarlo::MCEstimate& anchor,
                                   const QuadratureConfig& cfg) {
    ch.validate();
    if (!(anchor.p_hat > 0.0 && anchor.p_hat < 1.0))
        throw std::domain_error("calibrate_lambda: anchor must be in (0,1)");
    const int L = ch.num_subchannels;
    // Calibration is pinned at 0 dB: the anchor run and the model both use
    // snr = 1 with the same average multiplexing gain.
    const double R0 = rate.avg_multiplexing_gain * L * std::log(2.0);
    const double z = std::exp(R0);
    // value(lambda) = 1 - e^lambda F_L(z), strictly decreasing in lambda
    auto value = [&](double lam) { return one_minus_scaled_fl(L, z, lam, cfg); };
    CalibrationResult res;
    if (anchor.p_hat >= value(0.0)) {
        res.lambda_cal = 0.0;
        res.flag = "clamped_low";
        return res;
    }
    if (anchor.p_hat <= value(double(L))) {
        res.lambda_cal = double(L);
        res.flag = "clamped_high";
        return res;
    }
    auto f = [&](double lam) { return value(lam) - anchor.p_hat; };
    res.lambda_cal = roots::bisect(f, 0.0, double(L), f(0.0), 1e-12);
    return res;
}

std::pair<ReliableFunctionParts, ExponentBound> reliable_function_high(
    const ChannelSpec& ch, const RatePoint& rate, double lambda_cal, const QuadratureConfig& cfg) {
    ch.validate();
    const int L = ch.num_subchannels;
    const double g = ch.snr;
    const double r = rate.multiplexing_gain;
    if (!(lambda_cal > 0.0 && lambda_cal < L))
        throw std::domain_error("reliable_function_high: lambda must be in (0, L)");
    if (!(r < L)) throw std::domain_error("reliable_function_high: requires r < L");
    const double c = lambda_cal / g;
    const double logz = r * std::log1p(g) - L * std::log(g);
    const double z = std::exp(logz);
    const double den = one_minus_scaled_fl(L, z, c, cfg);
    if (den < 1e-15)
        throw std::range_error(
            "reliable_function_high: outage is numerically zero at this point");
    const double F = specialfn::f_l(L, z, cfg);
    const double gd = specialfn::f_l_density(L, z, cfg);
    // (1+g)^(r-1) / g^(L-1) * e^c * g_L(z), assembled in logs
    const double log_num = (r - 1.0) * std::log1p(g) - (L - 1.0) * std::log(g) + c + std::log(gd);
    ReliableFunctionParts parts;
    parts.e11 = std::exp(log_num) / den;
    parts.e10 = parts.e11 / g;
    parts.e0 = -c * std::exp(c) * F / den;
    parts.lambda_cal = lambda_cal;

    ExponentBound b;
    b.kind = BoundKind::lower;
    b.regime = Regime::high_rate;
    b.coefficient = 1.0;
    b.exponent_rate = (1.0 - r / L) * parts.e11 + parts.e10 + parts.e0 / L;
    b.raw_probability = std::exp(-L * b.exponent_rate);
    b.probability = std::clamp(b.raw_probability, 0.0, 1.0);
    return {parts, b};
}

}  // namespace outage_lab::exponents
