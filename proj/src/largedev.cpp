// SPDX-License-Identifier: Apache-2.0
#include "outage_lab/largedev.hpp"

#include <cmath>
#include <stdexcept>

#include "outage_lab/errors.hpp"
#include "outage_lab/roots.hpp"
#include "outage_lab/specialfn.hpp"

namespace outage_lab::largedev {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

void ChannelSpec::validate() const {
    if (num_subchannels < 1) throw std::invalid_argument("ChannelSpec: L must be >= 1");
    if (!(snr > 0.0)) throw std::invalid_argument("ChannelSpec: snr must be > 0");
}

RatePoint RatePoint::from_total_rate(double total, const ChannelSpec& ch) {
    ch.validate();
    if (!(total >= 0.0)) throw std::invalid_argument("RatePoint: total rate must be >= 0");
    RatePoint r;
    r.total_rate = total;
    r.per_subchannel_rate = total / ch.num_subchannels;
    r.multiplexing_gain = total / std::log1p(ch.snr);
    r.avg_multiplexing_gain = r.multiplexing_gain / ch.num_subchannels;
    return r;
}

RatePoint RatePoint::from_avg_multiplexing_gain(double rbar, const ChannelSpec& ch) {
    ch.validate();
    if (!(rbar >= 0.0)) throw std::invalid_argument("RatePoint: rbar must be >= 0");
    return from_total_rate(rbar * ch.num_subchannels * std::log1p(ch.snr), ch);
}

void RatePoint::validate(const ChannelSpec& ch) const {
    const double L = ch.num_subchannels;
    auto close = [](double a, double b) {
        return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
    };
    if (!(total_rate >= 0.0)) throw std::invalid_argument("RatePoint: total rate must be >= 0");
    if (!close(per_subchannel_rate * L, total_rate) ||
        !close(avg_multiplexing_gain * L, multiplexing_gain) ||
        !close(multiplexing_gain * std::log1p(ch.snr), total_rate))
        throw std::invalid_argument("RatePoint: derived fields inconsistent");
}

// ---------------------------------------------------------------------------
// Deficit-variable log-MGF (per subchannel)
// ---------------------------------------------------------------------------

double log_mgf(double xi, const ChannelSpec& ch, const RatePoint& rate,
               const QuadratureConfig& cfg) {
    ch.validate();
    const double a = 1.0 / ch.snr;
    return (rate.per_subchannel_rate - std::log(ch.snr)) * xi +
           specialfn::log_scaled_gamma(1.0 - xi, a, cfg);
}

std::pair<double, double> log_mgf_derivs(double xi, const ChannelSpec& ch, const RatePoint& rate,
                                         const QuadratureConfig& cfg) {
    ch.validate();
    const double a = 1.0 / ch.snr;
    const auto m = specialfn::scaled_gamma_moments(1.0 - xi, a, cfg);
    const double d1 = (rate.per_subchannel_rate - std::log(ch.snr)) - m.m1 / m.m0;
    const double d2 = (m.m2 * m.m0 - m.m1 * m.m1) / (m.m0 * m.m0);
    return {d1, d2};
}

TiltSolution solve_xi0(const ChannelSpec& ch, const RatePoint& rate, const QuadratureConfig& cfg) {
    ch.validate();
    if (!(rate.total_rate > 0.0))
        throw std::domain_error("solve_xi0: rate must be positive (outage is 0 at R = 0)");
    auto d1 = [&](double xi) { return log_mgf_derivs(xi, ch, rate, cfg).first; };
    const double at_zero = d1(0.0);
    if (at_zero >= 0.0)
        throw regime_error(
            "solve_xi0: per-subchannel rate is at or above the ergodic capacity; "
            "use the high-rate bounds");
    // Lambda' is strictly increasing with limit Rbar > 0, so a positive root
    // exists; expand a doubling bracket then bisect and polish.
    double lo = 1e-6, hi = 1.0;
    double flo = d1(lo);
    if (flo > 0.0) {
        // root below 1e-6 (rate within a whisker of capacity)
        hi = lo;
        lo = 1e-14;
        flo = d1(lo);
        if (flo > 0.0)
            throw numerical_error("solve_xi0: root collapsed below bracket floor", flo);
    } else {
        double fhi = d1(hi);
        int guard = 0;
        while (fhi < 0.0) {
            lo = hi;
            flo = fhi;
            hi *= 2.0;
            fhi = d1(hi);
            if (++guard > 60)
                throw numerical_error("solve_xi0: bracket expansion failed", fhi);
        }
    }
    double xi = roots::bisect(d1, lo, hi, flo, 1e-12);
    xi = roots::newton_polish(
        [&](double x) { return log_mgf_derivs(x, ch, rate, cfg); }, xi, lo, hi);
    TiltSolution s;
    s.tilt = xi;
    s.rate_function_value = -log_mgf(xi, ch, rate, cfg);
    s.curvature = log_mgf_derivs(xi, ch, rate, cfg).second;
    return s;
}

// ---------------------------------------------------------------------------
// Total-rate variable Y = sum ln(1 + snr |h|^2)
// ---------------------------------------------------------------------------

double rate_log_mgf(double xi, const ChannelSpec& ch, const QuadratureConfig& cfg) {
    ch.validate();
    const double a = 1.0 / ch.snr;
    return ch.num_subchannels *
           (xi * std::log(ch.snr) + specialfn::log_scaled_gamma(1.0 + xi, a, cfg));
}

namespace {

// d/dxi ln M(xi) and its derivative for the total-rate variable.
std::pair<double, double> rate_mean_derivs(double xi, const ChannelSpec& ch,
                                           const QuadratureConfig& cfg) {
    const double a = 1.0 / ch.snr;
    const auto m = specialfn::scaled_gamma_moments(1.0 + xi, a, cfg);
    const double mean = ch.num_subchannels * (std::log(ch.snr) + m.m1 / m.m0);
    const double var = ch.num_subchannels * (m.m2 * m.m0 - m.m1 * m.m1) / (m.m0 * m.m0);
    return {mean, var};
}

}  // namespace

TiltSolution solve_xi_t(double t, const ChannelSpec& ch, const QuadratureConfig& cfg) {
    ch.validate();
    const double mean0 = rate_mean_derivs(0.0, ch, cfg).first;  // = L * Cbar
    if (!(t > 0.0 && t < mean0))
        throw std::domain_error("solve_xi_t: target mean must be in (0, L*Cbar)");
    auto f = [&](double xi) { return rate_mean_derivs(xi, ch, cfg).first - t; };
    double hi = 0.0, lo = -1.0;
    double flo = f(lo);
    int guard = 0;
    while (flo > 0.0) {
        hi = lo;
        lo *= 2.0;
        flo = f(lo);
        if (++guard > 60) throw numerical_error("solve_xi_t: bracket expansion failed", flo);
    }
    double xi = roots::bisect(f, lo, hi, flo, 1e-12);
    xi = roots::newton_polish(
        [&](double x) {
            auto [mean, var] = rate_mean_derivs(x, ch, cfg);
            return std::pair{mean - t, var};
        },
        xi, lo, hi);
    TiltSolution s;
    s.tilt = xi;
    s.rate_function_value = t * xi - rate_log_mgf(xi, ch, cfg);
    return s;
}

double rate_rate_function(double t, const ChannelSpec& ch, const QuadratureConfig& cfg) {
    return solve_xi_t(t, ch, cfg).rate_function_value;
}

// ---------------------------------------------------------------------------
// Chebyshev interpolant of Xi(t)
// ---------------------------------------------------------------------------

namespace {

// Chebyshev-Lobatto values -> series coefficients (type-I DCT, O(n^2); the
// node counts here are small enough that an FFT would be noise).
std::vector<double> cheb_coeffs(const std::vector<double>& vals) {
    const int n = int(vals.size()) - 1;
    std::vector<double> c(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double w = (j == 0 || j == n) ? 0.5 : 1.0;
            s += w * vals[j] * std::cos(kPi * k * j / n);
        }
        c[k] = 2.0 * s / n;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
    return c;
}

double cheb_eval(const std::vector<double>& c, double x) {
    // Clenshaw recurrence
    double b1 = 0.0, b2 = 0.0;
    for (int k = int(c.size()) - 1; k >= 1; --k) {
        const double b0 = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

// Antiderivative coefficients: if f = sum c_k T_k then F with F(-1)=0 has
// A_k = (c_{k-1} - c_{k+1}) / (2k).
std::vector<double> cheb_antiderivative(const std::vector<double>& c) {
    const int n = int(c.size());
    std::vector<double> A(n + 1, 0.0);
    auto get = [&](int k) { return k < n ? c[k] : 0.0; };
    for (int k = 1; k <= n; ++k)
        A[k] = (get(k - 1) * (k == 1 ? 2.0 : 1.0) - get(k + 1)) / (2.0 * k);
    double at_m1 = 0.0;
    for (int k = 1; k <= n; ++k) at_m1 += A[k] * ((k % 2 == 0) ? 1.0 : -1.0);
    A[0] = -at_m1;
    return A;
}

}  // namespace

XiInterpolant::XiInterpolant(const ChannelSpec& ch, double t_lo, double t_hi, int nodes,
                             const QuadratureConfig& cfg)
    : t_lo_(t_lo), t_hi_(t_hi) {
    if (!(t_lo > 0.0 && t_hi > t_lo)) throw std::invalid_argument("XiInterpolant: bad interval");
    if (nodes < 8) throw std::invalid_argument("XiInterpolant: too few nodes");
    w_lo_ = std::log(t_lo);
    w_hi_ = std::log(t_hi);
    const int n = nodes - 1;
    node_vals_.resize(nodes);
    std::vector<double> q(nodes), xi_vals(nodes);
    for (int j = 0; j <= n; ++j) {
        const double x = std::cos(kPi * j / n);  // Lobatto node in [-1,1]
        const double w = 0.5 * (w_lo_ + w_hi_) + 0.5 * (w_hi_ - w_lo_) * x;
        const double t = std::exp(w);
        const double xi = solve_xi_t(std::min(t, t_hi * (1.0 - 1e-15)), ch, cfg).tilt;
        node_vals_[j] = xi;
        xi_vals[j] = xi;
        q[j] = xi * t;  // integrand of int Xi(t) dt in w coordinates
    }
    cheb_ = cheb_coeffs(q);
    cheb_xi_ = cheb_coeffs(xi_vals);
}

double XiInterpolant::eval(double t) const {
    const double w = std::log(t);
    const double x = (2.0 * w - (w_lo_ + w_hi_)) / (w_hi_ - w_lo_);
    return cheb_eval(cheb_xi_, std::clamp(x, -1.0, 1.0));
}

double XiInterpolant::integral(double t1, double t2) const {
    if (t1 > t2) return -integral(t2, t1);
    const auto A = cheb_antiderivative(cheb_);
    auto tox = [&](double t) {
        const double w = std::log(t);
        return std::clamp((2.0 * w - (w_lo_ + w_hi_)) / (w_hi_ - w_lo_), -1.0, 1.0);
    };
    const double scale = 0.5 * (w_hi_ - w_lo_);
    return scale * (cheb_eval(A, tox(t2)) - cheb_eval(A, tox(t1)));
}

std::pair<double, double> lf_transform_segment(double alpha, double delta, const RatePoint& rate,
                                               const ChannelSpec& ch,
                                               const QuadratureConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("lf_transform_segment: alpha must be in (0,1)");
    if (!(delta > 0.0 && delta <= alpha))
        throw std::domain_error("lf_transform_segment: delta must be in (0, alpha]");
    const double R = rate.total_rate;
    const XiInterpolant xi(ch, delta * R, R, 129, cfg);
    const double xi_aR = solve_xi_t(alpha * R, ch, cfg).tilt;
    const double at_delta = R * (alpha - delta) * xi_aR - xi.integral(delta * R, alpha * R);
    const double at_one = R * (alpha - 1.0) * xi_aR + xi.integral(alpha * R, R);
    return {at_delta, at_one};
}

}  // namespace outage_lab::largedev
