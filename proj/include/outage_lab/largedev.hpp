// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "outage_lab/quadrature.hpp"

namespace outage_lab::largedev {

/// A parallel Rayleigh channel: subchannel count and linear SNR.
struct ChannelSpec {
    int num_subchannels = 1;
    double snr = 1.0;

    void validate() const;
};

/// Target rate in nats with its derived per-subchannel and normalized forms.
/// All rates are in nats; dB conversion happens at the CLI boundary only.
struct RatePoint {
    double total_rate = 0.0;
    double per_subchannel_rate = 0.0;
    double multiplexing_gain = 0.0;      // r = R / ln(1+snr)
    double avg_multiplexing_gain = 0.0;  // rbar = r / L

    static RatePoint from_total_rate(double total, const ChannelSpec& ch);
    static RatePoint from_avg_multiplexing_gain(double rbar, const ChannelSpec& ch);
    void validate(const ChannelSpec& ch) const;
};

/// A solved tilt: the stationary point of the Legendre-Fenchel problem, the
/// rate-function value there, and (for the zero-deficit solution) the
/// saddle-point curvature.
struct TiltSolution {
    double tilt = 0.0;
    double rate_function_value = 0.0;
    std::optional<double> curvature;  // Lambda''(tilt); set by solve_xi0 only
};

/// Per-subchannel log-MGF of the rate deficit X = Rbar - ln(1 + snr |h|^2):
/// Lambda(xi) = (Rbar - ln snr) xi + ln( e^{1/snr} Gamma(1 - xi, 1/snr) ).
double log_mgf(double xi, const ChannelSpec& ch, const RatePoint& rate,
               const QuadratureConfig& cfg = {});

/// (Lambda', Lambda'') via the first and second gamma log-moments.
std::pair<double, double> log_mgf_derivs(double xi, const ChannelSpec& ch, const RatePoint& rate,
                                         const QuadratureConfig& cfg = {});

/// The unique positive zero of Lambda' (requires Rbar below the per-subchannel
/// ergodic capacity). rate_function_value = -Lambda(Xi(0)) > 0, curvature =
/// Lambda''(Xi(0)).
TiltSolution solve_xi0(const ChannelSpec& ch, const RatePoint& rate,
                       const QuadratureConfig& cfg = {});

/// Tilt matching a target mean t of the total-rate variable
/// Y = sum_l ln(1 + snr |h_l|^2); negative for t below the mean L*Cbar.
TiltSolution solve_xi_t(double t, const ChannelSpec& ch, const QuadratureConfig& cfg = {});

/// ln M(xi) of the total-rate variable Y (all L subchannels).
double rate_log_mgf(double xi, const ChannelSpec& ch, const QuadratureConfig& cfg = {});

/// Legendre-Fenchel transform of Y at t, via the solved tilt:
/// Lambda*(t) = t Xi(t) - ln M(Xi(t)).
double rate_rate_function(double t, const ChannelSpec& ch, const QuadratureConfig& cfg = {});

/// Chebyshev interpolant of the tilt function Xi(t) on [t_lo, t_hi], with
/// exact integration of the interpolant over subintervals. Nodes are placed
/// in ln t because Xi(t) ~ -L/t near the origin.
class XiInterpolant {
public:
    XiInterpolant(const ChannelSpec& ch, double t_lo, double t_hi, int nodes = 129,
                  const QuadratureConfig& cfg = {});

    double eval(double t) const;
    double integral(double t1, double t2) const;  // of Xi(t) dt
    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }

private:
    double t_lo_, t_hi_;
    double w_lo_, w_hi_;              // ln t endpoints
    std::vector<double> node_vals_;   // Xi at Chebyshev-Lobatto nodes (in ln t)
    std::vector<double> cheb_;        // Chebyshev coefficients of Xi(e^w) e^w
    std::vector<double> cheb_xi_;     // Chebyshev coefficients of Xi(e^w)
};

/// The two segment rate-function values of the alpha-tilted total-rate
/// variable: Lambda*_a(delta R) = R(alpha-delta) Xi(alpha R) - int Xi and
/// Lambda*_a(R) (the delta = 1 case).
std::pair<double, double> lf_transform_segment(double alpha, double delta, const RatePoint& rate,
                                               const ChannelSpec& ch,
                                               const QuadratureConfig& cfg = {});

}  // namespace outage_lab::largedev
