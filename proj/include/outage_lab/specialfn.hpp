// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <vector>

#include "outage_lab/quadrature.hpp"

namespace outage_lab::specialfn {

/// Upper incomplete gamma Gamma(s, a) = int_a^inf e^-t t^(s-1) dt.
/// Valid for any real s since a > 0 keeps the integral finite; always
/// evaluated by direct quadrature (no recurrence from the complete gamma,
/// which cancels badly at negative orders).
double upper_incomplete_gamma(double s, double a, const QuadratureConfig& cfg = {});

/// Gamma log-moment int_a^inf t^(b-1) (ln t)^k e^-t dt for k in {0,1,2}.
/// k=0 reduces to the incomplete gamma; k=1,2 realize the order-derivative
/// Meijer-G instances needed by the tilt equations as plain 1-D integrals.
double gamma_log_moment(double b, double a, int k, const QuadratureConfig& cfg = {});

/// The three log-moments with a common exponential scale factored out:
/// int_a^inf t^(b-1) ln(t)^k e^-t dt = m[k] * exp(log_scale - a).
/// Ratios of m[] are scale-free, which is what the tilt machinery consumes;
/// the explicit scale keeps extreme orders (|b| ~ 50) and extreme a finite.
struct ScaledGammaMoments {
    double m0, m1, m2;
    double log_scale;  // of e^a * Gamma-moment, i.e. moments of the shifted integrand
};
ScaledGammaMoments scaled_gamma_moments(double b, double a, const QuadratureConfig& cfg = {});

/// ln( e^a * Gamma(b, a) ), stable for all gamma = 1/a.
double log_scaled_gamma(double b, double a, const QuadratureConfig& cfg = {});

/// Erlang tail Gamma(L, x)/(L-1)! = sum_{k<L} e^-x x^k / k!.
double erlang_tail(int L, double x);

/// Modified Bessel K1 via the integral representation
/// K1(x) = int_0^inf e^{-x cosh t} cosh t dt. Test oracle; not used by f_l.
double bessel_k1(double x);

inline constexpr int kDefaultMaxOrder = 16;

/// F_L(z) = Pr{ prod of L iid unit exponentials >= z }, the G^{L,0}_{0,L}
/// tail instance. L=1,2 are evaluated directly; higher orders integrate a
/// memoized table of the previous order.
double f_l(int L, double z, const QuadratureConfig& cfg = {}, int max_order = kDefaultMaxOrder);

/// 1 - F_L(z) without cancellation at small z (small-z series branch).
double f_l_tail(int L, double z, const QuadratureConfig& cfg = {},
                int max_order = kDefaultMaxOrder);

/// Density of the exponential product, -dF_L/dz (the all-zero-parameter
/// G^{L,0}_{0,L} instance).
double f_l_density(int L, double z, const QuadratureConfig& cfg = {},
                   int max_order = kDefaultMaxOrder);

/// Memoized tail table: log-spaced grid of F_L values plus the quadrature
/// settings it was built with. Serializable as a small CSV cache.
struct FLTable {
    int order = 0;
    std::vector<double> grid;    // strictly increasing, all > 0
    std::vector<double> values;  // F_L at each abscissa, strictly decreasing, in (0,1]
    QuadratureConfig config;

    void validate() const;
    void save(std::ostream& out) const;
    static FLTable load(std::istream& in);
};

/// Builds the default 512-point table on z in [1e-12, 1e3].
FLTable make_fl_table(int L, const QuadratureConfig& cfg = {}, double z_min = 1e-12,
                      double z_max = 1e3, int grid_size = 512);

}  // namespace outage_lab::specialfn
