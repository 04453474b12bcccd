// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>

#include "outage_lab/errors.hpp"

namespace outage_lab::roots {

/// Bisection on a bracketing interval [lo, hi] with f(lo) and f(hi) of
/// opposite sign, down to the given interval width.
template <class F>
double bisect(F&& f, double lo, double hi, double flo, double width) {
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Newton polish from a seed, staying inside [lo, hi]; `fd` returns
/// (value, derivative).
template <class FD>
double newton_polish(FD&& fd, double x, double lo, double hi, int iters = 4) {
    for (int i = 0; i < iters; ++i) {
        auto [v, d] = fd(x);
        if (d == 0.0) break;
        double step = v / d;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) break;
        x = xn;
        if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
    }
    return x;
}

/// Golden-section maximization of f on [lo, hi] to the given x-width.
template <class F>
double golden_max(F&& f, double lo, double hi, double width) {
    constexpr double invphi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > width) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace outage_lab::roots
