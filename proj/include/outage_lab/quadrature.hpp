// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "outage_lab/errors.hpp"

namespace outage_lab {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: rel_tol must be > 0");
        if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureConfig: abs_tol must be >= 0");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
    }
};

namespace quadrature {

// Gauss-Kronrod 15-point rule on [-1,1] (QUADPACK DQK15 values).
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N, class F>
struct Gk15Result {
    std::array<double, N> value{};
    std::array<double, N> error{};
    std::array<double, N> l1{};  // integral of |f|, for relative error control
};

/// One GK15 panel of an N-component integrand on [a,b].
template <std::size_t N, class F>
Gk15Result<N, F> gk15_panel(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<double, N> kronrod{}, gauss{}, l1{};
    for (int i = 0; i < 8; ++i) {
        const double x = kGK15Nodes[i];
        std::array<double, N> fv{};
        if (i == 7) {
            fv = f(c);
        } else {
            auto f1 = f(c - h * x);
            auto f2 = f(c + h * x);
            for (std::size_t k = 0; k < N; ++k) fv[k] = f1[k] + f2[k];
        }
        for (std::size_t k = 0; k < N; ++k) {
            kronrod[k] += kKronrodWeights[i] * fv[k];
            l1[k] += kKronrodWeights[i] * std::fabs(fv[k]);
            if (i % 2 == 1) gauss[k] += kGaussWeights[i / 2] * fv[k];
        }
    }
    Gk15Result<N, F> r;
    for (std::size_t k = 0; k < N; ++k) {
        r.value[k] = h * kronrod[k];
        r.l1[k] = h * l1[k];
        r.error[k] = std::fabs(h * (kronrod[k] - gauss[k]));
    }
    return r;
}

/// Adaptive GK15 for an N-component integrand over a finite interval.
/// `seeds` optionally pre-splits the interval (useful for peaked integrands).
/// Throws numerical_error carrying the achieved relative tolerance.
template <std::size_t N, class F>
std::array<double, N> integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg,
                                         const std::vector<double>& seeds = {}) {
    cfg.validate();
    struct Seg {
        double a, b;
        Gk15Result<N, F> r;
    };
    std::vector<Seg> segs;
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double s : seeds)
        if (s > a && s < b) cuts.push_back(s);
    cuts.push_back(b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        segs.push_back({cuts[i], cuts[i + 1], gk15_panel<N>(f, cuts[i], cuts[i + 1])});

    auto total = [&] {
        std::array<double, N> v{}, e{}, l{};
        for (auto& s : segs)
            for (std::size_t k = 0; k < N; ++k) {
                v[k] += s.r.value[k];
                e[k] += s.r.error[k];
                l[k] += s.r.l1[k];
            }
        return std::tuple{v, e, l};
    };

    int splits = 0;
    while (true) {
        auto [v, e, l] = total();
        bool ok = true;
        double worst = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::max(l[k], std::fabs(v[k])));
            if (e[k] > tol) ok = false;
            worst = std::max(worst, l[k] > 0 ? e[k] / l[k] : 0.0);
        }
        if (ok) return v;
        if (splits >= cfg.max_subdivisions)
            throw numerical_error("adaptive quadrature: subdivision limit reached", worst);
        // split the segment with the largest error sum
        std::size_t j = 0;
        double emax = -1.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            double es = 0.0;
            for (std::size_t k = 0; k < N; ++k) es += segs[i].r.error[k];
            if (es > emax) {
                emax = es;
                j = i;
            }
        }
        const double mid = 0.5 * (segs[j].a + segs[j].b);
        Seg right{mid, segs[j].b, gk15_panel<N>(f, mid, segs[j].b)};
        segs[j].b = mid;
        segs[j].r = gk15_panel<N>(f, segs[j].a, mid);
        segs.push_back(right);
        ++splits;
    }
}

/// Scalar convenience wrapper.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg,
                 const std::vector<double>& seeds = {}) {
    auto g = [&f](double x) { return std::array<double, 1>{f(x)}; };
    return integrate_adaptive<1>(g, a, b, cfg, seeds)[0];
}

/// Trapezoid sum over a uniform grid for integrands that decay
/// double-exponentially on both sides (log-substituted kernels).
/// Expands the window until the integrand is below `floor` relative to its
/// running maximum.
template <class F>
double trapezoid_decaying(F&& f, double center, double h = 0.05, double floor = 1e-18,
                          double max_span = 120.0) {
    double fmax = f(center);
    double sum = fmax;
    for (int side = 0; side < 2; ++side) {
        const double dir = side == 0 ? -1.0 : 1.0;
        int tail_hits = 0;
        for (int i = 1; i * h <= max_span; ++i) {
            const double v = f(center + dir * i * h);
            sum += v;
            if (v > fmax) fmax = v;
            if (v <= fmax * floor) {
                if (++tail_hits >= 3) break;
            } else {
                tail_hits = 0;
            }
        }
    }
    return sum * h;
}

}  // namespace quadrature
}  // namespace outage_lab
