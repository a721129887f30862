#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "s3sr/errors.hpp"

namespace s3sr {

// Tolerances and step bound for the adaptive integrators. The solution is
// never projected back to the sphere; norm and energy drift are recorded as
// quality monitors instead.
struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.1;
};

namespace ode_detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

} // namespace ode_detail

// Adaptive Dormand-Prince 5(4) with PI step-size control and FSAL. `Rhs`
// maps a state array to its derivative; `on_sample` receives (s, y, y') at
// the initial point and after every accepted step.
template <std::size_t N, class Rhs, class Callback>
void integrate_dopri5(Rhs&& rhs, std::array<double, N> y, double s0, double s1,
                      const OdeOptions& opts, Callback&& on_sample) {
    using State = std::array<double, N>;
    using namespace ode_detail;

    if (opts.rel_tol <= 0.0 || opts.abs_tol <= 0.0 || opts.max_step <= 0.0)
        throw InvalidParam("integrate: tolerances and max_step must be positive");
    if (s1 < s0) throw InvalidParam("integrate: backward integration not supported");

    State k1 = rhs(y);
    on_sample(s0, y, k1);
    if (s1 == s0) return;

    const double span = s1 - s0;

    // Initial step from the magnitude of the right-hand side, capped by
    // max_step and the span.
    double ynorm = 0.0, fnorm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        ynorm = std::max(ynorm, std::abs(y[i]));
        fnorm = std::max(fnorm, std::abs(k1[i]));
    }
    double h = 0.01 * (ynorm + 1.0) / (fnorm + 1e-8);
    h = std::min({h, opts.max_step, span});

    constexpr double beta = 0.04;
    constexpr double expo1 = 0.2 - 0.75 * beta;
    constexpr double safety = 0.9;
    double facold = 1e-4;
    double s = s0;

    State k2, k3, k4, k5, k6, k7, ytmp, ynew;
    while (s < s1) {
        h = std::min(h, s1 - s);
        if (h <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s)))
            throw StepSizeUnderflow("integrate: step size underflow at s = " +
                                    std::to_string(s));

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        k2 = rhs(ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        k6 = rhs(ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                  b6 * k6[i]);
        k7 = rhs(ynew);

        double errsq = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double le = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc =
                opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            errsq += (le / sc) * (le / sc);
        }
        const double err = std::sqrt(errsq / static_cast<double>(N));

        if (err <= 1.0) {
            s += h;
            y = ynew;
            k1 = k7; // FSAL
            on_sample(s, y, k1);
            double fac = safety * std::pow(err > 0.0 ? err : 1e-16, -expo1) *
                         std::pow(facold, beta);
            fac = std::clamp(fac, 0.2, 10.0);
            facold = std::max(err, 1e-4);
            h = std::min(h * fac, opts.max_step);
        } else {
            const double fac = std::clamp(safety * std::pow(err, -expo1), 0.1, 1.0);
            h *= fac;
        }
    }
}

} // namespace s3sr
