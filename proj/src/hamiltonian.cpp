#include "s3sr/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace s3sr {

namespace {

constexpr double kLooseUnitTol = 1e-6; // guard for states produced by integration
constexpr double kChartGuard = 1e-8;

void require_nearly_unit(const Vec4& x, const char* who) {
    if (std::abs(norm(x) - 1.0) > kLooseUnitTol)
        throw NonUnitInput(std::string(who) + ": |x| deviates from 1 beyond 1e-6");
}

PhaseDeriv rhs_unchecked(const Vec4& x, const Vec4& xi) {
    const Vec4 i1x = apply_i1(x);
    const Vec4 i2x = apply_i2(x);
    const double p1 = dot(i1x, xi);
    const double p2 = dot(i2x, xi);
    return {p1 * i1x + p2 * i2x, p1 * apply_i1(xi) + p2 * apply_i2(xi)};
}

} // namespace

double hamiltonian_value(const PhaseState& state) {
    require_nearly_unit(state.x, "hamiltonian_value");
    const double p1 = dot(apply_i1(state.x), state.xi);
    const double p2 = dot(apply_i2(state.x), state.xi);
    return 0.5 * (p1 * p1 + p2 * p2);
}

PhaseDeriv ham_rhs(const PhaseState& state) {
    require_nearly_unit(state.x, "ham_rhs");
    return rhs_unchecked(state.x, state.xi);
}

double Trajectory::max_norm_drift() const {
    double m = 0.0;
    for (const auto& smp : samples) m = std::max(m, smp.norm_drift);
    return m;
}

double Trajectory::max_h_drift() const {
    double m = 0.0;
    for (const auto& smp : samples) m = std::max(m, smp.h_drift);
    return m;
}

double Trajectory::max_abs_c() const {
    double m = 0.0;
    for (const auto& smp : samples) m = std::max(m, std::abs(smp.c));
    return m;
}

Trajectory integrate(const S3Point& x0, const Covector& xi0, double s_end,
                     const OdeOptions& opts) {
    if (s_end < 0.0) throw InvalidParam("integrate: s_end must be non-negative");

    Trajectory traj;
    traj.H0 = hamiltonian_value({x0.vec(), xi0});

    // Misconfiguration guard: 10x the option tolerances, budgeted per unit
    // of arc length for horizons beyond 1.
    const double breach_tol =
        10.0 * std::max(opts.rel_tol, opts.abs_tol) * std::max(1.0, s_end);
    const double h_scale = std::max(1.0, std::abs(traj.H0));

    auto rhs = [](const std::array<double, 8>& y) {
        const Vec4 x{y[0], y[1], y[2], y[3]};
        const Vec4 xi{y[4], y[5], y[6], y[7]};
        const PhaseDeriv d = rhs_unchecked(x, xi);
        return std::array<double, 8>{d.dx.x1,  d.dx.x2,  d.dx.x3,  d.dx.x4,
                                     d.dxi.x1, d.dxi.x2, d.dxi.x3, d.dxi.x4};
    };

    auto record = [&](double s, const std::array<double, 8>& y,
                      const std::array<double, 8>& dy) {
        TrajectorySample smp;
        smp.s = s;
        smp.x = {y[0], y[1], y[2], y[3]};
        smp.xi = {y[4], y[5], y[6], y[7]};
        const Vec4 dx{dy[0], dy[1], dy[2], dy[3]};
        smp.a = dot(dx, apply_i1(smp.x));
        smp.b = dot(dx, apply_i2(smp.x));
        smp.c = dot(dx, apply_i3(smp.x));
        smp.H = hamiltonian_value({smp.x, smp.xi});
        smp.norm_drift = std::abs(norm(smp.x) - 1.0);
        smp.h_drift = std::abs(smp.H - traj.H0);
        if (smp.norm_drift > breach_tol || smp.h_drift > breach_tol * h_scale)
            throw MonitorBreach("integrate: conservation drift exceeds 10x tolerance at s = " +
                                std::to_string(s));
        traj.samples.push_back(smp);
    };

    const std::array<double, 8> y0{x0.x1(),  x0.x2(),  x0.x3(),  x0.x4(),
                                   xi0.x1, xi0.x2, xi0.x3, xi0.x4};
    integrate_dopri5<8>(rhs, y0, 0.0, s_end, opts, record);
    return traj;
}

double hamiltonian_value_hyper(const HyperPhaseState& st) {
    const double t = std::tan(st.eta);
    const double ct = 1.0 / t;
    return 0.5 * (t * t * st.psi1 * st.psi1 + ct * ct * st.psi2 * st.psi2 +
                  4.0 * st.theta * st.theta + 2.0 * st.psi1 * st.psi2);
}

HyperDeriv ham_rhs_hyper(const HyperPhaseState& st) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (st.eta < kChartGuard || st.eta > half_pi - kChartGuard)
        throw ChartSingularity("ham_rhs_hyper: eta = " + std::to_string(st.eta) +
                               " too close to a chart boundary");

    const double t = std::tan(st.eta);
    const double ct = 1.0 / t;
    const double c2 = std::cos(st.eta) * std::cos(st.eta);
    const double s2 = std::sin(st.eta) * std::sin(st.eta);

    HyperDeriv d;
    d.dxi1 = st.psi1 * t * t + st.psi2;
    d.dxi2 = st.psi2 * ct * ct + st.psi1;
    d.deta = 4.0 * st.theta;
    d.dpsi1 = 0.0;
    d.dpsi2 = 0.0;
    d.dtheta = -st.psi1 * st.psi1 * t / c2 + st.psi2 * st.psi2 * ct / s2;
    return d;
}

double HyperTrajectory::max_h_drift() const {
    double m = 0.0;
    for (const auto& smp : samples) m = std::max(m, smp.h_drift);
    return m;
}

HyperTrajectory integrate_hyper(const HyperPhaseState& init, double s_end,
                                const OdeOptions& opts) {
    if (s_end < 0.0) throw InvalidParam("integrate_hyper: s_end must be non-negative");
    if (init.eta < 1e-6)
        throw ChartSingularity(
            "integrate_hyper: eta(0) must be >= 1e-6; the eta = 0 start is covered by the "
            "closed forms");

    HyperTrajectory traj;
    traj.H0 = hamiltonian_value_hyper(init);

    auto rhs = [](const std::array<double, 6>& y) {
        const HyperPhaseState st{y[0], y[1], y[2], y[3], y[4], y[5]};
        const HyperDeriv d = ham_rhs_hyper(st);
        return std::array<double, 6>{d.dxi1, d.dxi2, d.deta, d.dpsi1, d.dpsi2, d.dtheta};
    };

    auto record = [&](double s, const std::array<double, 6>& y,
                      const std::array<double, 6>&) {
        HyperTrajectorySample smp;
        smp.s = s;
        smp.state = {y[0], y[1], y[2], y[3], y[4], y[5]};
        smp.h_drift = std::abs(hamiltonian_value_hyper(smp.state) - traj.H0);
        traj.samples.push_back(smp);
    };

    const std::array<double, 6> y0{init.xi1, init.xi2, init.eta,
                                   init.psi1, init.psi2, init.theta};
    integrate_dopri5<6>(rhs, y0, 0.0, s_end, opts, record);
    return traj;
}

} // namespace s3sr
