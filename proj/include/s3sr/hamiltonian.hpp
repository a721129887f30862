#pragma once

#include <vector>

#include "s3sr/core.hpp"
#include "s3sr/ode.hpp"

namespace s3sr {

// ---------------------------------------------------------------------------
// Cartesian chart: phase space is (x, xi) in R^4 x R^4 with |x| = 1.
// ---------------------------------------------------------------------------
struct PhaseState {
    Vec4 x;
    Covector xi;
};

struct PhaseDeriv {
    Vec4 dx;
    Vec4 dxi;
};

// H = ( <I1 x, xi>^2 + <I2 x, xi>^2 ) / 2.
double hamiltonian_value(const PhaseState& state);

// Right-hand side of the Hamiltonian system:
//   dx  = <I1 x, xi> I1 x  + <I2 x, xi> I2 x
//   dxi = <I1 x, xi> I1 xi + <I2 x, xi> I2 xi
PhaseDeriv ham_rhs(const PhaseState& state);

struct TrajectorySample {
    double s = 0.0;
    Vec4 x;
    Covector xi;
    double a = 0.0, b = 0.0, c = 0.0; // frame coefficients of dx
    double H = 0.0;
    double norm_drift = 0.0; // | |x| - 1 |
    double h_drift = 0.0;    // | H - H(0) |
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double H0 = 0.0;

    double max_norm_drift() const;
    double max_h_drift() const;
    double max_abs_c() const;
};

// Integrates the Hamiltonian flow from (x0, xi0) over [0, s_end] with an
// embedded RK5(4) pair. Sampling happens at every accepted step (max_step
// bounds the spacing); s_end == 0 yields a single-sample trajectory. Throws
// MonitorBreach if norm or energy drift exceeds 10x the option tolerances
// (budgeted per unit of arc length). The radial covector component <xi, x>
// is gauge: it does not affect the projected curve x(s).
Trajectory integrate(const S3Point& x0, const Covector& xi0, double s_end,
                     const OdeOptions& opts = {});

// ---------------------------------------------------------------------------
// Hyperspherical chart (xi1, xi2, eta) with momenta (psi1, psi2, theta).
// The chart is valid for eta strictly inside (0, pi/2).
// ---------------------------------------------------------------------------
struct HyperPhaseState {
    double xi1 = 0.0, xi2 = 0.0, eta = 0.0;
    double psi1 = 0.0, psi2 = 0.0, theta = 0.0;
};

struct HyperDeriv {
    double dxi1 = 0.0, dxi2 = 0.0, deta = 0.0;
    double dpsi1 = 0.0, dpsi2 = 0.0, dtheta = 0.0;
};

// H = (tan^2(eta) psi1^2 + cotan^2(eta) psi2^2 + 4 theta^2 + 2 psi1 psi2)/2.
double hamiltonian_value_hyper(const HyperPhaseState& state);

// The six chart derivatives:
//   dxi1 = psi1 tan^2 eta + psi2,   dxi2 = psi2 cotan^2 eta + psi1,
//   deta = 4 theta,  dpsi1 = dpsi2 = 0,
//   dtheta = -psi1^2 tan(eta)/cos^2(eta) + psi2^2 cotan(eta)/sin^2(eta).
// Throws ChartSingularity when eta is within 1e-8 of 0 or pi/2.
HyperDeriv ham_rhs_hyper(const HyperPhaseState& state);

struct HyperTrajectorySample {
    double s = 0.0;
    HyperPhaseState state;
    double h_drift = 0.0;
};

struct HyperTrajectory {
    std::vector<HyperTrajectorySample> samples;
    double H0 = 0.0;

    double max_h_drift() const;
};

// Integrates the hyperspherical system over [0, s_end]. The start must
// satisfy eta >= 1e-6 (a start exactly on the chart axis is ill-posed; the
// closed forms own that case). Chart-boundary approach raises
// ChartSingularity.
HyperTrajectory integrate_hyper(const HyperPhaseState& init, double s_end,
                                const OdeOptions& opts = {});

} // namespace s3sr
