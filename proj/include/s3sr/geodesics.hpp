#pragma once

#include <complex>

#include "s3sr/core.hpp"

namespace s3sr {

// One member of the closed-form geodesic family through `base`: B is the
// vertical-momentum (curvature) parameter, theta the heading with
// C + iD = exp(i theta), so the family is unit speed by construction.
struct GeodesicParam {
    S3Point base = S3Point::identity();
    double B = 0.0;
    double theta = 0.0;
};

// Complex pair (z, w) = (x1 + i x2, x3 + i x4).
struct ZW {
    std::complex<double> z;
    std::complex<double> w;
};

// Geodesic with constant frame-velocity coordinates (cos psi, sin psi, 0):
// x(s) = x0 cos s + (cos psi I1 + sin psi I2) x0 sin s.
S3Point const_geodesic(const S3Point& x0, double psi, double s);

// Integral curve of Z through x0: x(s) = x0 cos s + I3 x0 sin s.
S3Point vertical_line(const S3Point& x0, double s);

// Closed-form geodesic from the identity:
//   z(s) = (cos(s mu) + i (B/mu) sin(s mu)) exp(-iBs),   mu = sqrt(1 + B^2),
//   w(s) = exp(i theta) / mu * sin(s mu) exp(iBs).
// Entire in s and B; |z|^2 + |w|^2 = 1 identically.
ZW geodesic_bc(double B, double theta, double s);
S3Point geodesic_bc_point(double B, double theta, double s);

// Exact s-derivative of geodesic_bc (unit speed: |dz|^2 + |dw|^2 = 1).
ZW geodesic_bc_velocity(double B, double theta, double s);

// Left translation of geodesic_bc to an arbitrary base point.
S3Point geodesic_from(const S3Point& x0, double B, double theta, double s);
S3Point geodesic_from(const GeodesicParam& param, double s);

// ---------------------------------------------------------------------------
// Hyperspherical chart: z = exp(i xi1) cos(eta), w = exp(i xi2) sin(eta).
// ---------------------------------------------------------------------------
struct HyperCoords {
    double xi1 = 0.0;
    double xi2 = 0.0;
    double eta = 0.0; // in [0, pi/2]
};

// Geodesic family in the hyperspherical chart, started on the chart axis
// with eta(0) = 0 and d/ds eta(0) = eta_dot0 > 0. C = eta_dot0^2 + 4 psi1^2.
class HyperGeodesicParam {
public:
    HyperGeodesicParam(double psi1, double eta_dot0); // throws InvalidParam if eta_dot0 <= 0

    double psi1() const noexcept { return psi1_; }
    double eta_dot0() const noexcept { return eta_dot0_; }
    double C() const noexcept { return eta_dot0_ * eta_dot0_ + 4.0 * psi1_ * psi1_; }

private:
    double psi1_;
    double eta_dot0_;
};

// Closed forms in the chart:
//   sin^2 eta(s) = (C - 4 psi1^2)/C * sin^2(sqrt(C) s),
//   xi2(s) = psi1 s,
//   xi1(s) = -psi1 s + sign(psi1)/2 * atan(2|psi1|/sqrt(C) tan(sqrt(C) s)),
// with the arctangent continued across its poles so xi1 is continuous in s.
// The returned xi1, xi2 are unwrapped (not reduced to [-pi, pi)).
HyperCoords geodesic_hyper(const HyperGeodesicParam& param, double s);

// Chart conversions. At eta = 0 the convention xi2 = 0 applies, at
// eta = pi/2 the convention xi1 = 0; away from those fibers the maps are
// mutually inverse. to_hyper wraps angles to [-pi, pi).
HyperCoords to_hyper(const S3Point& x);
S3Point from_hyper(const HyperCoords& h);

// atan(k tan(u)) continued across the poles of tan so that the result is a
// continuous, monotone function of u with value 0 at u = 0. Exposed for the
// boundary-value machinery, which needs the same branch handling.
double atan_tan_continuous(double k, double u);

// Wraps an angle to [-pi, pi).
double wrap_pi(double angle);
// Wraps an angle to [0, 2 pi).
double wrap_2pi(double angle);

} // namespace s3sr
