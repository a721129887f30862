#include "s3sr/geodesics.hpp"

#include <cmath>
#include <numbers>

namespace s3sr {

namespace {
constexpr double kPi = std::numbers::pi;
}

S3Point const_geodesic(const S3Point& x0, double psi, double s) {
    const Vec4& x = x0.vec();
    const Vec4 dir = std::cos(psi) * apply_i1(x) + std::sin(psi) * apply_i2(x);
    return S3Point(S3Point::Unchecked{}, x * std::cos(s) + dir * std::sin(s));
}

S3Point vertical_line(const S3Point& x0, double s) {
    const Vec4& x = x0.vec();
    return S3Point(S3Point::Unchecked{}, x * std::cos(s) + apply_i3(x) * std::sin(s));
}

ZW geodesic_bc(double B, double theta, double s) {
    const double mu = std::sqrt(1.0 + B * B);
    const double cs = std::cos(s * mu);
    const double sn = std::sin(s * mu);
    const std::complex<double> rot = std::polar(1.0, -B * s);
    const std::complex<double> z = (std::complex<double>(cs, B / mu * sn)) * rot;
    const std::complex<double> w =
        std::polar(1.0 / mu, theta) * sn * std::conj(rot);
    return {z, w};
}

S3Point geodesic_bc_point(double B, double theta, double s) {
    const ZW p = geodesic_bc(B, theta, s);
    return S3Point(S3Point::Unchecked{}, from_zw(p.z, p.w));
}

ZW geodesic_bc_velocity(double B, double theta, double s) {
    const double mu = std::sqrt(1.0 + B * B);
    const double cs = std::cos(s * mu);
    const double sn = std::sin(s * mu);
    // dz = -(1/mu) sin(s mu) exp(-iBs); dw = e^{i theta}/mu (mu cos + iB sin) e^{iBs}
    const std::complex<double> dz = -(sn / mu) * std::polar(1.0, -B * s);
    const std::complex<double> dw = std::polar(1.0 / mu, theta) *
                                    std::complex<double>(mu * cs, B * sn) *
                                    std::polar(1.0, B * s);
    return {dz, dw};
}

S3Point geodesic_from(const S3Point& x0, double B, double theta, double s) {
    return quat_mul(x0, geodesic_bc_point(B, theta, s));
}

S3Point geodesic_from(const GeodesicParam& param, double s) {
    return geodesic_from(param.base, param.B, param.theta, s);
}

HyperGeodesicParam::HyperGeodesicParam(double psi1, double eta_dot0)
    : psi1_(psi1), eta_dot0_(eta_dot0) {
    if (!(eta_dot0 > 0.0))
        throw InvalidParam("HyperGeodesicParam: eta_dot0 must be positive (C > 4 psi1^2)");
}

double atan_tan_continuous(double k, double u) {
    double m = std::floor(u / kPi + 0.5);
    double ur = u - m * kPi; // in [-pi/2, pi/2)
    // Rounding can spill ur just past an interval end, where tan flips sign
    // and the branch term would be off by pi; renormalize consistently.
    if (ur >= 0.5 * kPi) {
        ur -= kPi;
        m += 1.0;
    } else if (ur < -0.5 * kPi) {
        ur += kPi;
        m -= 1.0;
    }
    const double sgn = (k > 0.0) ? 1.0 : (k < 0.0 ? -1.0 : 0.0);
    return std::atan(k * std::tan(ur)) + m * kPi * sgn;
}

double wrap_pi(double angle) {
    double a = std::remainder(angle, 2.0 * kPi); // (-pi, pi]
    if (a == kPi) a = -kPi;
    return a;
}

double wrap_2pi(double angle) {
    double a = std::fmod(angle, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

HyperCoords geodesic_hyper(const HyperGeodesicParam& param, double s) {
    const double C = param.C();
    const double sqrtC = std::sqrt(C);
    const double psi1 = param.psi1();

    const double amp2 = (C - 4.0 * psi1 * psi1) / C;
    const double sn = std::sin(sqrtC * s);
    double sin_eta = std::sqrt(amp2) * std::abs(sn);
    sin_eta = std::min(sin_eta, 1.0);

    HyperCoords h;
    h.eta = std::asin(sin_eta);
    h.xi2 = psi1 * s;
    if (psi1 == 0.0) {
        h.xi1 = 0.0;
    } else {
        h.xi1 = -psi1 * s +
                0.5 * atan_tan_continuous(2.0 * psi1 / sqrtC, sqrtC * s);
    }
    return h;
}

HyperCoords to_hyper(const S3Point& p) {
    const Vec4& x = p.vec();
    const double rz = std::hypot(x.x1, x.x2);
    const double rw = std::hypot(x.x3, x.x4);
    HyperCoords h;
    h.eta = std::atan2(rw, rz);
    h.xi1 = (rz == 0.0) ? 0.0 : std::atan2(x.x2, x.x1);
    h.xi2 = (rw == 0.0) ? 0.0 : std::atan2(x.x4, x.x3);
    h.xi1 = wrap_pi(h.xi1);
    h.xi2 = wrap_pi(h.xi2);
    return h;
}

S3Point from_hyper(const HyperCoords& h) {
    const double ce = std::cos(h.eta);
    const double se = std::sin(h.eta);
    return S3Point(S3Point::Unchecked{},
                   Vec4{ce * std::cos(h.xi1), ce * std::sin(h.xi1),
                        se * std::cos(h.xi2), se * std::sin(h.xi2)});
}

} // namespace s3sr
