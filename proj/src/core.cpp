#include "s3sr/core.hpp"

#include <cmath>

namespace s3sr {

double dot(const Vec4& a, const Vec4& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3 + a.x4 * b.x4;
}

double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

Vec4 normalized(const Vec4& a) {
    const double n = norm(a);
    if (n == 0.0) throw InvalidParam("cannot normalize the zero vector");
    return a * (1.0 / n);
}

std::complex<double> z_part(const Vec4& v) { return {v.x1, v.x2}; }
std::complex<double> w_part(const Vec4& v) { return {v.x3, v.x4}; }

Vec4 from_zw(std::complex<double> z, std::complex<double> w) {
    return {z.real(), z.imag(), w.real(), w.imag()};
}

Vec4 qmul(const Vec4& x, const Vec4& y) {
    return {
        x.x1 * y.x1 - x.x2 * y.x2 - x.x3 * y.x3 - x.x4 * y.x4,
        x.x2 * y.x1 + x.x1 * y.x2 - x.x4 * y.x3 + x.x3 * y.x4,
        x.x3 * y.x1 + x.x4 * y.x2 + x.x1 * y.x3 - x.x2 * y.x4,
        x.x4 * y.x1 - x.x3 * y.x2 + x.x2 * y.x3 + x.x1 * y.x4,
    };
}

Vec4 qconj(const Vec4& a) { return {a.x1, -a.x2, -a.x3, -a.x4}; }

Vec4 Mat4::apply(const Vec4& v) const {
    Vec4 r;
    const double in[4] = {v.x1, v.x2, v.x3, v.x4};
    double out[4] = {0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m[i][j] * in[j];
    r.x1 = out[0]; r.x2 = out[1]; r.x3 = out[2]; r.x4 = out[3];
    return r;
}

Vec4 Mat4::col(int j) const { return {m[0][j], m[1][j], m[2][j], m[3][j]}; }

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
}

Mat4 operator*(double k, const Mat4& a) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = k * a.m[i][j];
    return r;
}

const Mat4& StructureMatrix::I1() {
    static const Mat4 m{{{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}}};
    return m;
}

const Mat4& StructureMatrix::I2() {
    static const Mat4 m{{{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}}};
    return m;
}

const Mat4& StructureMatrix::I3() {
    static const Mat4 m{{{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}}};
    return m;
}

namespace {

void require_unit(const Vec4& v, const char* who) {
    if (std::abs(norm(v) - 1.0) > kUnitTol)
        throw NonUnitInput(std::string(who) + ": |x| deviates from 1 beyond 1e-12");
}

} // namespace

S3Point::S3Point(double x1, double x2, double x3, double x4) : v_{x1, x2, x3, x4} {
    require_unit(v_, "S3Point");
}

S3Point::S3Point(const Vec4& v) : v_(v) { require_unit(v_, "S3Point"); }

S3Point quat_mul(const S3Point& x, const S3Point& y) {
    return S3Point(S3Point::Unchecked{}, qmul(x.vec(), y.vec()));
}

S3Point quat_inverse(const S3Point& x) {
    return S3Point(S3Point::Unchecked{}, qconj(x.vec()));
}

Mat4 left_pushforward(const S3Point& p) {
    const Vec4& x = p.vec();
    Mat4 r;
    r.m = {{{x.x1, -x.x2, -x.x3, -x.x4},
            {x.x2, x.x1, -x.x4, x.x3},
            {x.x3, x.x4, x.x1, -x.x2},
            {x.x4, -x.x3, x.x2, x.x1}}};
    return r;
}

Frame frame_at(const S3Point& p) {
    const Vec4& x = p.vec();
    return Frame{x, apply_i1(x), apply_i2(x), apply_i3(x)};
}

FrameCoeffs frame_coeffs(const S3Point& p, const TangentVector& v) {
    const Vec4& x = p.vec();
    return FrameCoeffs{dot(v, apply_i1(x)), dot(v, apply_i2(x)), dot(v, apply_i3(x)),
                       dot(v, x)};
}

double omega_form(const S3Point& p, const Vec4& v) {
    const Vec4& x = p.vec();
    return -x.x2 * v.x1 + x.x1 * v.x2 + x.x4 * v.x3 - x.x3 * v.x4;
}

HorizontalityReport is_horizontal(std::span<const std::pair<S3Point, TangentVector>> samples,
                                  double tol) {
    if (samples.empty()) throw EmptyInput("is_horizontal: no samples");
    double worst = 0.0;
    for (const auto& [x, v] : samples)
        worst = std::max(worst, std::abs(dot(v, apply_i3(x.vec()))));
    return {worst <= tol, worst};
}

HorizontalityReport is_horizontal(std::span<const PathSample> samples, double tol) {
    if (samples.empty()) throw EmptyInput("is_horizontal: no samples");
    double worst = 0.0;
    for (const auto& smp : samples)
        worst = std::max(worst, std::abs(dot(smp.v, apply_i3(smp.x))));
    return {worst <= tol, worst};
}

double horizontal_length(std::span<const PathSample> path, double tol) {
    if (path.empty()) throw EmptyInput("horizontal_length: empty path");

    const auto report = is_horizontal(path, tol);
    if (!report.horizontal)
        throw NonHorizontalPath("horizontal_length: max |c| = " +
                                std::to_string(report.max_abs_c) + " exceeds tolerance");

    std::vector<double> f(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double a = dot(path[i].v, apply_i1(path[i].x));
        const double b = dot(path[i].v, apply_i2(path[i].x));
        f[i] = std::hypot(a, b);
    }

    // Composite Simpson over consecutive sample triples; the quadratic-fit
    // form below stays valid for non-uniform spacing. A trailing odd
    // interval falls back to the trapezoid rule.
    double total = 0.0;
    std::size_t i = 0;
    while (i + 2 < path.size()) {
        const double h0 = path[i + 1].s - path[i].s;
        const double h1 = path[i + 2].s - path[i + 1].s;
        if (h0 <= 0.0 || h1 <= 0.0)
            throw InvalidParam("horizontal_length: sample parameters must increase");
        total += (h0 + h1) / 6.0 *
                 ((2.0 - h1 / h0) * f[i] + (h0 + h1) * (h0 + h1) / (h0 * h1) * f[i + 1] +
                  (2.0 - h0 / h1) * f[i + 2]);
        i += 2;
    }
    if (i + 1 < path.size()) {
        const double h = path[i + 1].s - path[i].s;
        if (h < 0.0) throw InvalidParam("horizontal_length: sample parameters must increase");
        total += 0.5 * h * (f[i] + f[i + 1]);
    }
    return total;
}

} // namespace s3sr
