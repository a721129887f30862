#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "s3sr/errors.hpp"

namespace s3sr {

// Tolerance for unit-norm checks at construction time.
inline constexpr double kUnitTol = 1e-12;
// Default tolerance for horizontality-style predicates.
inline constexpr double kDefaultPredicateTol = 1e-9;

// ---------------------------------------------------------------------------
// Plain 4-vector arithmetic. Components are named after the ambient
// coordinates x1..x4; the same storage is reused for tangent vectors and
// covectors (see the aliases below).
// ---------------------------------------------------------------------------
struct Vec4 {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0, x4 = 0.0;

    Vec4& operator+=(const Vec4& o) {
        x1 += o.x1; x2 += o.x2; x3 += o.x3; x4 += o.x4;
        return *this;
    }
    Vec4& operator-=(const Vec4& o) {
        x1 -= o.x1; x2 -= o.x2; x3 -= o.x3; x4 -= o.x4;
        return *this;
    }
    Vec4& operator*=(double k) {
        x1 *= k; x2 *= k; x3 *= k; x4 *= k;
        return *this;
    }

    friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
    friend Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
    friend Vec4 operator*(Vec4 a, double k) { return a *= k; }
    friend Vec4 operator*(double k, Vec4 a) { return a *= k; }
    friend Vec4 operator-(const Vec4& a) { return {-a.x1, -a.x2, -a.x3, -a.x4}; }
};

double dot(const Vec4& a, const Vec4& b);
double norm(const Vec4& a);
Vec4 normalized(const Vec4& a); // throws InvalidParam on the zero vector

// Complex split x1+ix2 / x3+ix4 used throughout the Cartesian closed forms.
std::complex<double> z_part(const Vec4& v);
std::complex<double> w_part(const Vec4& v);
Vec4 from_zw(std::complex<double> z, std::complex<double> w);

// Quaternion product (the group law) and conjugate on raw 4-vectors.
Vec4 qmul(const Vec4& a, const Vec4& b);
Vec4 qconj(const Vec4& a);

// ---------------------------------------------------------------------------
// 4x4 matrices: the left-translation pushforward and the structure matrices.
// ---------------------------------------------------------------------------
struct Mat4 {
    std::array<std::array<double, 4>, 4> m{}; // m[row][col]

    Vec4 apply(const Vec4& v) const;
    Vec4 col(int j) const;
    friend Mat4 operator*(const Mat4& a, const Mat4& b);
    friend Mat4 operator-(const Mat4& a, const Mat4& b);
    friend Mat4 operator*(double k, const Mat4& a);
};

// Structure matrices generating the left-invariant frame: X = I1 x,
// Y = I2 x, Z = I3 x. All three are skew-symmetric with square -identity,
// and I2*I1 - I1*I2 = 2*I3 (cyclically), matching [X,Y] = 2Z.
struct StructureMatrix {
    static const Mat4& I1();
    static const Mat4& I2();
    static const Mat4& I3();
};

// Fast component forms of Ii * x.
inline Vec4 apply_i1(const Vec4& x) { return {-x.x3, -x.x4, x.x1, x.x2}; }
inline Vec4 apply_i2(const Vec4& x) { return {-x.x4, x.x3, -x.x2, x.x1}; }
inline Vec4 apply_i3(const Vec4& x) { return {-x.x2, x.x1, x.x4, -x.x3}; }

// ---------------------------------------------------------------------------
// Points of the unit 3-sphere. Construction enforces unit norm to kUnitTol;
// results of group operations are built unchecked because the algebra
// preserves the norm.
// ---------------------------------------------------------------------------
class S3Point {
public:
    S3Point(double x1, double x2, double x3, double x4);
    explicit S3Point(const Vec4& v);

    static S3Point identity() { return S3Point(Unchecked{}, Vec4{1.0, 0.0, 0.0, 0.0}); }

    const Vec4& vec() const noexcept { return v_; }
    double x1() const noexcept { return v_.x1; }
    double x2() const noexcept { return v_.x2; }
    double x3() const noexcept { return v_.x3; }
    double x4() const noexcept { return v_.x4; }

    std::complex<double> z() const { return z_part(v_); }
    std::complex<double> w() const { return w_part(v_); }

    struct Unchecked {};
    S3Point(Unchecked, const Vec4& v) noexcept : v_(v) {}

private:
    Vec4 v_;
};

using TangentVector = Vec4; // attached to a base S3Point passed alongside
using Covector = Vec4;      // momentum xi1..xi4; phi = xi1+i xi2, psi = xi3+i xi4

// Coefficients of a vector in the left-invariant frame {X, Y, Z, N} at a
// point. For ambient (non-tangent) vectors n reports the normal component.
struct FrameCoeffs {
    double a = 0.0, b = 0.0, c = 0.0, n = 0.0;
};

struct Frame {
    TangentVector N, X, Y, Z;
};

// Group law on unit quaternions.
S3Point quat_mul(const S3Point& x, const S3Point& y);
// Group inverse (conjugate of a unit quaternion).
S3Point quat_inverse(const S3Point& x);

// Pushforward matrix of the left translation L_x. Columns are the frame
// fields at x in the order N, Z, X, Y; the matrix is orthogonal and equals
// the matrix of left quaternion multiplication by x.
Mat4 left_pushforward(const S3Point& x);

Frame frame_at(const S3Point& x);

FrameCoeffs frame_coeffs(const S3Point& x, const TangentVector& v);

// The contact one-form omega = -x2 dx1 + x1 dx2 + x4 dx3 - x3 dx4 evaluated
// on an ambient vector at x. Annihilates X, Y, N and gives 1 on Z.
double omega_form(const S3Point& x, const Vec4& v);

struct HorizontalityReport {
    bool horizontal = false;
    double max_abs_c = 0.0;
};

HorizontalityReport is_horizontal(std::span<const std::pair<S3Point, TangentVector>> samples,
                                  double tol = kDefaultPredicateTol);

// One sample of a parametrized curve with velocity, used for quadrature.
struct PathSample {
    double s = 0.0;
    Vec4 x;
    Vec4 v;
};

HorizontalityReport is_horizontal(std::span<const PathSample> samples,
                                  double tol = kDefaultPredicateTol);

// Horizontal length: quadrature of sqrt(a^2 + b^2) over the provided samples
// (composite Simpson on consecutive sample triples, no resampling). Throws
// NonHorizontalPath if max |c| exceeds tol, EmptyInput on an empty path.
double horizontal_length(std::span<const PathSample> path,
                         double tol = kDefaultPredicateTol);

} // namespace s3sr
