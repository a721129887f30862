#pragma once

#include <array>
#include <span>
#include <vector>

#include "s3sr/core.hpp"
#include "s3sr/ode.hpp"

namespace s3sr {

struct Vec3 {
    double u1 = 0.0, u2 = 0.0, u3 = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) {
        return {a.u1 + b.u1, a.u2 + b.u2, a.u3 + b.u3};
    }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a.u1 - b.u1, a.u2 - b.u2, a.u3 - b.u3};
    }
    friend Vec3 operator*(double k, const Vec3& a) { return {k * a.u1, k * a.u2, k * a.u3}; }
};

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

class S2Point {
public:
    S2Point(double u1, double u2, double u3); // unit to 1e-12
    explicit S2Point(const Vec3& v);
    static S2Point normalized(const Vec3& v);

    const Vec3& vec() const noexcept { return v_; }
    double u1() const noexcept { return v_.u1; }
    double u2() const noexcept { return v_.u2; }
    double u3() const noexcept { return v_.u3; }

private:
    struct Unchecked {};
    S2Point(Unchecked, const Vec3& v) : v_(v) {}
    Vec3 v_;
};

struct LoopSample {
    double t = 0.0;
    S2Point p = S2Point(1.0, 0.0, 0.0);
};

// Closed sampled loop on S^2 over t in [0, 1]: first and last samples agree
// to 1e-10 and parameters strictly increase.
struct LoopOnS2 {
    std::vector<LoopSample> samples;
};

LoopOnS2 make_loop(std::vector<LoopSample> samples); // validates closure

// Fiber angle of the structure circle group, in [0, 2 pi).
struct HolonomyElement {
    double angle = 0.0;
};

// Hopf projection h(x) = ((x1^2+x2^2)-(x3^2+x4^2), 2(x1 x4 + x2 x3),
// 2(x2 x4 - x1 x3)); agrees with the quaternion form q i q*.
S2Point hopf_map(const S3Point& x);

// Unchecked projection of a raw 4-vector (used for near-unit inputs such as
// integrator output); the result is not normalized.
Vec3 hopf_vec(const Vec4& q);

// Differential of the Hopf map at q applied to an ambient vector v.
Vec3 hopf_differential(const Vec4& q, const Vec4& v);

// Right action of the structure circle: q -> q * (cos t, sin t, 0, 0).
// Leaves hopf_map invariant and shifts hyperspherical angles by (+t, -t).
S3Point circle_action(const S3Point& q, double t);

struct LiftOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double base_match_tol = 1e-8;
    double max_chord = 0.05; // samples further apart are refined by slerp
};

struct LiftSample {
    double t = 0.0;
    Vec4 x;
};

struct LiftResult {
    std::vector<LiftSample> samples; // at the (refined) base-curve nodes
    double max_abs_c = 0.0;          // worst vertical frame coefficient
    double max_projection_residual = 0.0;

    const Vec4& endpoint() const { return samples.back().x; }
};

// Horizontal lift of a sampled base curve: at each step the 2-unknown linear
// system expressing the base velocity in the image of the Hopf differential
// restricted to span{X, Y} is solved inside an adaptive RK integrator.
// Throws BasePointMismatch if hopf_map(x0) differs from c(0), and
// ResolutionTooCoarse when consecutive samples are too degenerate to refine.
LiftResult horizontal_lift(std::span<const LoopSample> curve, const S3Point& x0,
                           const LiftOptions& opts = {});

struct HolonomyResult {
    HolonomyElement element;
    double lift_residual = 0.0; // distance of the lift endpoint from the fiber orbit
    double length = 0.0;        // Riemannian length of the base loop
};

// Representative holonomy of a closed loop with respect to x0: the angle l
// with lift-endpoint = circle_action(x0, l). Independent of the choice of
// x0 on the fiber (the structure group is abelian).
HolonomyResult holonomy(const LoopOnS2& loop, const S3Point& x0,
                        const LiftOptions& opts = {});

struct IsoholonomicResult {
    LoopOnS2 loop;
    double s_arc = 0.0;
    double paper_length = 0.0;
    int n = 0; // winding index attaining the minimum
    double holonomy_residual = 0.0;
};

// Shortest base loop (projected geodesic) whose holonomy is omega: minimizes
// s_arc over the fiber enumeration family and verifies the lifted holonomy.
IsoholonomicResult shortest_loop_with_holonomy(double omega, int n_max = 6,
                                               int loop_samples = 1024);

// Sub-Riemannian bundle metric in hyperspherical coordinates:
// diag(1, cos^2 eta, sin^2 eta). Depends on eta only, hence invariant under
// the circle action (xi1, xi2) -> (xi1 + t, xi2 - t).
std::array<std::array<double, 3>, 3> bundle_metric_matrix(double eta);

// Riemannian length of a sampled curve on S^2 (sum of great-circle arcs).
double loop_riemannian_length(std::span<const LoopSample> samples);

} // namespace s3sr
