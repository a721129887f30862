#include "s3sr/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "s3sr/connect.hpp"
#include "s3sr/geodesics.hpp"

namespace s3sr {

namespace {
constexpr double kPi = std::numbers::pi;
}

double dot(const Vec3& a, const Vec3& b) { return a.u1 * b.u1 + a.u2 * b.u2 + a.u3 * b.u3; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

S2Point::S2Point(double u1, double u2, double u3) : v_{u1, u2, u3} {
    if (std::abs(norm(v_) - 1.0) > kUnitTol)
        throw NonUnitInput("S2Point: |u| deviates from 1 beyond 1e-12");
}

S2Point::S2Point(const Vec3& v) : S2Point(v.u1, v.u2, v.u3) {}

S2Point S2Point::normalized(const Vec3& v) {
    const double n = norm(v);
    if (n == 0.0) throw InvalidParam("S2Point: cannot normalize the zero vector");
    return S2Point(Unchecked{}, (1.0 / n) * v);
}

LoopOnS2 make_loop(std::vector<LoopSample> samples) {
    if (samples.size() < 2) throw EmptyInput("make_loop: need at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].t > samples[i - 1].t))
            throw InvalidParam("make_loop: parameters must strictly increase");
    if (norm(samples.front().p.vec() - samples.back().p.vec()) > 1e-10)
        throw InvalidParam("make_loop: loop is not closed to 1e-10");
    return LoopOnS2{std::move(samples)};
}

Vec3 hopf_vec(const Vec4& q) {
    return {q.x1 * q.x1 + q.x2 * q.x2 - q.x3 * q.x3 - q.x4 * q.x4,
            2.0 * (q.x1 * q.x4 + q.x2 * q.x3), 2.0 * (q.x2 * q.x4 - q.x1 * q.x3)};
}

S2Point hopf_map(const S3Point& x) { return S2Point::normalized(hopf_vec(x.vec())); }

Vec3 hopf_differential(const Vec4& q, const Vec4& v) {
    return {2.0 * (q.x1 * v.x1 + q.x2 * v.x2 - q.x3 * v.x3 - q.x4 * v.x4),
            2.0 * (v.x1 * q.x4 + q.x1 * v.x4 + v.x2 * q.x3 + q.x2 * v.x3),
            2.0 * (v.x2 * q.x4 + q.x2 * v.x4 - v.x1 * q.x3 - q.x1 * v.x3)};
}

S3Point circle_action(const S3Point& q, double t) {
    return S3Point(S3Point::Unchecked{},
                   qmul(q.vec(), Vec4{std::cos(t), std::sin(t), 0.0, 0.0}));
}

double loop_riemannian_length(std::span<const LoopSample> samples) {
    double total = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double chord = norm(samples[i].p.vec() - samples[i - 1].p.vec());
        total += 2.0 * std::asin(std::min(1.0, 0.5 * chord));
    }
    return total;
}

namespace {

// Constant-speed great-circle interpolation between two nearby points.
struct Slerp {
    Vec3 p, q;
    double omega; // angle between p and q

    Vec3 at(double lam) const {
        if (omega < 1e-9) {
            const Vec3 v = (1.0 - lam) * p + lam * q;
            return (1.0 / norm(v)) * v;
        }
        const double so = std::sin(omega);
        return (std::sin((1.0 - lam) * omega) / so) * p + (std::sin(lam * omega) / so) * q;
    }

    Vec3 deriv(double lam) const { // d/dlam
        if (omega < 1e-9) return q - p;
        const double so = std::sin(omega);
        return (-omega * std::cos((1.0 - lam) * omega) / so) * p +
               (omega * std::cos(lam * omega) / so) * q;
    }
};

std::vector<LoopSample> refine_curve(std::span<const LoopSample> in, double max_chord) {
    if (in.size() < 2) throw EmptyInput("horizontal_lift: need at least two base samples");
    std::vector<LoopSample> out;
    out.push_back(in[0]);
    for (std::size_t i = 1; i < in.size(); ++i) {
        const Vec3& a = in[i - 1].p.vec();
        const Vec3& b = in[i].p.vec();
        const double cosab = std::clamp(dot(a, b), -1.0, 1.0);
        if (cosab < -1.0 + 1e-12)
            throw ResolutionTooCoarse(
                "horizontal_lift: consecutive samples are antipodal; refine the input");
        const double chord = norm(b - a);
        if (chord > max_chord) {
            const int pieces = static_cast<int>(std::ceil(chord / max_chord));
            const Slerp sl{a, b, std::acos(cosab)};
            for (int j = 1; j < pieces; ++j) {
                const double lam = static_cast<double>(j) / pieces;
                out.push_back({in[i - 1].t + lam * (in[i].t - in[i - 1].t),
                               S2Point::normalized(sl.at(lam))});
            }
        }
        out.push_back(in[i]);
    }
    return out;
}

} // namespace

LiftResult horizontal_lift(std::span<const LoopSample> curve, const S3Point& x0,
                           const LiftOptions& opts) {
    const auto nodes = refine_curve(curve, opts.max_chord);

    if (norm(hopf_vec(x0.vec()) - nodes.front().p.vec()) > opts.base_match_tol)
        throw BasePointMismatch("horizontal_lift: hopf_map(x0) != c(0)");

    LiftResult result;
    result.samples.push_back({nodes.front().t, x0.vec()});

    OdeOptions ode;
    ode.rel_tol = opts.rel_tol;
    ode.abs_tol = opts.abs_tol;
    ode.max_step = 1.0;

    Vec4 q = x0.vec();
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const Vec3& a = nodes[i - 1].p.vec();
        const Vec3& b = nodes[i].p.vec();
        const Slerp sl{a, b, std::acos(std::clamp(dot(a, b), -1.0, 1.0))};

        // Augmented autonomous state (q, lam): the segment is integrated in
        // its local parameter lam over [0, 1], so the base velocity can be
        // evaluated at the correct parameter inside the adaptive stepper.
        std::array<double, 5> y0{q.x1, q.x2, q.x3, q.x4, 0.0};
        auto rhs5 = [&](const std::array<double, 5>& y) {
            const Vec4 p{y[0], y[1], y[2], y[3]};
            const double lam = y[4];
            const Vec3 cdot = sl.deriv(std::clamp(lam, 0.0, 1.0));
            const Vec4 X = apply_i1(p);
            const Vec4 Y = apply_i2(p);
            const Vec3 u1 = hopf_differential(p, X);
            const Vec3 u2 = hopf_differential(p, Y);
            const double a11 = dot(u1, u1), a12 = dot(u1, u2), a22 = dot(u2, u2);
            const double r1 = dot(u1, cdot), r2 = dot(u2, cdot);
            const double det = a11 * a22 - a12 * a12;
            const double al = (a22 * r1 - a12 * r2) / det;
            const double be = (a11 * r2 - a12 * r1) / det;
            const Vec4 dq = al * X + be * Y;
            return std::array<double, 5>{dq.x1, dq.x2, dq.x3, dq.x4, 1.0};
        };

        Vec4 q_end = q;
        double worst_c = result.max_abs_c;
        integrate_dopri5<5>(rhs5, y0, 0.0, 1.0, ode,
                            [&](double, const std::array<double, 5>& y,
                                const std::array<double, 5>& dy) {
                                q_end = {y[0], y[1], y[2], y[3]};
                                const Vec4 dq{dy[0], dy[1], dy[2], dy[3]};
                                worst_c = std::max(worst_c,
                                                   std::abs(dot(dq, apply_i3(q_end))));
                            });
        q = q_end;
        result.max_abs_c = worst_c;
        result.samples.push_back({nodes[i].t, q});
        result.max_projection_residual = std::max(
            result.max_projection_residual, norm(hopf_vec(q) - nodes[i].p.vec()));
    }
    return result;
}

HolonomyResult holonomy(const LoopOnS2& loop, const S3Point& x0, const LiftOptions& opts) {
    if (loop.samples.size() < 2) throw EmptyInput("holonomy: empty loop");
    if (norm(loop.samples.front().p.vec() - loop.samples.back().p.vec()) > 1e-10)
        throw InvalidParam("holonomy: loop is not closed to 1e-10");

    const LiftResult lift = horizontal_lift(loop.samples, x0, opts);
    const Vec4 rel = qmul(qconj(x0.vec()), lift.endpoint());
    const double angle = wrap_2pi(std::atan2(rel.x2, rel.x1));

    HolonomyResult res;
    res.element.angle = angle;
    res.lift_residual =
        norm(lift.endpoint() - qmul(x0.vec(), Vec4{std::cos(angle), std::sin(angle), 0, 0}));
    res.length = loop_riemannian_length(loop.samples);
    return res;
}

IsoholonomicResult shortest_loop_with_holonomy(double omega, int n_max, int loop_samples) {
    if (!(omega >= 0.0 && omega < 2.0 * kPi))
        throw InvalidOmega("shortest_loop_with_holonomy: omega must lie in [0, 2*pi)");
    if (loop_samples < 8) throw InvalidParam("shortest_loop_with_holonomy: too few samples");

    const auto family = enumerate_to_fiber(omega, n_max);
    const auto best = std::min_element(
        family.begin(), family.end(),
        [](const auto& a, const auto& b) { return a.s_arc < b.s_arc; });

    IsoholonomicResult res;
    res.s_arc = best->s_arc;
    res.paper_length = best->paper_length;
    res.n = best->branch_index;

    std::vector<LoopSample> samples;
    samples.reserve(loop_samples + 1);
    for (int i = 0; i <= loop_samples; ++i) {
        const double s = best->s_arc * i / loop_samples;
        const S3Point g = geodesic_bc_point(best->B, best->theta, s);
        samples.push_back({static_cast<double>(i) / loop_samples, hopf_map(g)});
    }
    res.loop = make_loop(std::move(samples));

    // The geodesic itself is the horizontal lift of the returned loop, so
    // its endpoint gives the holonomy exactly; a generic re-lift of the
    // sampled loop converges to the same angle as the sampling refines.
    const Vec4 endpoint = geodesic_bc_point(best->B, best->theta, best->s_arc).vec();
    const double angle = wrap_2pi(std::atan2(endpoint.x2, endpoint.x1));
    res.holonomy_residual = std::abs(wrap_pi(angle - omega));
    return res;
}

std::array<std::array<double, 3>, 3> bundle_metric_matrix(double eta) {
    const double c2 = std::cos(eta) * std::cos(eta);
    const double s2 = std::sin(eta) * std::sin(eta);
    return {{{1.0, 0.0, 0.0}, {0.0, c2, 0.0}, {0.0, 0.0, s2}}};
}

} // namespace s3sr
