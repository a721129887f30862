// Acceptance suite: runs each top-level criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit code = number of failures.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "s3sr/connect.hpp"
#include "s3sr/core.hpp"
#include "s3sr/geodesics.hpp"
#include "s3sr/hamiltonian.hpp"
#include "s3sr/hopf.hpp"

using namespace s3sr;

namespace {

constexpr double kPi = std::numbers::pi;

struct Rng {
    std::mt19937_64 gen;
    std::normal_distribution<double> normal{0.0, 1.0};
    std::uniform_real_distribution<double> unif{0.0, 1.0};
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * unif(gen); }
    S3Point unit_point() {
        Vec4 v{normal(gen), normal(gen), normal(gen), normal(gen)};
        return S3Point(S3Point::Unchecked{}, normalized(v));
    }
};

int failures = 0;

void report(int index, const std::string& label, bool pass, double max_err, double tol) {
    std::printf("[%s] criterion %d: %s (max_err=%.3e, tol=%.0e)\n",
                pass ? "PASS" : "FAIL", index, label.c_str(), max_err, tol);
    if (!pass) ++failures;
}

// 1. Conservation suite: 100 random unit-speed covectors to s = 4*pi.
void criterion1() {
    Rng rng(101);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const S3Point x0 = rng.unit_point();
        const double A = rng.uniform(-2.0, 2.0), Bv = rng.uniform(-2.0, 2.0);
        const double th = rng.uniform(0.0, 2.0 * kPi);
        const Covector xi0 = A * x0.vec() + Bv * apply_i3(x0.vec()) +
                             std::cos(th) * apply_i1(x0.vec()) +
                             std::sin(th) * apply_i2(x0.vec());
        const Trajectory traj = integrate(x0, xi0, 4.0 * kPi);
        worst = std::max({worst, traj.max_norm_drift(), traj.max_h_drift(),
                          traj.max_abs_c()});
    }
    report(1, "conservation suite (norm, H, |c| over s = 4*pi)", worst <= 1e-8, worst,
           1e-8);
}

// 2. Integrator versus the closed forms; exact B = 0 reduction.
void criterion2() {
    Rng rng(202);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double B = rng.uniform(-5.0, 5.0);
        const double th = rng.uniform(-kPi, kPi);
        const Covector xi0{0.0, B, std::cos(th), std::sin(th)};
        const Trajectory traj = integrate(S3Point::identity(), xi0, 2.0 * kPi);
        for (const auto& smp : traj.samples)
            worst = std::max(worst, norm(smp.x - geodesic_bc_point(B, th, smp.s).vec()));
    }
    const bool sup_ok = worst <= 1e-6;

    double worst_b0 = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double th = rng.uniform(-kPi, kPi);
        for (int j = 0; j <= 64; ++j) {
            const double s = 2.0 * kPi * j / 64.0;
            const ZW p = geodesic_bc(0.0, th, s);
            const ZW v0 = geodesic_bc_velocity(0.0, th, 0.0);
            worst_b0 = std::max(
                worst_b0, std::abs(p.z - std::complex<double>(std::cos(s), 0.0)) +
                              std::abs(p.w - v0.w * std::sin(s)));
        }
    }
    report(2, "closed-form oracle (sup over s in [0, 2*pi])",
           sup_ok && worst_b0 <= 1e-12, std::max(worst, worst_b0), 1e-6);
}

// 3. Fiber enumeration: even-n arcs sqrt(pi^2 n^2 - omega^2) to 1e-12,
// every returned solution verified to 1e-9.
void criterion3() {
    double worst_arc = 0.0, worst_res = 0.0;
    bool all_found = true;
    int odd_members = 0;
    for (double omega : {0.1, kPi / 2.0, 3.0}) {
        const auto sols = enumerate_to_fiber(omega, 6);
        for (const auto& sol : sols) {
            worst_res = std::max(worst_res, sol.residual);
            if (sol.branch_index % 2 == 1) ++odd_members;
        }
        for (int n = 2; n <= 6; n += 2) {
            const double sn = std::sqrt(kPi * kPi * n * n - omega * omega);
            const double Bn = -omega / sn;
            double best = 1e300;
            for (const auto& sol : sols)
                best = std::min(best, std::max(std::abs(sol.s_arc - sn),
                                               std::abs(sol.B - Bn)));
            worst_arc = std::max(worst_arc, best);
            if (best > 1e-12) all_found = false;
        }
    }
    const bool pass = all_found && worst_res <= 1e-9 && odd_members > 0;
    report(3, "fiber enumeration reproduces the even-n arc-length family", pass,
           std::max(worst_arc, worst_res), 1e-12);
}

// 4. Boundary-value enumeration: forward-map round trip, oracle count
// equality, first-branch root bound.
void criterion4() {
    Rng rng(404);
    double worst_rt = 0.0;
    bool counts_match = true, bound_ok = true;
    int bound_checked = 0;
    for (int i = 0; i < 20; ++i) {
        double B, th, s;
        TargetPoint target(1.0, 0.0, 0.0, 0.0);
        // Redraw degenerate samples whose endpoint lands within the oracle's
        // resolution limit of the fiber (|w| ~ grid): there the |w| = rho
        // crossings become near-tangent and no desk-scale scan separates
        // them (those targets belong with the fiber enumeration anyway).
        do {
            B = rng.uniform(0.2, 2.0);
            th = rng.uniform(-kPi, kPi);
            s = rng.uniform(0.5, 2.0);
            target = TargetPoint::from_point(geodesic_bc_point(B, th, s));
        } while (target.rho() < 0.05 || std::abs(target.alpha()) < 0.01);

        // size the arrival-branch budget so the enumeration covers every
        // arrival parameter u = mu*s the oracle window can reach
        ConnectOptions opts;
        const double mu_max = 1.0 / target.rho();
        opts.branch_max =
            static_cast<int>(std::ceil(mu_max * (2.0 * kPi + 1.0) / kPi)) + 1;

        const auto sols = enumerate_between(target, opts);
        double best = 1e300;
        for (const auto& sol : sols)
            best = std::min(best,
                            std::max(std::abs(sol.B - B), std::abs(sol.s_arc - s)));
        worst_rt = std::max(worst_rt, best);

        // oracle count over a window clear of solution boundaries
        double s_max = 2.0 * kPi;
        for (bool moved = true; moved;) {
            moved = false;
            for (const auto& sol : sols)
                if (std::abs(sol.s_arc - s_max) < 5e-3) {
                    s_max += 0.05;
                    moved = true;
                }
        }
        int in_window = 0;
        for (const auto& sol : sols)
            if (sol.s_arc <= s_max) ++in_window;
        const auto oracle = brute_force_count(target, 4e-3, s_max);
        if (oracle.count != in_window) counts_match = false;

        // lower bound for positive first-arcsin-branch roots (mirror alpha<0)
        TargetPoint bt = target;
        if (bt.alpha() < 0.0)
            bt = TargetPoint(bt.r(), -bt.alpha(), bt.rho(), -bt.phi());
        const double bound = first_branch_root_bound(bt);
        for (const auto& sol : enumerate_between(bt)) {
            const double u = std::sqrt(1.0 + sol.B * sol.B) * sol.s_arc;
            if (u > 0.5 * kPi + 1e-9 || sol.B <= 0.0) continue;
            ++bound_checked;
            if (!(sol.B > bound)) bound_ok = false;
        }
    }
    const bool pass = worst_rt <= 1e-8 && counts_match && bound_ok && bound_checked > 0;
    report(4, "boundary-value enumeration: round trip, oracle count, root bound", pass,
           worst_rt, 1e-8);
}

// 5. Chart agreement between the hyperspherical closed forms and the
// Cartesian closed forms. The chart angles advance at half the Cartesian
// rate, so the map doubles them; each axis crossing (eta = 0, where the
// closed form folds sin(eta) to |sin|) re-enters the chart with xi2 shifted
// by pi.
void criterion5() {
    Rng rng(505);
    double worst = 0.0, worst_xi2 = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double psi1 = (rng.unif(rng.gen) < 0.5 ? -1.0 : 1.0) * rng.uniform(0.2, 1.6);
        const double eta_dot0 = rng.uniform(0.5, 1.8);
        const HyperGeodesicParam param(psi1, eta_dot0);
        const double B = 2.0 * psi1 / eta_dot0;
        const double sqrtC = std::sqrt(param.C());
        const double period = kPi / sqrtC;
        for (int j = 1; j < 40; ++j) {
            const double s = 2.0 * period * j / 40.0; // spans two eta arches
            const HyperCoords h = geodesic_hyper(param, s);
            worst_xi2 = std::max(worst_xi2, std::abs(h.xi2 - psi1 * s));
            const double fold = kPi * std::floor(sqrtC * s / kPi);
            const S3Point mapped = from_hyper({2.0 * h.xi1, 2.0 * h.xi2 + fold, h.eta});
            const S3Point cart = geodesic_bc_point(B, 0.0, eta_dot0 * s);
            worst = std::max(worst, norm(mapped.vec() - cart.vec()));
        }
    }
    const bool pass = worst <= 1e-8 && worst_xi2 <= 1e-12;
    report(5, "chart agreement: hyperspherical closed forms vs Cartesian", pass, worst,
           1e-8);
}

// 6. Hopf suite: speed doubling, holonomy pi, project-then-lift, basepoint
// invariance.
void criterion6() {
    Rng rng(606);

    double worst_speed = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double B = rng.uniform(-3.0, 3.0), th = rng.uniform(-kPi, kPi);
        for (int j = 0; j <= 16; ++j) {
            const double s = 2.0 * kPi * j / 16.0;
            const ZW v = geodesic_bc_velocity(B, th, s);
            const Vec3 dh = hopf_differential(geodesic_bc_point(B, th, s).vec(),
                                              from_zw(v.z, v.w));
            worst_speed = std::max(worst_speed, std::abs(norm(dh) - 2.0));
        }
    }

    // holonomy of the lifted projection of the constant geodesic over [0, pi]
    const S3Point e = S3Point::identity();
    std::vector<LoopSample> circle;
    const int n_loop = 2048;
    for (int i = 0; i <= n_loop; ++i) {
        const double s = kPi * i / n_loop;
        circle.push_back({static_cast<double>(i) / n_loop,
                          hopf_map(geodesic_bc_point(0.0, 0.0, s))});
    }
    const LoopOnS2 loop{circle};
    const HolonomyResult hol = holonomy(loop, e);
    const double hol_err = std::abs(wrap_pi(hol.element.angle - kPi));

    // project-then-lift identity
    double worst_ptl = 0.0;
    for (int i = 0; i < 3; ++i) {
        const S3Point x0 = rng.unit_point();
        const double B = rng.uniform(-1.5, 1.5), th = rng.uniform(-kPi, kPi);
        const double s_end = 1.2;
        const int n = 4096;
        std::vector<LoopSample> proj;
        for (int j = 0; j <= n; ++j) {
            const double s = s_end * j / n;
            proj.push_back({static_cast<double>(j) / n,
                            hopf_map(geodesic_from(x0, B, th, s))});
        }
        const LiftResult lift = horizontal_lift(proj, x0);
        for (const auto& smp : lift.samples)
            worst_ptl = std::max(
                worst_ptl, norm(smp.x - geodesic_from(x0, B, th, smp.t * s_end).vec()));
    }

    // holonomy invariance under the basepoint circle action
    double worst_inv = 0.0;
    for (double t : {0.9, 2.7, 5.1}) {
        const HolonomyResult moved = holonomy(loop, circle_action(e, t));
        worst_inv = std::max(worst_inv,
                             std::abs(wrap_pi(moved.element.angle - hol.element.angle)));
    }

    const bool pass =
        worst_speed <= 1e-8 && hol_err <= 1e-8 && worst_ptl <= 1e-6 && worst_inv <= 1e-8;
    report(6, "hopf suite: speed doubling, holonomy pi, lift identities", pass,
           std::max({worst_speed, hol_err, worst_ptl, worst_inv}), 1e-6);
}

// 7. Algebra suite: commutators, contact form, left invariance.
void criterion7() {
    Rng rng(707);
    const Mat4& i1 = StructureMatrix::I1();
    const Mat4& i2 = StructureMatrix::I2();
    const Mat4& i3 = StructureMatrix::I3();
    const Mat4 xy = (i2 * i1 - i1 * i2) - 2.0 * i3;
    const Mat4 zx = (i1 * i3 - i3 * i1) - 2.0 * i2;
    const Mat4 yz = (i3 * i2 - i2 * i3) - 2.0 * i1;

    double worst_comm = 0.0, worst_omega = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const S3Point x = rng.unit_point();
        worst_comm = std::max({worst_comm, norm(xy.apply(x.vec())),
                               norm(zx.apply(x.vec())), norm(yz.apply(x.vec()))});
        const Frame f = frame_at(x);
        worst_omega = std::max({worst_omega, std::abs(omega_form(x, f.X)),
                                std::abs(omega_form(x, f.Y)), std::abs(omega_form(x, f.N)),
                                std::abs(omega_form(x, f.Z) - 1.0)});
    }

    double worst_inv = 0.0;
    for (int i = 0; i < 100; ++i) {
        const S3Point x0 = rng.unit_point();
        const double B = rng.uniform(-2.0, 2.0), th = rng.uniform(-kPi, kPi);
        const double s = rng.uniform(0.0, 2.0 * kPi);
        const S3Point g = geodesic_bc_point(B, th, s);
        const ZW vel = geodesic_bc_velocity(B, th, s);
        const Vec4 v = from_zw(vel.z, vel.w);
        const FrameCoeffs a = frame_coeffs(g, v);
        const FrameCoeffs b = frame_coeffs(quat_mul(x0, g), qmul(x0.vec(), v));
        worst_inv = std::max({worst_inv, std::abs(a.a - b.a), std::abs(a.b - b.b),
                              std::abs(a.c - b.c), std::abs(a.n - b.n)});
    }

    const bool pass = worst_comm <= 1e-12 && worst_omega <= 1e-12 && worst_inv <= 1e-10;
    report(7, "algebra suite: commutators, contact form, left invariance", pass,
           std::max({worst_comm, worst_omega, worst_inv}), 1e-12);
}

// 8. Second derivative of constant-coefficient geodesics: x'' = -x.
void criterion8() {
    Rng rng(808);
    const double h = 1e-4;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const S3Point x0 = rng.unit_point();
        const double psi = rng.uniform(0.0, 2.0 * kPi);
        for (int j = 0; j <= 16; ++j) {
            const double s = 2.0 * kPi * j / 16.0;
            const Vec4 acc = (const_geodesic(x0, psi, s + h).vec() -
                              2.0 * const_geodesic(x0, psi, s).vec() +
                              const_geodesic(x0, psi, s - h).vec()) *
                             (1.0 / (h * h));
            worst = std::max(worst, norm(acc + const_geodesic(x0, psi, s).vec()));
        }
    }
    report(8, "constant-coefficient geodesics satisfy x'' = -x", worst <= 1e-6, worst,
           1e-6);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0)
        std::printf("acceptance: all 8 criteria pass\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures;
}
