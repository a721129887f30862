#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "s3sr/geodesics.hpp"
#include "s3sr/hamiltonian.hpp"
#include "testutil.hpp"

using namespace s3sr;
using test::kPi;

TEST_CASE("hamiltonian_value examples") {
    const Vec4 e{1, 0, 0, 0};
    const Covector xi{0.4, -1.2, 0.8, 0.3};
    // at the identity <I1 x, xi> = xi3, <I2 x, xi> = xi4
    CHECK(hamiltonian_value({e, xi}) ==
          doctest::Approx(0.5 * (0.8 * 0.8 + 0.3 * 0.3)).epsilon(1e-15));

    CHECK(hamiltonian_value({e, Vec4{}}) == 0.0);

    // along a closed-form geodesic with C^2 + D^2 = 1 the value is 1/2
    const double B = 1.3, th = -0.4, A = 0.9;
    for (double s : {0.0, 0.8, 2.9, 5.0}) {
        const ZW p = geodesic_bc(B, th, s);
        const std::complex<double> ab(A, B);
        const std::complex<double> cd = std::polar(1.0, th);
        const std::complex<double> phi = p.z * ab - std::conj(p.w) * cd;
        const std::complex<double> psi = std::conj(p.z) * cd + p.w * ab;
        CHECK(hamiltonian_value({from_zw(p.z, p.w), from_zw(phi, psi)}) ==
              doctest::Approx(0.5).epsilon(1e-12));
    }

    CHECK_THROWS_AS(hamiltonian_value({Vec4{2, 0, 0, 0}, xi}), NonUnitInput);
}

TEST_CASE("ham_rhs examples") {
    const Vec4 e{1, 0, 0, 0};
    const Covector xi{0.7, -0.2, 0.5, -1.1};
    const PhaseDeriv d = ham_rhs({e, xi});
    CHECK(test::dist(d.dx, Vec4{0, 0, 0.5, -1.1}) < 1e-15);

    const PhaseDeriv rest = ham_rhs({e, Vec4{}});
    CHECK(norm(rest.dx) == 0.0);
    CHECK(norm(rest.dxi) == 0.0);

    test::Rng rng;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const S3Point x = rng.unit_point();
        const Covector c = rng.unit_speed_covector(x);
        worst = std::max(worst, std::abs(dot(ham_rhs({x.vec(), c}).dx, x.vec())));
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("integrate reproduces the quarter-turn constant geodesic") {
    const Trajectory traj =
        integrate(S3Point::identity(), Covector{0, 0, 1, 0}, kPi / 2.0);
    CHECK(test::dist(traj.samples.back().x, Vec4{0, 0, 1, 0}) < 1e-9);
}

TEST_CASE("integrate matches the closed forms") {
    test::Rng rng;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double B = rng.uniform(-5.0, 5.0);
        const double th = rng.uniform(-kPi, kPi);
        const Covector xi0{0.0, B, std::cos(th), std::sin(th)};
        const Trajectory traj = integrate(S3Point::identity(), xi0, 2.0 * kPi);
        for (const auto& smp : traj.samples)
            worst = std::max(worst,
                             test::dist(smp.x, geodesic_bc_point(B, th, smp.s).vec()));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("integrate with s_end = 0 yields one sample") {
    const Trajectory traj = integrate(S3Point::identity(), Covector{0, 0, 1, 0}, 0.0);
    REQUIRE(traj.samples.size() == 1);
    CHECK(traj.samples[0].s == 0.0);
    CHECK(test::dist(traj.samples[0].x, Vec4{1, 0, 0, 0}) == 0.0);
}

TEST_CASE("conservation monitors stay small over s = 4*pi") {
    test::Rng rng;
    double worst_norm = 0.0, worst_h = 0.0, worst_c = 0.0;
    for (int i = 0; i < 25; ++i) {
        const S3Point x0 = rng.unit_point();
        const Trajectory traj = integrate(x0, rng.unit_speed_covector(x0), 4.0 * kPi);
        worst_norm = std::max(worst_norm, traj.max_norm_drift());
        worst_h = std::max(worst_h, traj.max_h_drift());
        worst_c = std::max(worst_c, traj.max_abs_c());
    }
    CHECK(worst_norm < 1e-8);
    CHECK(worst_h < 1e-8);
    CHECK(worst_c < 1e-8);
}

TEST_CASE("speed identity |dx|^2 = a^2 + b^2 along trajectories") {
    test::Rng rng;
    OdeOptions tight;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const S3Point x0 = rng.unit_point();
        const Trajectory traj = integrate(x0, rng.unit_speed_covector(x0), kPi, tight);
        for (const auto& smp : traj.samples) {
            const PhaseDeriv d = ham_rhs({smp.x, smp.xi});
            worst = std::max(worst, std::abs(dot(d.dx, d.dx) -
                                             (smp.a * smp.a + smp.b * smp.b)));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("radial covector component is gauge") {
    const double B = 0.9, th = 1.7;
    for (double s_end : {1.2, 3.1}) {
        const Trajectory ta =
            integrate(S3Point::identity(), Covector{0.0, B, std::cos(th), std::sin(th)}, s_end);
        const Trajectory tb =
            integrate(S3Point::identity(), Covector{2.4, B, std::cos(th), std::sin(th)}, s_end);
        CHECK(test::dist(ta.samples.back().x, tb.samples.back().x) < 1e-8);
    }
}

TEST_CASE("concurrent integrations reproduce serial results") {
    test::Rng rng;
    std::vector<S3Point> x0s;
    std::vector<Covector> xi0s;
    std::vector<Trajectory> serial, parallel(8);
    for (int i = 0; i < 8; ++i) {
        x0s.push_back(rng.unit_point());
        xi0s.push_back(rng.unit_speed_covector(x0s.back()));
        serial.push_back(integrate(x0s.back(), xi0s.back(), 2.0));
    }
    std::vector<std::thread> workers;
    for (int i = 0; i < 8; ++i)
        workers.emplace_back(
            [&, i] { parallel[i] = integrate(x0s[i], xi0s[i], 2.0); });
    for (auto& w : workers) w.join();
    for (int i = 0; i < 8; ++i) {
        REQUIRE(parallel[i].samples.size() == serial[i].samples.size());
        for (std::size_t j = 0; j < serial[i].samples.size(); ++j)
            CHECK(test::dist(parallel[i].samples[j].x, serial[i].samples[j].x) == 0.0);
    }
}

TEST_CASE("integrate rejects bad input") {
    CHECK_THROWS_AS(integrate(S3Point::identity(), Covector{0, 0, 1, 0}, -1.0), InvalidParam);

    OdeOptions impossible;
    impossible.rel_tol = 1e-300; // unreachable: every step is rejected
    impossible.abs_tol = 1e-300;
    CHECK_THROWS_AS(integrate(S3Point::identity(), Covector{0, 0, 1, 0}, 1.0, impossible),
                    StepSizeUnderflow);
}

TEST_CASE("ham_rhs_hyper examples") {
    // psi1 = psi2 = 0: pure eta motion at rate 4*theta
    const HyperDeriv d = ham_rhs_hyper({0.1, -0.2, 0.6, 0.0, 0.0, 0.25});
    CHECK(d.dxi1 == 0.0);
    CHECK(d.dxi2 == 0.0);
    CHECK(d.deta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.dtheta == 0.0);

    // psi momenta are conserved for any state
    test::Rng rng;
    for (int i = 0; i < 50; ++i) {
        const HyperPhaseState st{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                                 rng.uniform(0.1, kPi / 2.0 - 0.1), rng.uniform(-2, 2),
                                 rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const HyperDeriv dd = ham_rhs_hyper(st);
        CHECK(dd.dpsi1 == 0.0);
        CHECK(dd.dpsi2 == 0.0);
    }

    CHECK_THROWS_AS(ham_rhs_hyper({0, 0, 1e-9, 0.5, 0.0, 0.1}), ChartSingularity);
    CHECK_THROWS_AS(ham_rhs_hyper({0, 0, kPi / 2.0 - 1e-9, 0.5, 0.0, 0.1}),
                    ChartSingularity);
}

TEST_CASE("a regular chart-axis start needs psi2 = 0") {
    // Near the axis dxi1 -> psi2 while dxi2 diverges like psi2/eta^2, so the
    // only momenta extending to eta = 0 have psi2 = 0.
    const double eta = 1e-3;
    const HyperDeriv with = ham_rhs_hyper({0, 0, eta, 0.7, 0.3, 0.2});
    CHECK(with.dxi1 == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(std::abs(with.dxi2) > 1e5);
    const HyperDeriv without = ham_rhs_hyper({0, 0, eta, 0.7, 0.0, 0.2});
    CHECK(without.dxi2 == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(std::abs(without.dxi1) < 1e-5);
}

namespace {

// Chart state of the closed-form family at parameter s.
HyperPhaseState closed_form_state(const HyperGeodesicParam& param, double s) {
    const double C = param.C();
    const double sqrtC = std::sqrt(C);
    const double k = (C - 4.0 * param.psi1() * param.psi1()) / C;
    const HyperCoords h = geodesic_hyper(param, s);
    HyperPhaseState st;
    st.xi1 = h.xi1;
    st.xi2 = h.xi2;
    st.eta = h.eta;
    st.psi1 = param.psi1();
    st.psi2 = 0.0;
    const double sn = std::sin(sqrtC * s);
    const double eta_dot = std::sqrt(k) * sqrtC * std::cos(sqrtC * s) /
                           std::sqrt(1.0 - k * sn * sn);
    st.theta = eta_dot / 4.0;
    return st;
}

} // namespace

TEST_CASE("integrate_hyper follows the closed forms") {
    test::Rng rng;
    double worst_eta = 0.0, worst_xi2 = 0.0, worst_xi1 = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double psi1 = (i % 2 ? -1.0 : 1.0) * rng.uniform(0.4, 1.5);
        const double eta_dot0 = rng.uniform(0.7, 1.5);
        const HyperGeodesicParam param(psi1, eta_dot0);
        const double period = kPi / std::sqrt(param.C());
        const double s0 = 0.06 * period;
        const double s1 = 0.9 * period;

        const HyperTrajectory traj = integrate_hyper(closed_form_state(param, s0), s1 - s0);
        for (const auto& smp : traj.samples) {
            const HyperCoords ref = geodesic_hyper(param, s0 + smp.s);
            const double sin_eta = std::sin(smp.state.eta);
            worst_eta = std::max(worst_eta, std::abs(sin_eta * sin_eta -
                                                     std::sin(ref.eta) * std::sin(ref.eta)));
            worst_xi2 = std::max(worst_xi2,
                                 std::abs(smp.state.xi2 - param.psi1() * (s0 + smp.s)));
            worst_xi1 = std::max(worst_xi1, std::abs(smp.state.xi1 - ref.xi1));
        }
    }
    CHECK(worst_eta < 1e-6);
    CHECK(worst_xi2 < 1e-8);
    CHECK(worst_xi1 < 1e-6);
}

TEST_CASE("integrate_hyper with psi1 = 0 moves eta linearly") {
    const double theta0 = 0.3;
    const HyperPhaseState init{0.0, 0.0, 0.2, 0.0, 0.0, theta0};
    const HyperTrajectory traj = integrate_hyper(init, 0.8);
    for (const auto& smp : traj.samples) {
        CHECK(smp.state.eta == doctest::Approx(0.2 + 4.0 * theta0 * smp.s).epsilon(1e-10));
        CHECK(std::abs(smp.state.xi1) < 1e-12);
        CHECK(std::abs(smp.state.xi2) < 1e-12);
    }
}

TEST_CASE("integrate_hyper guards the chart") {
    CHECK_THROWS_AS(integrate_hyper({0, 0, 1e-7, 0.5, 0, 0.25}, 1.0), ChartSingularity);
    // running into the eta = pi/2 boundary raises ChartSingularity
    CHECK_THROWS_AS(integrate_hyper({0, 0, 1.0, 0.0, 0.0, 0.25}, 5.0), ChartSingularity);
}

TEST_CASE("hyperspherical trajectories map onto Cartesian geodesics") {
    // The chart angles advance at half the Cartesian rate; the agreement map
    // doubles them.
    test::Rng rng;
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double psi1 = (i % 2 ? -1.0 : 1.0) * rng.uniform(0.4, 1.4);
        const double eta_dot0 = rng.uniform(0.7, 1.4);
        const HyperGeodesicParam param(psi1, eta_dot0);
        const double period = kPi / std::sqrt(param.C());
        const double s0 = 0.06 * period;
        const double B = 2.0 * psi1 / eta_dot0;

        const HyperTrajectory traj = integrate_hyper(closed_form_state(param, s0),
                                                     0.85 * period - s0);
        for (const auto& smp : traj.samples) {
            const double s = s0 + smp.s;
            const S3Point mapped =
                from_hyper({2.0 * smp.state.xi1, 2.0 * smp.state.xi2, smp.state.eta});
            const S3Point cart = geodesic_bc_point(B, 0.0, eta_dot0 * s);
            worst = std::max(worst, test::dist(mapped.vec(), cart.vec()));
        }
    }
    CHECK(worst < 1e-6);
}
