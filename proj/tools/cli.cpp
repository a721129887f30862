#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s3sr/checks.hpp"
#include "s3sr/connect.hpp"
#include "s3sr/core.hpp"
#include "s3sr/geodesics.hpp"
#include "s3sr/hamiltonian.hpp"
#include "s3sr/hopf.hpp"
#include "s3sr/io.hpp"

namespace s3sr::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Writes to the given path, or stdout for "-".
void emit(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CLI::ValidationError("--output", "cannot open " + path);
    out << content;
}

Vec4 vec4_of(const std::vector<double>& v, const char* flag) {
    if (v.size() != 4)
        throw CLI::ValidationError(flag, "expected four comma-separated values");
    return {v[0], v[1], v[2], v[3]};
}

struct SampleArgs {
    double B = 0.0, theta = 0.0, s_end = 0.0;
    std::optional<double> psi;
    std::optional<double> hyper_psi1;
    double hyper_eta_dot0 = 1.0;
    std::vector<double> x0{1.0, 0.0, 0.0, 0.0};
    int samples = 256;
    std::string format = "csv";
    std::string output = "-";
};

int cmd_sample(const SampleArgs& a) {
    const S3Point x0(vec4_of(a.x0, "--x0"));
    std::vector<io::CurveSample> rows;
    nlohmann::json params;
    const int n = std::max(1, a.samples);

    if (a.hyper_psi1) {
        const HyperGeodesicParam param(*a.hyper_psi1, a.hyper_eta_dot0);
        params = {{"family", "hyper"},
                  {"psi1", param.psi1()},
                  {"eta_dot0", param.eta_dot0()},
                  {"C", param.C()},
                  {"s_end", a.s_end}};
        for (int i = 0; i <= n; ++i) {
            const double s = a.s_end * i / n;
            // the chart family is rooted at the identity; left-translate to x0
            rows.push_back(
                {s, quat_mul(x0, from_hyper(geodesic_hyper(param, s))).vec()});
        }
    } else if (a.psi) {
        params = {{"family", "const"}, {"psi", *a.psi}, {"s_end", a.s_end}};
        for (int i = 0; i <= n; ++i) {
            const double s = a.s_end * i / n;
            rows.push_back({s, const_geodesic(x0, *a.psi, s).vec()});
        }
    } else {
        params = {{"family", "bc"}, {"B", a.B}, {"theta", a.theta}, {"s_end", a.s_end}};
        for (int i = 0; i <= n; ++i) {
            const double s = a.s_end * i / n;
            rows.push_back({s, geodesic_from(x0, a.B, a.theta, s).vec()});
        }
    }

    std::ostringstream out;
    if (a.format == "csv")
        io::write_curve_csv(out, rows);
    else
        out << io::curve_json(params, rows).dump(2) << '\n';
    emit(a.output, out.str());
    return 0;
}

struct IntegrateArgs {
    std::vector<double> xi{0.0, 0.0, 1.0, 0.0};
    std::vector<double> x0{1.0, 0.0, 0.0, 0.0};
    double s_end = 0.0;
    OdeOptions ode;
    bool hyper = false;
    std::vector<double> init{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    std::string format = "csv";
    std::string output = "-";
};

int cmd_integrate(const IntegrateArgs& a) {
    std::ostringstream out;
    if (a.hyper) {
        if (a.init.size() != 6)
            throw CLI::ValidationError("--init", "expected six comma-separated values");
        const HyperPhaseState init{a.init[0], a.init[1], a.init[2],
                                   a.init[3], a.init[4], a.init[5]};
        const HyperTrajectory traj = integrate_hyper(init, a.s_end, a.ode);
        io::write_hyper_trajectory_csv(out, traj);
    } else {
        const S3Point x0(vec4_of(a.x0, "--x0"));
        const Covector xi = vec4_of(a.xi, "--xi");
        const Trajectory traj = integrate(x0, xi, a.s_end, a.ode);
        if (a.format == "csv") {
            io::write_trajectory_csv(out, traj);
        } else {
            const nlohmann::json params = {{"xi", a.xi}, {"x0", a.x0}, {"s_end", a.s_end}};
            out << io::trajectory_json(params, traj).dump(2) << '\n';
        }
    }
    emit(a.output, out.str());
    return 0;
}

struct ConnectArgs {
    std::optional<double> fiber_omega;
    std::vector<double> target;
    int n_max = 6;
    ConnectOptions opts;
    bool oracle = false;
    double s_max = 2.0 * kPi;
    double oracle_grid_step = 4e-3;
    bool emit_lhs_grid = false;
    int lhs_points = 2001;
    std::string format = "json";
    std::string output = "-";
};

int cmd_connect(const ConnectArgs& a) {
    std::ostringstream out;

    if (a.emit_lhs_grid) {
        if (a.target.size() != 4)
            throw CLI::ValidationError("--emit-lhs-grid", "requires --target");
        const TargetPoint t = TargetPoint::from_point(S3Point(vec4_of(a.target, "--target")));
        const double b_max = std::sqrt(1.0 / (t.rho() * t.rho()) - 1.0);
        out << "B,lhs\n";
        for (int i = 1; i < a.lhs_points - 1; ++i) {
            const double B = -b_max + 2.0 * b_max * i / (a.lhs_points - 1);
            out << io::format_double(B) << ',' << io::format_double(param_equation_lhs(B, t))
                << '\n';
        }
        emit(a.output, out.str());
        return 0;
    }

    nlohmann::json report;
    if (a.fiber_omega) {
        const auto sols = enumerate_to_fiber(*a.fiber_omega, a.n_max);
        report = io::fiber_report_json(*a.fiber_omega, sols);
    } else {
        if (a.target.size() != 4)
            throw CLI::ValidationError("connect", "need --fiber-omega or --target");
        const TargetPoint t = TargetPoint::from_point(S3Point(vec4_of(a.target, "--target")));
        const auto sols = enumerate_between(t, a.opts);
        report = io::connect_report_json(t, sols);
        if (a.oracle) {
            const auto oracle = brute_force_count(t, a.oracle_grid_step, a.s_max);
            report["oracle_count"] = oracle.count;
        }
    }

    if (a.fiber_omega && a.oracle) {
        const TargetPoint t(1.0, *a.fiber_omega, 0.0, 0.0);
        const auto oracle = brute_force_count(t, a.oracle_grid_step, a.s_max);
        report["oracle_count"] = oracle.count;
    }

    out << report.dump(2) << '\n';
    emit(a.output, out.str());
    return 0;
}

struct HopfArgs {
    std::string project_path;
    std::string lift_path;
    std::string holonomy_path;
    std::optional<double> shortest_omega;
    std::vector<double> x0{1.0, 0.0, 0.0, 0.0};
    std::string output = "-";
};

std::vector<io::CurveSample> read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParam("hopf: cannot open " + path);
    std::vector<io::CurveSample> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("s,", 0) == 0) continue;
        std::istringstream row(line);
        double v[5];
        char comma;
        row >> v[0];
        for (int i = 1; i < 5; ++i) row >> comma >> v[i];
        if (!row) throw InvalidParam("hopf: malformed row: " + line);
        rows.push_back({v[0], Vec4{v[1], v[2], v[3], v[4]}});
    }
    if (rows.empty()) throw EmptyInput("hopf: no samples in " + path);
    return rows;
}

int cmd_hopf(const HopfArgs& a) {
    std::ostringstream out;

    if (!a.project_path.empty()) {
        const auto rows = read_curve_csv(a.project_path);
        const double s0 = rows.front().s;
        const double span = rows.back().s - s0;
        out << "t,u1,u2,u3\n";
        for (const auto& r : rows) {
            const Vec3 u = hopf_vec(normalized(r.x));
            const double t = span > 0.0 ? (r.s - s0) / span : 0.0;
            out << io::format_double(t) << ',' << io::format_double(u.u1) << ','
                << io::format_double(u.u2) << ',' << io::format_double(u.u3) << '\n';
        }
        emit(a.output, out.str());
        return 0;
    }

    if (!a.lift_path.empty()) {
        std::ifstream in(a.lift_path);
        if (!in) throw InvalidParam("hopf: cannot open " + a.lift_path);
        const auto samples = io::read_loop_csv(in);
        const S3Point x0(vec4_of(a.x0, "--x0"));
        const LiftResult lift = horizontal_lift(samples, x0);
        out << "t,x1,x2,x3,x4\n";
        for (const auto& smp : lift.samples)
            out << io::format_double(smp.t) << ',' << io::format_double(smp.x.x1) << ','
                << io::format_double(smp.x.x2) << ',' << io::format_double(smp.x.x3) << ','
                << io::format_double(smp.x.x4) << '\n';
        emit(a.output, out.str());
        return 0;
    }

    if (!a.holonomy_path.empty()) {
        std::ifstream in(a.holonomy_path);
        if (!in) throw InvalidParam("hopf: cannot open " + a.holonomy_path);
        const LoopOnS2 loop{io::read_loop_csv(in)};
        const S3Point x0(vec4_of(a.x0, "--x0"));
        out << io::holonomy_json(holonomy(loop, x0)).dump(2) << '\n';
        emit(a.output, out.str());
        return 0;
    }

    if (a.shortest_omega) {
        const IsoholonomicResult res = shortest_loop_with_holonomy(*a.shortest_omega);
        std::ostringstream loop_csv;
        io::write_loop_csv(loop_csv, res.loop);
        nlohmann::json report = {{"omega", *a.shortest_omega},
                                 {"s_arc", res.s_arc},
                                 {"paper_length", res.paper_length},
                                 {"n", res.n},
                                 {"holonomy_residual", res.holonomy_residual}};
        if (a.output == "-") {
            std::cout << report.dump(2) << '\n';
        } else {
            emit(a.output, loop_csv.str());
            std::cout << report.dump(2) << '\n';
        }
        return 0;
    }

    throw CLI::ValidationError(
        "hopf", "need one of --project, --lift, --holonomy, --shortest-omega");
}

int cmd_verify(VerifyOptions opts, bool tol_flag_given) {
    if (!tol_flag_given) {
        if (const char* env = std::getenv("S3SR_DEFAULT_TOL")) {
            try {
                opts.default_predicate_tol = std::stod(env);
            } catch (const std::exception&) {
                throw CLI::ValidationError("S3SR_DEFAULT_TOL", "not a number");
            }
        }
    }
    const auto results = run_verify_suite(opts);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << "  (max_err=" << io::format_double(r.max_err)
                  << ", tol=" << io::format_double(r.tol) << ")\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "verify: all properties hold\n"
                           : "verify: tolerance breached\n");
    return all_pass ? 0 : 2;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Sub-Riemannian geodesics on the unit 3-sphere"};
    app.require_subcommand(1);

    SampleArgs sample;
    auto* sc_sample =
        app.add_subcommand("sample", "Sample a closed-form geodesic family");
    sc_sample->add_option("--B", sample.B, "curvature parameter B");
    sc_sample->add_option("--theta", sample.theta, "heading angle (radians)");
    auto* psi_opt = sc_sample->add_option("--psi", sample.psi,
                                          "constant-coefficient family heading");
    auto* hpsi_opt = sc_sample->add_option("--hyper-psi1", sample.hyper_psi1,
                                           "hyperspherical family momentum psi1");
    sc_sample->add_option("--hyper-eta-dot0", sample.hyper_eta_dot0,
                          "initial eta rate for the hyperspherical family");
    psi_opt->excludes(hpsi_opt);
    sc_sample->add_option("--x0", sample.x0, "base point x1,x2,x3,x4")->delimiter(',');
    sc_sample->add_option("--s-end", sample.s_end, "parameter span")->required();
    sc_sample->add_option("--samples", sample.samples, "number of samples");
    sc_sample->add_option("--format", sample.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sc_sample->add_option("--output", sample.output, "output path or -");

    IntegrateArgs integ;
    auto* sc_int = app.add_subcommand("integrate", "Integrate the Hamiltonian system");
    sc_int->add_option("--xi", integ.xi, "initial covector xi1,xi2,xi3,xi4")->delimiter(',');
    sc_int->add_option("--x0", integ.x0, "initial point x1,x2,x3,x4")->delimiter(',');
    sc_int->add_option("--s-end", integ.s_end, "integration span")->required();
    sc_int->add_option("--rel-tol", integ.ode.rel_tol, "relative tolerance");
    sc_int->add_option("--abs-tol", integ.ode.abs_tol, "absolute tolerance");
    sc_int->add_option("--max-step", integ.ode.max_step, "maximum step size");
    sc_int->add_flag("--hyper", integ.hyper, "integrate in the hyperspherical chart");
    sc_int->add_option("--init", integ.init,
                       "hyperspherical initial state xi1,xi2,eta,psi1,psi2,theta")
        ->delimiter(',');
    sc_int->add_option("--format", integ.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sc_int->add_option("--output", integ.output, "output path or -");

    ConnectArgs conn;
    auto* sc_conn = app.add_subcommand("connect", "Enumerate boundary-value geodesics");
    sc_conn->add_option("--fiber-omega", conn.fiber_omega,
                        "fiber angle omega of the vertical-line target");
    sc_conn->add_option("--target", conn.target, "target point x1,x2,x3,x4")->delimiter(',');
    sc_conn->add_option("--n-max", conn.n_max, "largest winding for fiber targets");
    sc_conn->add_option("--grid-step", conn.opts.grid_step, "scan resolution in B");
    sc_conn->add_option("--branch-max", conn.opts.branch_max, "arrival branch budget");
    sc_conn->add_option("--verify-tol", conn.opts.verify_tol, "endpoint residual bound");
    sc_conn->add_flag("--oracle", conn.oracle, "cross-check with the brute-force scan");
    sc_conn->add_option("--s-max", conn.s_max, "oracle arc-length window");
    sc_conn->add_option("--oracle-grid-step", conn.oracle_grid_step,
                        "oracle scan resolution");
    sc_conn->add_flag("--emit-lhs-grid", conn.emit_lhs_grid,
                      "dump the parameter-equation left-hand side over a B grid");
    sc_conn->add_option("--lhs-points", conn.lhs_points, "grid size for --emit-lhs-grid");
    sc_conn->add_option("--format", conn.format, "report format (json)")
        ->check(CLI::IsMember({"json"}));
    sc_conn->add_option("--output", conn.output, "output path or -");

    HopfArgs hopf_args;
    auto* sc_hopf = app.add_subcommand("hopf", "Hopf projection, lifts and holonomy");
    sc_hopf->add_option("--project", hopf_args.project_path,
                        "project a sampled path CSV (s,x1..x4) to the base sphere");
    sc_hopf->add_option("--lift", hopf_args.lift_path,
                        "horizontally lift a loop CSV (t,u1,u2,u3)");
    sc_hopf->add_option("--holonomy", hopf_args.holonomy_path,
                        "holonomy of a loop CSV (t,u1,u2,u3)");
    sc_hopf->add_option("--shortest-omega", hopf_args.shortest_omega,
                        "shortest loop with the given holonomy");
    sc_hopf->add_option("--x0", hopf_args.x0, "base point for lifts")->delimiter(',');
    sc_hopf->add_option("--output", hopf_args.output, "output path or -");

    VerifyOptions verify_opts;
    auto* sc_verify = app.add_subcommand("verify", "Run the full invariant suite");
    sc_verify->add_option("--seed", verify_opts.seed, "random seed");
    auto* tol_opt = sc_verify->add_option("--tol", verify_opts.default_predicate_tol,
                                          "default predicate tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sc_sample->parsed()) return cmd_sample(sample);
        if (sc_int->parsed()) return cmd_integrate(integ);
        if (sc_conn->parsed()) return cmd_connect(conn);
        if (sc_hopf->parsed()) return cmd_hopf(hopf_args);
        if (sc_verify->parsed()) return cmd_verify(verify_opts, tol_opt->count() > 0);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << e.name() << ": " << e.what() << '\n';
        return 3;
    }
    return 1;
}

} // namespace s3sr::cli
