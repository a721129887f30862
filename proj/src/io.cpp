#include "s3sr/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace s3sr::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_row(std::ostream& os, std::initializer_list<double> vals) {
    bool first = true;
    for (double v : vals) {
        if (!first) os << ',';
        os << format_double(v);
        first = false;
    }
    os << '\n';
}

} // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "s,x1,x2,x3,x4,xi1,xi2,xi3,xi4,a,b,c,H,norm_drift\n";
    for (const auto& p : traj.samples)
        write_row(os, {p.s, p.x.x1, p.x.x2, p.x.x3, p.x.x4, p.xi.x1, p.xi.x2, p.xi.x3,
                       p.xi.x4, p.a, p.b, p.c, p.H, p.norm_drift});
}

void write_hyper_trajectory_csv(std::ostream& os, const HyperTrajectory& traj) {
    os << "s,xi1,xi2,eta,psi1,psi2,theta,H,H_drift\n";
    for (const auto& p : traj.samples) {
        const auto& st = p.state;
        write_row(os, {p.s, st.xi1, st.xi2, st.eta, st.psi1, st.psi2, st.theta,
                       hamiltonian_value_hyper(st), p.h_drift});
    }
}

void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& samples) {
    os << "s,x1,x2,x3,x4\n";
    for (const auto& p : samples) write_row(os, {p.s, p.x.x1, p.x.x2, p.x.x3, p.x.x4});
}

nlohmann::json curve_json(const nlohmann::json& params,
                          const std::vector<CurveSample>& samples) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : samples)
        rows.push_back({p.s, p.x.x1, p.x.x2, p.x.x3, p.x.x4});
    return {{"params", params}, {"columns", {"s", "x1", "x2", "x3", "x4"}},
            {"samples", rows}};
}

nlohmann::json trajectory_json(const nlohmann::json& params, const Trajectory& traj) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : traj.samples)
        rows.push_back({p.s, p.x.x1, p.x.x2, p.x.x3, p.x.x4, p.xi.x1, p.xi.x2, p.xi.x3,
                        p.xi.x4, p.a, p.b, p.c, p.H, p.norm_drift});
    return {{"params", params},
            {"columns",
             {"s", "x1", "x2", "x3", "x4", "xi1", "xi2", "xi3", "xi4", "a", "b", "c", "H",
              "norm_drift"}},
            {"samples", rows}};
}

namespace {

nlohmann::json solutions_json(const std::vector<GeodesicSolution>& solutions) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : solutions)
        arr.push_back({{"B", s.B},
                       {"theta", s.theta},
                       {"s_arc", s.s_arc},
                       {"paper_length", s.paper_length},
                       {"branch_index", s.branch_index},
                       {"residual", s.residual}});
    return arr;
}

} // namespace

nlohmann::json connect_report_json(const TargetPoint& target,
                                   const std::vector<GeodesicSolution>& solutions) {
    return {{"target",
             {{"r", target.r()},
              {"alpha", target.alpha()},
              {"rho", target.rho()},
              {"phi", target.phi()}}},
            {"solutions", solutions_json(solutions)},
            {"count", solutions.size()}};
}

nlohmann::json fiber_report_json(double omega,
                                 const std::vector<GeodesicSolution>& solutions) {
    return {{"target", {{"fiber_omega", omega}}},
            {"solutions", solutions_json(solutions)},
            {"count", solutions.size()}};
}

void write_loop_csv(std::ostream& os, const LoopOnS2& loop) {
    os << "t,u1,u2,u3\n";
    for (const auto& p : loop.samples)
        write_row(os, {p.t, p.p.u1(), p.p.u2(), p.p.u3()});
}

std::vector<LoopSample> read_loop_csv(std::istream& is) {
    std::vector<LoopSample> samples;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("t,", 0) == 0 || line.rfind("t ,", 0) == 0) continue; // header
        std::istringstream row(line);
        double vals[4];
        char comma;
        if (!(row >> vals[0])) throw InvalidParam("read_loop_csv: malformed row: " + line);
        for (int i = 1; i < 4; ++i)
            if (!(row >> comma >> vals[i]))
                throw InvalidParam("read_loop_csv: malformed row: " + line);
        if (!samples.empty() && !(vals[0] > samples.back().t))
            throw InvalidParam("read_loop_csv: parameters must strictly increase");
        samples.push_back({vals[0], S2Point::normalized({vals[1], vals[2], vals[3]})});
    }
    if (samples.empty()) throw EmptyInput("read_loop_csv: no samples");
    return samples;
}

nlohmann::json holonomy_json(const HolonomyResult& result) {
    return {{"angle", result.element.angle},
            {"lift_residual", result.lift_residual},
            {"length", result.length}};
}

} // namespace s3sr::io
