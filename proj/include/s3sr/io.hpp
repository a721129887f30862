#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "s3sr/connect.hpp"
#include "s3sr/hamiltonian.hpp"
#include "s3sr/hopf.hpp"

#include <json.hpp>

namespace s3sr::io {

// Canonical float formatting used in every CSV cell (17 significant digits,
// shortest-form %g), so outputs are bit-identical across runs.
std::string format_double(double v);

// Trajectory CSV, column order fixed:
// s,x1,x2,x3,x4,xi1,xi2,xi3,xi4,a,b,c,H,norm_drift
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// Hyperspherical trajectory CSV:
// s,xi1,xi2,eta,psi1,psi2,theta,H,H_drift
void write_hyper_trajectory_csv(std::ostream& os, const HyperTrajectory& traj);

// Sampled curve CSV: s,x1,x2,x3,x4
struct CurveSample {
    double s = 0.0;
    Vec4 x;
};
void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& samples);

// Sampled curve JSON: {"params": ..., "samples": [[s,x1,x2,x3,x4], ...]}
nlohmann::json curve_json(const nlohmann::json& params,
                          const std::vector<CurveSample>& samples);

nlohmann::json trajectory_json(const nlohmann::json& params, const Trajectory& traj);

// Enumeration report:
// {target, solutions:[{B,theta,s_arc,paper_length,branch_index,residual}],
//  count, oracle_count?}
nlohmann::json connect_report_json(const TargetPoint& target,
                                   const std::vector<GeodesicSolution>& solutions);
nlohmann::json fiber_report_json(double omega,
                                 const std::vector<GeodesicSolution>& solutions);

// Loop CSV: t,u1,u2,u3. Reading does not require closure (lifts accept open
// curves); holonomy validates closure itself.
void write_loop_csv(std::ostream& os, const LoopOnS2& loop);
std::vector<LoopSample> read_loop_csv(std::istream& is);

// Holonomy report: {"angle":..., "lift_residual":..., "length":...}
nlohmann::json holonomy_json(const HolonomyResult& result);

} // namespace s3sr::io
