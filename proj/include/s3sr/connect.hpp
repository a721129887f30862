#pragma once

#include <vector>

#include "s3sr/core.hpp"
#include "s3sr/geodesics.hpp"

namespace s3sr {

// Boundary point written as z1 = r exp(i alpha), w1 = rho exp(i phi).
class TargetPoint {
public:
    TargetPoint(double r, double alpha, double rho, double phi);
    static TargetPoint from_point(const S3Point& p);

    double r() const noexcept { return r_; }
    double alpha() const noexcept { return alpha_; }
    double rho() const noexcept { return rho_; }
    double phi() const noexcept { return phi_; }

    S3Point point() const;

private:
    double r_, alpha_, rho_, phi_;
};

// One geodesic from the identity to a target, identified by (B, theta) and
// the arc parameter s_arc at arrival. paper_length carries the 1/sqrt(2)
// convention verbatim; branch_index is the winding integer n for fiber
// targets and the arrival pi-interval index floor(mu*s/pi) otherwise.
struct GeodesicSolution {
    double B = 0.0;
    double theta = 0.0;
    double s_arc = 0.0;
    double paper_length = 0.0;
    int branch_index = 0;
    double residual = 0.0;
};

// All geodesics from the identity to the fiber point (cos w, sin w, 0, 0)
// with winding n <= n_max. For each n and winding correction k the pair
// (B, s) solves B*s = pi*n - omega - 2*pi*k together with s*sqrt(1+B^2) =
// pi*n; every emitted solution is re-verified by forward evaluation. The
// B_n = -omega/sqrt(pi^2 n^2 - omega^2) family appears as the k = n/2
// sub-family for even n. Sorted by s_arc.
std::vector<GeodesicSolution> enumerate_to_fiber(double omega, int n_max);

// Left-hand side of the scalar equation for the parameter B:
//   sin((alpha - atan2(B rho, sqrt(1-(1+B^2) rho^2))) * sqrt(1 + 1/B^2))
//     - rho sqrt(1+B^2).
// Throws DomainError when rho = 0 or |B| >= sqrt(1/rho^2 - 1). The sine
// factor has no limit at B = 0 (it oscillates); at exactly B = 0 the
// bounded oscillating term is reported at its midpoint, i.e. -rho.
double param_equation_lhs(double B, const TargetPoint& target);

struct ConnectOptions {
    double grid_step = 1e-3; // scan resolution in B
    double verify_tol = 1e-9;
    int branch_max = 8; // largest arrival pi-interval index searched
};

// All geodesics from the identity to a generic target (rho > 0, alpha != 0):
// scans B over the admissible interval, pairs each B with the multi-branch
// arrival candidates s*sqrt(1+B^2) in {arcsin(rho sqrt(1+B^2)) + pi*m} (both
// arcsin branches), bisects the argument mismatch to 1e-12, recovers theta
// from the first integrals and re-verifies every endpoint. Throws
// VerticalLineCase for rho = 0, HorizontalSphereCase for alpha = 0 and
// NoSolutionInBudget when the branch budget yields nothing.
std::vector<GeodesicSolution> enumerate_between(const TargetPoint& target,
                                                const ConnectOptions& opts = {});

struct BruteForceResult {
    int count = 0;
    std::vector<GeodesicSolution> witnesses;
};

// Independent oracle: a dense 2-D scan of the endpoint map over (B, s) with
// s in (0, s_max], counting distinct solution cells (theta is eliminated by
// matching |z|, arg z, |w| and recovering phi). For rho = 0 targets the scan
// covers |B| <= 8 (witness cross-checks against enumerate_to_fiber filter
// accordingly); for rho > 0 the admissible interval |B| < sqrt(1/rho^2 - 1)
// is used.
BruteForceResult brute_force_count(const TargetPoint& target, double grid_step,
                                   double s_max);

// Lower bound satisfied by every positive first-arcsin-branch root:
//   b(alpha, rho) = min( alpha sqrt(1-rho^2) / (rho (sqrt(2)-sqrt(1-rho^2))),
//                        sqrt((1/rho^2 - 1)/2) ).
// Meaningful for alpha > 0; mirror the target for alpha < 0.
double first_branch_root_bound(const TargetPoint& target);

} // namespace s3sr
