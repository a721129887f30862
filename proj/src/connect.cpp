#include "s3sr/connect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace s3sr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kDedupeTol = 1e-8;

Vec4 target_vec(const TargetPoint& t) {
    return {t.r() * std::cos(t.alpha()), t.r() * std::sin(t.alpha()),
            t.rho() * std::cos(t.phi()), t.rho() * std::sin(t.phi())};
}

double endpoint_residual(double B, double theta, double s, const Vec4& target) {
    const ZW e = geodesic_bc(B, theta, s);
    return norm(from_zw(e.z, e.w) - target);
}

GeodesicSolution make_solution(double B, double theta, double s, int branch,
                               const Vec4& target) {
    GeodesicSolution sol;
    sol.B = B;
    sol.theta = theta;
    sol.s_arc = s;
    sol.paper_length = s / kSqrt2;
    sol.branch_index = branch;
    sol.residual = endpoint_residual(B, theta, s, target);
    return sol;
}

void sort_and_dedupe(std::vector<GeodesicSolution>& sols) {
    std::sort(sols.begin(), sols.end(), [](const auto& a, const auto& b) {
        if (a.s_arc != b.s_arc) return a.s_arc < b.s_arc;
        return a.B < b.B;
    });
    std::vector<GeodesicSolution> out;
    for (const auto& s : sols) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& o) {
            return std::abs(o.B - s.B) <= kDedupeTol && std::abs(o.s_arc - s.s_arc) <= kDedupeTol;
        });
        if (!dup) out.push_back(s);
    }
    sols = std::move(out);
}

} // namespace

TargetPoint::TargetPoint(double r, double alpha, double rho, double phi)
    : r_(r), alpha_(wrap_pi(alpha)), rho_(rho), phi_(wrap_pi(phi)) {
    if (r < 0.0 || rho < 0.0)
        throw InvalidParam("TargetPoint: moduli must be non-negative");
    if (std::abs(r * r + rho * rho - 1.0) > 1e-12)
        throw InvalidParam("TargetPoint: r^2 + rho^2 must equal 1 within 1e-12");
    if (r_ == 0.0) alpha_ = 0.0;
    if (rho_ == 0.0) phi_ = 0.0;
}

TargetPoint TargetPoint::from_point(const S3Point& p) {
    const double r = std::abs(p.z());
    const double rho = std::abs(p.w());
    return TargetPoint(r, r == 0.0 ? 0.0 : std::arg(p.z()), rho,
                       rho == 0.0 ? 0.0 : std::arg(p.w()));
}

S3Point TargetPoint::point() const {
    return S3Point(S3Point::Unchecked{}, normalized(target_vec(*this)));
}

std::vector<GeodesicSolution> enumerate_to_fiber(double omega, int n_max) {
    if (!(omega >= 0.0 && omega < 2.0 * kPi))
        throw InvalidOmega("enumerate_to_fiber: omega must lie in [0, 2*pi)");
    if (n_max < 1) throw InvalidParam("enumerate_to_fiber: n_max must be >= 1");

    const Vec4 target{std::cos(omega), std::sin(omega), 0.0, 0.0};
    std::vector<GeodesicSolution> sols;

    for (int n = 1; n <= n_max; ++n) {
        // tau = B*s ranges over (-pi*n, pi*n); the congruence fixes tau to
        // the class pi*n - omega mod 2*pi.
        for (int k = -n; k <= 2 * n; ++k) {
            const double tau = kPi * n - omega - 2.0 * kPi * k;
            const double disc = kPi * kPi * n * n - tau * tau;
            // exclude the degenerate |tau| = pi*n boundary (s = 0), including
            // roundoff slivers
            if (disc <= 1e-12 * kPi * kPi * n * n) continue;
            const double s = std::sqrt(disc);
            const double B = tau / s;
            sols.push_back(make_solution(B, 0.0, s, n, target));
        }
    }
    sort_and_dedupe(sols);
    return sols;
}

double param_equation_lhs(double B, const TargetPoint& target) {
    const double rho = target.rho();
    if (rho <= 0.0)
        throw DomainError("param_equation_lhs: requires rho > 0");
    const double inner = 1.0 - (1.0 + B * B) * rho * rho;
    if (inner <= 0.0)
        throw DomainError("param_equation_lhs: |B| at or beyond sqrt(1/rho^2 - 1)");
    if (B == 0.0) return -rho; // the sine factor has no limit at B = 0

    const double angle = target.alpha() - std::atan2(B * rho, std::sqrt(inner));
    const double stretch = std::sqrt(1.0 + 1.0 / (B * B));
    return std::sin(angle * stretch) - rho * std::sqrt(1.0 + B * B);
}

namespace {

// Arrival candidates for enumerate_between: for branch interval j, the two
// arcsin branches give u = pi*j + a and u = pi*(j+1) - a with
// a = arcsin(rho * mu).
struct ArrivalBranch {
    int interval = 0;
    bool ascending = true; // u = pi*j + a versus u = pi*(j+1) - a
};

double arrival_u(const ArrivalBranch& br, double a) {
    return br.ascending ? kPi * br.interval + a : kPi * (br.interval + 1) - a;
}

// Wrapped mismatch of arg z against the target; vanishes exactly at
// solutions of the boundary-value problem on this branch.
double branch_mismatch(double B, const ArrivalBranch& br, const TargetPoint& t) {
    const double mu = std::sqrt(1.0 + B * B);
    const double a = std::asin(std::min(1.0, t.rho() * mu));
    const double u = arrival_u(br, a);
    const double s = u / mu;
    const std::complex<double> z =
        std::complex<double>(std::cos(u), B / mu * std::sin(u)) * std::polar(1.0, -B * s);
    return wrap_pi(std::arg(z) - t.alpha());
}

} // namespace

std::vector<GeodesicSolution> enumerate_between(const TargetPoint& target,
                                                const ConnectOptions& opts) {
    if (target.rho() <= 1e-12)
        throw VerticalLineCase(
            "enumerate_between: target lies on the vertical line; use enumerate_to_fiber");
    if (std::abs(target.alpha()) <= 1e-12)
        throw HorizontalSphereCase(
            "enumerate_between: target lies on the horizontal sphere (alpha = 0); the "
            "solution is the constant-coefficient geodesic with B = 0");
    if (opts.grid_step <= 0.0 || opts.branch_max < 0)
        throw InvalidParam("enumerate_between: bad options");

    const double b_max = std::sqrt(1.0 / (target.rho() * target.rho()) - 1.0);
    const double b_lo = -b_max + 1e-9;
    const double b_hi = b_max - 1e-9;
    const Vec4 tvec = target_vec(target);

    std::vector<GeodesicSolution> sols;

    std::vector<ArrivalBranch> branches;
    for (int j = 0; j <= opts.branch_max; ++j) {
        branches.push_back({j, true});
        branches.push_back({j, false});
    }

    for (const auto& br : branches) {
        double prevB = b_lo;
        double prevG = branch_mismatch(prevB, br, target);
        for (double B = b_lo + opts.grid_step; prevB < b_hi; B += opts.grid_step) {
            B = std::min(B, b_hi);
            const double g = branch_mismatch(B, br, target);
            // Reject wrap jumps of the circle-valued mismatch.
            if (std::abs(g - prevG) < 0.5 * kPi &&
                ((prevG <= 0.0 && g >= 0.0) || (prevG >= 0.0 && g <= 0.0)) &&
                (prevG != g)) {
                double lo = prevB, hi = B, glo = prevG;
                for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = branch_mismatch(mid, br, target);
                    if ((glo <= 0.0 && gm <= 0.0) || (glo >= 0.0 && gm >= 0.0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                const double Br = 0.5 * (lo + hi);
                const double mu = std::sqrt(1.0 + Br * Br);
                const double a = std::asin(std::min(1.0, target.rho() * mu));
                const double u = arrival_u(br, a);
                const double s = u / mu;
                // theta from the first integrals: arg w = theta + B s (+pi
                // on the negative arcsin branch).
                const double theta =
                    wrap_pi(target.phi() - Br * s - (std::sin(u) < 0.0 ? kPi : 0.0));
                GeodesicSolution sol = make_solution(Br, theta, s, br.interval, tvec);
                if (sol.residual <= opts.verify_tol) sols.push_back(sol);
            }
            if (B >= b_hi) break;
            prevB = B;
            prevG = g;
        }
    }

    sort_and_dedupe(sols);
    if (sols.empty())
        throw NoSolutionInBudget(
            "enumerate_between: no verified solution within the search budget "
            "(branch_max = " +
            std::to_string(opts.branch_max) + ", grid_step = " +
            std::to_string(opts.grid_step) + ")");
    return sols;
}

double first_branch_root_bound(const TargetPoint& target) {
    const double rho = target.rho();
    if (rho <= 0.0 || rho >= 1.0)
        throw InvalidParam("first_branch_root_bound: requires 0 < rho < 1");
    const double r = std::sqrt(1.0 - rho * rho);
    const double lhs = target.alpha() * r / (rho * (kSqrt2 - r));
    const double rhs = std::sqrt(0.5 * (1.0 / (rho * rho) - 1.0));
    return std::min(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------
namespace {

struct EndpointEval {
    double f1; // |w| - rho
    double f2; // wrapped arg z mismatch
    double abs_w;
};

EndpointEval eval_endpoint(double B, double s, const TargetPoint& t) {
    const double mu = std::sqrt(1.0 + B * B);
    const double u = mu * s;
    const std::complex<double> z =
        std::complex<double>(std::cos(u), B / mu * std::sin(u)) * std::polar(1.0, -B * s);
    const double abs_w = std::abs(std::sin(u)) / mu;
    return {abs_w - t.rho(), wrap_pi(std::arg(z) - t.alpha()), abs_w};
}

// Newton polish of the 2-D residual (f1, f2) from a cell-centered start.
// The endpoint-matching root is transversal, so a finite-difference Jacobian
// converges from within a cell or two of the root; steep f1 zero-curves
// (arrivals near the |w| envelope) are handled without bracketing.
std::optional<std::pair<double, double>> polish_root(double B, double s,
                                                     const TargetPoint& t,
                                                     double max_move) {
    const double B0 = B, s0 = s;
    for (int it = 0; it < 40; ++it) {
        const EndpointEval e = eval_endpoint(B, s, t);
        if (std::abs(e.f1) < 1e-13 && std::abs(e.f2) < 1e-13) break;
        const double hB = 1e-7 * (1.0 + std::abs(B));
        const double hS = 1e-7 * (1.0 + std::abs(s));
        const EndpointEval eB = eval_endpoint(B + hB, s, t);
        const EndpointEval eS = eval_endpoint(B, s + hS, t);
        const double a11 = (eB.f1 - e.f1) / hB, a12 = (eS.f1 - e.f1) / hS;
        const double a21 = wrap_pi(eB.f2 - e.f2) / hB, a22 = wrap_pi(eS.f2 - e.f2) / hS;
        const double det = a11 * a22 - a12 * a21;
        if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
        double dB = -(a22 * e.f1 - a12 * e.f2) / det;
        double dS = -(-a21 * e.f1 + a11 * e.f2) / det;
        // clamp the step to keep the iteration local
        const double step = std::max(std::abs(dB), std::abs(dS));
        if (step > 0.25 * max_move) {
            dB *= 0.25 * max_move / step;
            dS *= 0.25 * max_move / step;
        }
        B += dB;
        s += dS;
        if (std::abs(B - B0) > max_move || std::abs(s - s0) > max_move)
            return std::nullopt;
    }
    const EndpointEval e = eval_endpoint(B, s, t);
    if (std::abs(e.f1) > 1e-10 || std::abs(e.f2) > 1e-10) return std::nullopt;
    return std::make_pair(B, s);
}

double recover_theta(double B, double s, const TargetPoint& t) {
    const double u = std::sqrt(1.0 + B * B) * s;
    return wrap_pi(t.phi() - B * s - (std::sin(u) < 0.0 ? kPi : 0.0));
}

// Generic-target scan: cells where both residuals change sign are clustered
// and polished by the Newton iteration above.
void scan_generic(const TargetPoint& t, double grid_step, double s_max,
                  std::vector<GeodesicSolution>& out) {
    const double b_max = std::sqrt(1.0 / (t.rho() * t.rho()) - 1.0);
    const double b_lo = -b_max + 1e-9;
    const double b_hi = b_max - 1e-9;
    const int nB = std::max(2, static_cast<int>(std::ceil((b_hi - b_lo) / grid_step)));
    const int nS = std::max(2, static_cast<int>(std::ceil(s_max / grid_step)));
    const double dB = (b_hi - b_lo) / nB;
    const double dS = s_max / nS;
    const Vec4 tvec = target_vec(t);

    std::vector<EndpointEval> col0(nS + 1), col1(nS + 1);
    for (int j = 0; j <= nS; ++j)
        col0[j] = eval_endpoint(b_lo, std::max(dS * j, 1e-9), t);

    struct Cell {
        int i, j;
    };
    std::vector<Cell> cells;

    for (int i = 0; i < nB; ++i) {
        const double B1 = b_lo + dB * (i + 1);
        for (int j = 0; j <= nS; ++j)
            col1[j] = eval_endpoint(B1, std::max(dS * j, 1e-9), t);
        for (int j = 0; j < nS; ++j) {
            const EndpointEval* c[4] = {&col0[j], &col0[j + 1], &col1[j], &col1[j + 1]};
            double f1lo = 1e300, f1hi = -1e300, f2lo = 1e300, f2hi = -1e300;
            for (const auto* e : c) {
                f1lo = std::min(f1lo, e->f1);
                f1hi = std::max(f1hi, e->f1);
                f2lo = std::min(f2lo, e->f2);
                f2hi = std::max(f2hi, e->f2);
            }
            if (f1lo <= 0.0 && f1hi >= 0.0 && f2lo <= 0.0 && f2hi >= 0.0 &&
                f2hi - f2lo < 0.5 * kPi)
                cells.push_back({i, j});
        }
        std::swap(col0, col1);
    }

    // Merge adjacent flagged cells into clusters before refining.
    std::vector<bool> used(cells.size(), false);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        if (used[ci]) continue;
        int ilo = cells[ci].i, ihi = cells[ci].i, jlo = cells[ci].j, jhi = cells[ci].j;
        bool grew = true;
        used[ci] = true;
        while (grew) {
            grew = false;
            for (std::size_t cj = 0; cj < cells.size(); ++cj) {
                if (used[cj]) continue;
                if (cells[cj].i >= ilo - 1 && cells[cj].i <= ihi + 1 &&
                    cells[cj].j >= jlo - 1 && cells[cj].j <= jhi + 1) {
                    ilo = std::min(ilo, cells[cj].i);
                    ihi = std::max(ihi, cells[cj].i);
                    jlo = std::min(jlo, cells[cj].j);
                    jhi = std::max(jhi, cells[cj].j);
                    used[cj] = true;
                    grew = true;
                }
            }
        }

        // Polish from the cluster center; reject runaways so a spurious
        // cluster cannot manufacture a distant witness.
        const double Bc = b_lo + dB * 0.5 * (ilo + ihi + 1);
        const double Sc = std::max(1e-9, dS * 0.5 * (jlo + jhi + 1));
        const double max_move = std::max(64.0 * std::max(dB, dS),
                                         4.0 * (std::abs(ihi - ilo) + 1) * dB);
        const auto root = polish_root(Bc, Sc, t, max_move);
        if (!root) continue;
        const auto [B, s] = *root;
        if (s <= 0.0 || s > s_max || std::abs(B) >= b_max) continue;
        GeodesicSolution sol = make_solution(B, recover_theta(B, s, t), s,
                                             static_cast<int>(std::sqrt(1.0 + B * B) * s / kPi),
                                             tvec);
        if (sol.residual <= 1e-9) out.push_back(sol);
    }
}

// Vertical-line targets: |w| only touches zero, so sign changes never occur.
// Track the local minima of |w|^2 per column instead and root-find the
// argument mismatch along each minimum curve.
void scan_vertical(const TargetPoint& t, double grid_step, double s_max,
                   std::vector<GeodesicSolution>& out) {
    const double b_cap = 8.0;
    const int nB = std::max(2, static_cast<int>(std::ceil(2.0 * b_cap / grid_step)));
    const double dB = 2.0 * b_cap / nB;
    const Vec4 tvec = target_vec(t);

    // Coarse s-grid fine enough to separate the |w| minima for |B| <= b_cap.
    const double mu_max = std::sqrt(1.0 + b_cap * b_cap);
    const double ds = kPi / mu_max / 8.0;
    const int nS = static_cast<int>(std::ceil(s_max / ds));

    auto abs_w = [&](double B, double s) { return eval_endpoint(B, s, t).abs_w; };

    // Refines a bracketed minimum of |w|^2 by golden-section search.
    auto refine_min = [&](double B, double slo, double shi) {
        constexpr double gr = 0.6180339887498949;
        double a = slo, b = shi;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = abs_w(B, c), fd = abs_w(B, d);
        for (int it = 0; it < 90 && b - a > 1e-13; ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = abs_w(B, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = abs_w(B, d);
            }
        }
        return 0.5 * (a + b);
    };

    // Minimum curves are indexed by the winding integer n = round(mu s / pi).
    struct Track {
        int n;
        double g;
        double B;
    };
    std::vector<Track> prev;

    for (int i = 0; i <= nB; ++i) {
        const double B = -b_cap + dB * i;
        const double mu = std::sqrt(1.0 + B * B);
        std::vector<Track> cur;
        for (int j = 1; j + 1 <= nS; ++j) {
            const double s0 = ds * (j - 1), s1 = ds * j, s2 = ds * (j + 1);
            const double w0 = abs_w(B, s0), w1 = abs_w(B, s1), w2 = abs_w(B, s2);
            if (w1 <= w0 && w1 <= w2 && w1 < 2.0 * ds) {
                const double smin = refine_min(B, s0, s2);
                if (abs_w(B, smin) > 1e-6) continue; // shallow dip, not a fiber crossing
                const int n = static_cast<int>(std::lround(mu * smin / kPi));
                if (n < 1) continue;
                cur.push_back({n, eval_endpoint(B, smin, t).f2, B});
            }
        }
        for (const auto& pr : prev) {
            for (const auto& cu : cur) {
                if (pr.n != cu.n) continue;
                if (std::abs(pr.g - cu.g) >= 0.5 * kPi) continue;
                if ((pr.g < 0.0) == (cu.g < 0.0) && pr.g != 0.0 && cu.g != 0.0) continue;
                // Bisect the mismatch along this minimum curve.
                double lo = pr.B, hi = cu.B, glo = pr.g;
                const int n = cu.n;
                auto g_at = [&](double Bq) {
                    const double muq = std::sqrt(1.0 + Bq * Bq);
                    const double center = kPi * n / muq;
                    const double smin = refine_min(Bq, center - 0.45 * kPi / muq,
                                                   center + 0.45 * kPi / muq);
                    return std::pair<double, double>(eval_endpoint(Bq, smin, t).f2, smin);
                };
                double sroot = 0.0;
                for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const auto [gm, sm] = g_at(mid);
                    sroot = sm;
                    if ((gm < 0.0) == (glo < 0.0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                const double Br = 0.5 * (lo + hi);
                sroot = g_at(Br).second;
                if (sroot > s_max) continue;
                GeodesicSolution sol =
                    make_solution(Br, recover_theta(Br, sroot, t), sroot, n, tvec);
                if (sol.residual <= 1e-9) out.push_back(sol);
            }
        }
        prev = std::move(cur);
    }
}

} // namespace

BruteForceResult brute_force_count(const TargetPoint& target, double grid_step,
                                   double s_max) {
    if (grid_step <= 0.0 || s_max <= 0.0)
        throw InvalidParam("brute_force_count: grid_step and s_max must be positive");

    std::vector<GeodesicSolution> witnesses;
    if (target.rho() <= 1e-12)
        scan_vertical(target, grid_step, s_max, witnesses);
    else
        scan_generic(target, grid_step, s_max, witnesses);

    sort_and_dedupe(witnesses);
    // Cells narrower than the scan resolution cannot be told apart; collapse
    // witnesses closer than half a grid step as one solution cell.
    std::vector<GeodesicSolution> merged;
    for (const auto& w : witnesses) {
        const bool dup = std::any_of(merged.begin(), merged.end(), [&](const auto& m) {
            return std::abs(m.B - w.B) < 0.5 * grid_step &&
                   std::abs(m.s_arc - w.s_arc) < 0.5 * grid_step;
        });
        if (!dup) merged.push_back(w);
    }
    return {static_cast<int>(merged.size()), std::move(merged)};
}

} // namespace s3sr
