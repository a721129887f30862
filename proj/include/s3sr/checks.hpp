#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace s3sr {

struct CheckResult {
    std::string name;
    bool pass = false;
    double max_err = 0.0;
    double tol = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 0x533352u;
    // Tolerance used where a check relies on the caller-supplied predicate
    // default (overridable through S3SR_DEFAULT_TOL in the CLI).
    double default_predicate_tol = 1e-9;
};

// Runs every invariant declared by the library modules and reports one
// result per property. Deterministic for a fixed seed.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& opts = {});

} // namespace s3sr
