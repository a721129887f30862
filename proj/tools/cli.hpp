#pragma once

namespace s3sr::cli {

// Entry point for the s3sr command line tool. Exit codes: 0 success,
// 1 usage error, 2 verification failure, 3 numerical failure.
int run(int argc, const char* const* argv);

} // namespace s3sr::cli
