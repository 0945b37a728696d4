#pragma once

// The end-to-end acceptance checks, shared by the acceptance test binary and
// `gausspm selftest`.

#include <ostream>
#include <string>
#include <vector>

namespace gausspm {

struct AcceptanceResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs every check; when `out` is given, prints one line per check as it finishes.
std::vector<AcceptanceResult> run_acceptance(std::ostream* out = nullptr);

std::string format_result(const AcceptanceResult& r);

}  // namespace gausspm
