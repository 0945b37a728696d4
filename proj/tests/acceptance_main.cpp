// One line per acceptance criterion; exit status is the number of failures.

#include <iostream>

#include "gausspm/acceptance.hpp"

int main() {
    int failed = 0;
    for (const auto& r : gausspm::run_acceptance(&std::cout)) failed += !r.pass;
    std::cout << (failed ? "FAILED: " : "PASSED: ") << 12 - failed << "/12 criteria passed" << std::endl;
    return failed;
}
