// SPDX-License-Identifier: Apache-2.0
//
// Full-scale verification battery: one pass/fail line per criterion.

#include <cstdlib>
#include <iostream>

#include "secbeam/selfcheck.hpp"

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
    const auto results = secbeam::run_checks(secbeam::full_scale(), seed, &std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.pass) ++failures;
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all " << results.size() << " criteria passed\n";
    return 0;
}
