// Runs the twelve acceptance criteria and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "ncsym/suite.hpp"

int main(int argc, char** argv) {
    ncsym::SuiteConfig cfg;
    if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
    const auto results = ncsym::run_suite(cfg);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s %2d %-26s measured %.3e %s %.3e  [%s] %.2fs\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.measured, r.comparison.c_str(), r.threshold, r.detail.c_str(), r.seconds);
        if (!r.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
