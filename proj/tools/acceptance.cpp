#include "kstab/verify.hpp"

#include <cstdlib>
#include <iostream>

/**
 * @brief Acceptance report: one PASS/FAIL line per criterion, followed by the
 * failed checks. Exits 0 once every criterion has been evaluated; the verdicts
 * are in the report (use `kstab verify` for a failing exit status).
 */
int main(int argc, char** argv) {
    kstab::verify::Options opt;
    if (argc > 1) opt.cap = std::atol(argv[1]);
    for (int id = 1; id <= 7; ++id) {
        auto r = kstab::verify::run_criterion(id, opt);
        std::cout << kstab::verify::summary_line(r) << std::endl;
        for (const auto& c : r.checks)
            if (!c.ok) std::cout << "  FAIL " << c.name << ": " << c.detail << std::endl;
    }
    return 0;
}
