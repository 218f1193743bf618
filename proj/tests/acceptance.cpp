// Runs every registered check and prints one verdict line per acceptance criterion.
#include <chrono>
#include <cstdio>
#include <map>
#include <thread>

#include "asph/checks.hpp"

int main(int argc, char** argv) {
    const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto start = std::chrono::steady_clock::now();
    const auto records = asph::run_checks({}, threads);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::map<int, std::vector<const asph::CheckRecord*>> by_criterion;
    for (const auto& r : records) by_criterion[r.criterion].push_back(&r);

    int failed = 0;
    for (int c = 1; c <= 11; ++c) {
        const auto& group = by_criterion[c];
        bool pass = !group.empty();
        double seconds = 0.0;
        for (const auto* r : group) {
            pass = pass && r->pass;
            seconds += r->seconds;
        }
        failed += !pass;
        std::printf("criterion %2d: %s  (%zu checks, %.1f s)\n", c, pass ? "PASS" : "FAIL", group.size(), seconds);
        for (const auto* r : group) {
            if (!verbose && r->pass) continue;
            std::printf("    %-34s %s %.3e %s %.1e%s%s\n", r->name.c_str(), r->pass ? "ok  " : "FAIL", r->residual,
                        r->lower_bound ? ">" : "<", r->tol, r->error.empty() ? "" : "  ", r->error.c_str());
        }
    }
    std::printf("%d of 11 criteria pass; wall time %.1f s\n", 11 - failed, total);
    return failed == 0 ? 0 : 1;
}
