// Acceptance suite: runs every verification criterion and prints one
// pass/fail line each. The suite executes three times - cold cache at the
// default thread count, warm cache at the default count, warm cache on one
// thread - and the reports of all three runs must be bit-identical
// (criterion 14).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "qdv/parallel.hpp"
#include "qdv/verify.hpp"

int main() {
    using namespace qdv;
    const auto t0 = std::chrono::steady_clock::now();
    const int threads = max_threads();

    const std::filesystem::path cache = std::filesystem::current_path() / "acceptance_cache";
    std::filesystem::remove_all(cache);  // guarantee a cold first run

    RunConfig cfg;
    cfg.cache_dir = cache.string();

    std::vector<CriterionResult> results;
    std::string cold_fp, warm_fp, single_fp;
    try {
        results = run_acceptance_suite(cfg);  // cold cache
        cold_fp = determinism_fingerprint(results);

        warm_fp = determinism_fingerprint(run_acceptance_suite(cfg));  // warm cache

        RunConfig single = cfg;
        single.threads = 1;
        single_fp = determinism_fingerprint(run_acceptance_suite(single));
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 1;
    }

    CriterionResult det;
    det.id = 14;
    det.title = "suite is bit-identical across thread counts and cache-cold/warm runs";
    det.pass = cold_fp == warm_fp && warm_fp == single_fp;
    det.reports.push_back({"determinism", "fingerprint-compare", "{runs:3}",
                           det.pass ? "identical" : "DIFFERENT", "identical", det.pass, 0.0,
                           cfg.seed});
    results.push_back(det);

    bool ok = true;
    for (const auto& c : results) {
        ok &= c.pass;
        std::printf("[%s] criterion %2d: %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str());
        if (!c.pass)
            for (const auto& r : c.reports)
                if (!r.pass)
                    std::printf("       %s: value %s, expected %s\n", r.claim.c_str(),
                                r.value.c_str(), r.expected.c_str());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s (%zu criteria, %.1f s, %d threads)\n", ok ? "ALL PASS" : "FAILURES",
                results.size(), secs, threads);
    std::filesystem::remove_all(cache);
    return ok ? 0 : 1;
}
