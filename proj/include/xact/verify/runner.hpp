#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "xact/rng.hpp"
#include "xact/verify/report.hpp"

namespace xact::verify {

/// One registered check: pure apart from the seeded generator it receives,
/// so results cannot depend on scheduling.
struct Check {
    std::string id;
    std::function<CheckResult(Rng&)> run;
};

inline int worker_count_from_env(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("VERIFY_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

/// Fan out checks across a bounded pool; aggregation order is the check
/// index, never completion order. Each check draws a generator derived from
/// (suite seed, index).
inline Report run_checks(const SuiteConfig& config, const std::vector<Check>& checks) {
    Report report;
    report.config = config;
    report.results.resize(checks.size());
    int workers = worker_count_from_env(config.workers);
    if (workers > static_cast<int>(checks.size())) workers = static_cast<int>(checks.size());
    if (workers < 1) workers = 1;
    auto t0 = std::chrono::steady_clock::now();
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= checks.size()) break;
            auto c0 = std::chrono::steady_clock::now();
            Rng rng = Rng(config.seed).spawn(i);
            CheckResult r;
            try {
                r = checks[i].run(rng);
            } catch (const std::exception& e) {
                r = CheckResult::fail(checks[i].id, Json{{"exception", e.what()}});
            }
            r.id = checks[i].id;
            r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - c0)
                               .count();
            report.results[i] = std::move(r);
        }
    };
    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    report.total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    return report;
}

}  // namespace xact::verify
