#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xact/json_io.hpp"

namespace xact::verify {

struct CheckResult {
    std::string id;
    enum class Status { Pass, Fail, Skipped } status = Status::Pass;
    Json witness;  // nonempty exactly when the check fails
    long long runtime_ms = 0;

    static CheckResult pass(std::string id) { return CheckResult{std::move(id), Status::Pass, {}, 0}; }
    static CheckResult fail(std::string id, Json witness) {
        CheckResult r{std::move(id), Status::Pass, {}, 0};
        r.status = Status::Fail;
        r.witness = std::move(witness);
        return r;
    }
    static CheckResult skipped(std::string id, const std::string& why) {
        CheckResult r{std::move(id), Status::Pass, {}, 0};
        r.status = Status::Skipped;
        r.witness = Json{{"skipped", why}};
        return r;
    }
};

inline const char* status_name(CheckResult::Status s) {
    switch (s) {
        case CheckResult::Status::Pass: return "pass";
        case CheckResult::Status::Fail: return "fail";
        case CheckResult::Status::Skipped: return "skipped";
    }
    return "?";
}

/// Suite run configuration; everything that feeds the deterministic body.
struct SuiteConfig {
    std::string suite;
    std::string field = "Q";  // Q | gf2 | gf3 | gf5
    int n = 0;                // 0: suite default bound
    std::vector<std::string> lambda_samples;
    std::uint64_t seed = 0;
    std::uint32_t p = 2;
    int d = 2;
    int level_m = 1;
    int level_k = 1;
    int workers = 0;  // 0: take VERIFY_WORKERS, else 1; never part of the body

    Json body_json() const {
        Json j;
        j["suite"] = suite;
        j["field"] = field;
        j["n"] = n;
        j["lambda_samples"] = lambda_samples;
        j["seed"] = seed;
        j["p"] = p;
        j["d"] = d;
        j["level"] = Json{{"m", level_m}, {"k", level_k}};
        return j;
    }
};

/// Report = deterministic body + segregated timing. Identical config and seed
/// must give a byte-identical body at any worker count.
struct Report {
    SuiteConfig config;
    std::vector<CheckResult> results;
    long long total_ms = 0;

    std::size_t count(CheckResult::Status s) const {
        std::size_t n = 0;
        for (const auto& r : results)
            if (r.status == s) ++n;
        return n;
    }

    bool all_passed() const { return count(CheckResult::Status::Fail) == 0; }
    int exit_code() const { return all_passed() ? 0 : 1; }

    Json body_json() const {
        Json j;
        j["suite"] = config.suite;
        j["config"] = config.body_json();
        Json rs = Json::array();
        for (const auto& r : results) {
            Json rj;
            rj["id"] = r.id;
            rj["status"] = status_name(r.status);
            rj["witness"] = r.witness.is_null() ? Json(nullptr) : r.witness;
            rs.push_back(rj);
        }
        j["results"] = rs;
        j["summary"] = Json{{"pass", count(CheckResult::Status::Pass)},
                            {"fail", count(CheckResult::Status::Fail)},
                            {"skipped", count(CheckResult::Status::Skipped)}};
        return j;
    }

    Json full_json() const {
        Json j;
        j["body"] = body_json();
        Json per = Json::array();
        for (const auto& r : results) per.push_back(r.runtime_ms);
        j["timing"] = Json{{"total_ms", total_ms}, {"per_check_ms", per}};
        return j;
    }

    std::string body_dump() const { return body_json().dump(2); }

    std::string markdown_summary() const {
        std::string md = "# " + config.suite + "\n\n";
        md += "| check | status |\n|---|---|\n";
        for (const auto& r : results) {
            md += "| " + r.id + " | " + status_name(r.status) + " |\n";
        }
        md += "\n**pass " + std::to_string(count(CheckResult::Status::Pass)) + ", fail " +
              std::to_string(count(CheckResult::Status::Fail)) + ", skipped " +
              std::to_string(count(CheckResult::Status::Skipped)) + "**\n";
        for (const auto& r : results)
            if (r.status == CheckResult::Status::Fail)
                md += "\n- witness for `" + r.id + "`: `" + r.witness.dump() + "`\n";
        return md;
    }
};

}  // namespace xact::verify
