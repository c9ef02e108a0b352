#pragma once

/* Run reports: a flat list of named checks with pass/fail/flagged status and
 * JSON witness details.  "flagged" marks an expected discrepancy surfaced in
 * audit mode (it does not fail the run); "fail" does.  Rendering is
 * deterministic: identical inputs give byte-identical JSON and text.  Wall
 * times are collected per check but live in a segregated section that is
 * only emitted on request, so the default output is comparable byte-for-byte
 * across runs.
 */

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ree2g2 {

enum class CheckStatus : std::uint8_t { pass, fail, flagged };
const char* check_status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    nlohmann::json details;  // witness data; must be deterministic
    double seconds = 0.0;    // excluded from the comparison payload
};

struct RunReport {
    std::string command;
    nlohmann::json params;
    std::vector<CheckResult> checks;

    /* 0 when no check failed; flagged checks do not fail the run */
    int exit_code() const;
    std::size_t count(CheckStatus s) const;
    const CheckResult* find(const std::string& name) const;

    void add(CheckResult c) { checks.push_back(std::move(c)); }
    /* absorb another report's checks under "<prefix>/<name>" */
    void absorb(const RunReport& sub, const std::string& prefix);

    nlohmann::json to_json(bool include_timings = false) const;
    std::string render_text(bool include_timings = false) const;
};

/* runs fn, stamps elapsed wall time, and converts an escaped exception into
   a failed check with the exception text as witness */
CheckResult timed_check(const std::string& name,
                        const std::function<CheckResult()>& fn);

}  // namespace ree2g2
