#include "ree2g2/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ree2g2 {

using json = nlohmann::json;

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::flagged: return "flagged";
    }
    return "?";
}

int RunReport::exit_code() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return 1;
    return 0;
}

std::size_t RunReport::count(CheckStatus s) const {
    std::size_t k = 0;
    for (const auto& c : checks)
        if (c.status == s) ++k;
    return k;
}

const CheckResult* RunReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

void RunReport::absorb(const RunReport& sub, const std::string& prefix) {
    for (const auto& c : sub.checks) {
        CheckResult copy = c;
        copy.name = prefix + "/" + c.name;
        checks.push_back(std::move(copy));
    }
}

json RunReport::to_json(bool include_timings) const {
    json out;
    out["command"] = command;
    out["params"] = params;
    json list = json::array();
    for (const auto& c : checks) {
        json e;
        e["name"] = c.name;
        e["status"] = check_status_name(c.status);
        e["details"] = c.details;
        list.push_back(std::move(e));
    }
    out["checks"] = std::move(list);
    out["summary"] = {{"pass", count(CheckStatus::pass)},
                      {"fail", count(CheckStatus::fail)},
                      {"flagged", count(CheckStatus::flagged)}};
    out["exit_code"] = exit_code();
    if (include_timings) {
        json t;
        double total = 0.0;
        for (const auto& c : checks) {
            t[c.name] = c.seconds;
            total += c.seconds;
        }
        t["_total"] = total;
        out["timings"] = std::move(t);
    }
    return out;
}

std::string RunReport::render_text(bool include_timings) const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    os << "params: " << params.dump() << "\n";
    for (const auto& c : checks) {
        os << "[" << check_status_name(c.status) << "] " << c.name << "\n";
        if (!c.details.is_null() && !(c.details.is_object() && c.details.empty()))
            os << "    " << c.details.dump() << "\n";
    }
    os << "summary: " << count(CheckStatus::pass) << " pass, " << count(CheckStatus::fail)
       << " fail, " << count(CheckStatus::flagged) << " flagged\n";
    if (include_timings) {
        os << "timings (seconds, not compared):\n";
        double total = 0.0;
        char buf[64];
        for (const auto& c : checks) {
            std::snprintf(buf, sizeof buf, "%.3f", c.seconds);
            os << "    " << c.name << ": " << buf << "\n";
            total += c.seconds;
        }
        std::snprintf(buf, sizeof buf, "%.3f", total);
        os << "    total: " << buf << "\n";
    }
    os << "exit: " << exit_code() << "\n";
    return os.str();
}

CheckResult timed_check(const std::string& name, const std::function<CheckResult()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult c;
    try {
        c = fn();
    } catch (const std::exception& e) {
        c.status = CheckStatus::fail;
        c.details = json{{"exception", e.what()}};
    }
    c.name = name;
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

}  // namespace ree2g2
