#include "CLI11.hpp"

#include "ree2g2/commands.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

/* "3" or "1..3" */
std::pair<int, int> parse_n_range(const std::string& s) {
    auto bad = [&s]() -> std::pair<int, int> {
        throw ree2g2::UsageError("bad n range '" + s + "' (expected N or LO..HI)");
    };
    auto to_int = [&](const std::string& part) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(part, &pos);
        } catch (...) {
            bad();
        }
        if (pos != part.size() || part.empty()) bad();
        return v;
    };
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int v = to_int(s);
        return {v, v};
    }
    return {to_int(s.substr(0, dots)), to_int(s.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
    using namespace ree2g2;

    CLI::App app{"exact verification suite for the Ree groups 2G2(q), q = 3^(2n+1)"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::string format = "json";
    bool timings = false;
    bool serial = false;

    app.add_option("--seed", opts.seed, "RNG seed for the sampled checks")->capture_default_str();
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_flag("--timings", timings,
                 "emit per-check wall times (a non-compared section; off by default so "
                 "identical runs are byte-identical)");
    app.add_flag("--serial", serial, "run sweeps serially even when OpenMP is available");
    app.add_flag("--allow-large-n", opts.allow_large_n, "lift the default n <= 8 cap");

    int n = 1;
    auto* cmd_selftest =
        app.add_subcommand("field-selftest", "field tower construction and invariants");
    cmd_selftest->add_option("--n", n, "tower exponent: q = 3^(2n+1)")->required();

    auto* cmd_lemmas = app.add_subcommand(
        "lemmas", "eta oracle, branch values, system (S), Lang maps, norm correspondence");
    cmd_lemmas->add_option("--n", n, "tower exponent: q = 3^(2n+1)")->required();

    std::string override_path;
    std::string theta2 = "both";
    auto* cmd_verify = app.add_subcommand(
        "verify-exact", "character-level suite: Fourier matrix, descents, roots, Digne-Michel");
    cmd_verify->add_option("--override", override_path,
                           "JSON file merged over the builtin character data");
    cmd_verify->add_option("--theta2-sign", theta2, "resolve the printed +- ambiguity")
        ->check(CLI::IsMember({"both", "+1", "-1"}))
        ->capture_default_str();

    std::string dataset = "curated";
    std::string n_range = "1..3";
    auto* cmd_classdata = app.add_subcommand("classdata", "class-ledger consistency checks");
    cmd_classdata->add_option("--dataset", dataset, "curated | as-printed | JSON file path")
        ->capture_default_str();
    cmd_classdata->add_option("--n-range", n_range, "single n or LO..HI")->capture_default_str();

    auto* cmd_report = app.add_subcommand("report", "the full default suite in one report");

    for (auto* sub : {cmd_selftest, cmd_lemmas, cmd_verify, cmd_classdata, cmd_report})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors are exit 2; --help is success
    }

    if (serial) opts.mode = ExecMode::serial;

    try {
        RunReport rep;
        if (app.got_subcommand(cmd_selftest)) {
            rep = run_field_selftest(n, opts);
        } else if (app.got_subcommand(cmd_lemmas)) {
            rep = run_lemmas(n, opts);
        } else if (app.got_subcommand(cmd_verify)) {
            std::optional<nlohmann::json> ov;
            if (!override_path.empty()) {
                std::ifstream in(override_path);
                if (!in) throw UsageError("cannot read override file: " + override_path);
                try {
                    ov = nlohmann::json::parse(in);
                } catch (const std::exception& e) {
                    throw UsageError("cannot parse override file " + override_path + ": " +
                                     e.what());
                }
            }
            int sign = theta2 == "both" ? 0 : (theta2 == "+1" ? 1 : -1);
            rep = run_verify_exact(ov, sign, opts);
        } else if (app.got_subcommand(cmd_classdata)) {
            auto [lo, hi] = parse_n_range(n_range);
            rep = run_classdata(dataset, lo, hi, opts);
        } else {
            rep = run_full_suite(opts);
        }

        if (format == "json")
            std::cout << rep.to_json(timings).dump(2) << "\n";
        else
            std::cout << rep.render_text(timings);
        return rep.exit_code();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
