#pragma once

/* Command-level orchestration: each run_* function builds the requested
 * towers, executes a fixed list of named checks, and returns a RunReport.
 * Nothing here throws on a verification failure — failures are recorded in
 * the report (exit code 1).  UsageError marks bad arguments or unreadable
 * data files and maps to exit code 2 at the CLI boundary.
 */

#include "ree2g2/report.hpp"
#include "ree2g2/sweeps.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace ree2g2 {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommandOptions {
    std::uint64_t seed = 1729;  // fixed default: runs are reproducible by default
    ExecMode mode = default_exec_mode();
    bool allow_large_n = false;  // lifts the n <= MAX_TOWER_N guard
    bool quick = false;  // shrinks the large axiom sweeps (library tests only)
};

/* validates 1 <= n (<= MAX_TOWER_N unless allow_large_n); throws UsageError */
int checked_n(int n, const CommandOptions& opt);

/* tower construction and field invariants at one n */
RunReport run_field_selftest(int n, const CommandOptions& opt);

/* the field- and group-level lemma suite at one n: eta oracle equivalence
 * and additivity, the eta(1) branch value, Y-representative classification,
 * system (S) residuals, Lang-map round trips, and the norm-correspondence
 * table on the unipotent-supported classes */
RunReport run_lemmas(int n, const CommandOptions& opt);

/* the exact character-level suite (n-independent): Fourier orthogonality,
 * descent Gram matrix, almost-character rows, column-order resolution, root
 * extraction against the stored table, and the Digne-Michel search.
 * `overrides` is merged into the builtin data first (strict schema).
 * theta2_sign in {-1, 0, +1}: 0 quantifies over both resolutions of the
 * printed ambiguity, otherwise the vector is forced to one sign. */
RunReport run_verify_exact(const std::optional<nlohmann::json>& overrides, int theta2_sign,
                           const CommandOptions& opt);

/* consistency checks of a class ledger over n in [n_lo, n_hi].  dataset is
 * "curated", "as-printed", or a JSON file path (resolved against the
 * REE2G2_DATA_DIR environment variable when relative).  The as-printed
 * ledger runs in audit mode: its documented discrepancies are reported as
 * "flagged", not "fail". */
RunReport run_classdata(const std::string& dataset, int n_lo, int n_hi,
                        const CommandOptions& opt);

/* group-axiom and endomorphism sweeps at the acceptance sample sizes:
 * exhaustive generator associativity, 10^6 prime-coordinate triples, 10^4
 * top-level triples, 10^4 identity/inverse and homomorphism samples, and the
 * alpha/F square identities at n in {1,2,3} (counts shrink when opt.quick) */
RunReport run_axioms(const CommandOptions& opt);

/* everything above at default parameters, one flat report */
RunReport run_full_suite(const CommandOptions& opt);

}  // namespace ree2g2
