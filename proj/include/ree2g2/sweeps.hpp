#pragma once

/* Bulk predicate sweeps: group-axiom and field-lemma checks quantified over
 * exhaustive or seeded-random index ranges.  A Sweep names a pure predicate
 * on an index; run_sweep evaluates it over [0, count) either serially or
 * with OpenMP.  Every index derives its own RNG stream from (seed, index),
 * so the two execution modes produce identical results and any failure is
 * reproducible from the seed and the reported index alone.
 */

#include "ree2g2/chevalley.hpp"
#include "ree2g2/finitefield.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace ree2g2 {

enum class ExecMode : std::uint8_t { serial, parallel };
const char* exec_mode_name(ExecMode m);
/* parallel when compiled with OpenMP, serial otherwise */
ExecMode default_exec_mode();

struct SweepResult {
    std::uint64_t total = 0;
    std::uint64_t failures = 0;
    std::int64_t first_failure = -1;  // smallest failing index, -1 when none

    bool all_pass() const { return failures == 0; }
    bool operator==(const SweepResult&) const = default;
};

struct Sweep {
    std::string name;
    std::uint64_t count = 0;
    std::function<bool(std::uint64_t)> pred;             // thread-safe, pure
    std::function<std::string(std::uint64_t)> describe;  // witness text, may be null
};

SweepResult run_sweep(const Sweep& s, ExecMode mode);

/* (uv)w = u(vw) for all triples of generators x_r(c), r over the six roots,
   c in {1, -1}; 12^3 triples, exhaustive. */
Sweep associativity_generator_sweep(const UnipotentGroup& U);

/* (uv)w = u(vw) for random triples whose coordinates all lie in the prime
   field F3 embedded in the group's coefficient field. */
Sweep associativity_prime_coord_sweep(const UnipotentGroup& U, std::uint64_t samples,
                                      std::uint64_t seed);

/* (uv)w = u(vw) for uniformly random triples at the group's own level. */
Sweep associativity_random_sweep(const UnipotentGroup& U, std::uint64_t samples,
                                 std::uint64_t seed);

/* u*1 = 1*u = u and u*u^{-1} = u^{-1}*u = 1 on random elements. */
Sweep identity_inverse_sweep(const UnipotentGroup& U, std::uint64_t samples,
                             std::uint64_t seed);

/* e(uv) = e(u)e(v) for e in {F_1, alpha, F, F^2} on random pairs. */
Sweep endo_homomorphism_sweep(const UnipotentGroup& U, std::uint64_t pairs,
                              std::uint64_t seed);

/* alpha(alpha(x)) = F_1(x) and F(F(x)) = F_{2n+1}(x) on every generator
   x = x_r(t) with random t; index runs over roots x repetitions. */
Sweep endo_square_sweep(const UnipotentGroup& U, std::uint64_t reps_per_root,
                        std::uint64_t seed);

/* Trace-based eta equals the brute-force Artin-Schreier decomposition oracle.
   samples == 0 sweeps all of F_q exhaustively. */
Sweep eta_equivalence_sweep(const FieldTower& K, std::uint64_t samples, std::uint64_t seed);

/* eta(x + y) = eta(x) + eta(y) as elements of F3.
   samples == 0 sweeps all pairs exhaustively. */
Sweep eta_additivity_sweep(const FieldTower& K, std::uint64_t samples, std::uint64_t seed);

/* The oracle behind eta_equivalence_sweep, exposed for direct tests: the
   unique e in {-1, 0, 1} with x - e*xi in the Artin-Schreier image
   {t^3 - t : t in F_q}.  Throws std::logic_error if not exactly one e fits
   (impossible for true field data: the image has index 3 and xi has nonzero
   trace, so the three shifted cosets partition F_q). */
int eta_bruteforce(const FieldTower& K, const FqElement& x_mid);

/* x-th element of F_q in coefficient-lexicographic order, x < 3^deg(F_q).
   Shared by the exhaustive sweeps and their witness printers. */
FqElement fq_element_at(const FieldTower& K, std::uint64_t index);

/* 3^deg(F_q) as a uint64 (fits for every supported n). */
std::uint64_t fq_size(const FieldTower& K);

}  // namespace ree2g2
