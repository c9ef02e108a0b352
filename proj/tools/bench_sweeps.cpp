#include "CLI11.hpp"

#include "ree2g2/sweeps.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

#if defined(REE2G2_HAVE_OPENMP)
#include <omp.h>
#endif

using namespace ree2g2;

namespace {

double time_sweep(const Sweep& s, ExecMode m, bool& ok) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult r = run_sweep(s, m);
    ok = r.all_pass();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel timings for the predicate sweeps"};
    std::uint64_t samples = 200000;
    std::uint64_t seed = 1729;
    int n = 1;
    app.add_option("--samples", samples, "sample count for the largest sweep")
        ->capture_default_str();
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--n", n, "tower exponent")->check(CLI::Range(1, 8))->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    FieldTower K(n);
    UnipotentGroup Umid(K, Level::fq);
    UnipotentGroup Utop(K, Level::fq3);

#if defined(REE2G2_HAVE_OPENMP)
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel mode falls back to serial\n");
#endif
    std::printf("n = %d, seed = %llu\n\n", n, static_cast<unsigned long long>(seed));

    std::vector<Sweep> sweeps;
    sweeps.push_back(associativity_prime_coord_sweep(Umid, samples, seed));
    sweeps.push_back(associativity_random_sweep(Utop, samples / 20, seed));
    sweeps.push_back(identity_inverse_sweep(Utop, samples / 20, seed));
    sweeps.push_back(endo_homomorphism_sweep(Utop, samples / 20, seed));
    sweeps.push_back(eta_equivalence_sweep(K, samples / 10, seed));

    std::printf("%-28s %12s %10s %10s %8s %s\n", "sweep", "cases", "serial", "parallel",
                "speedup", "result");
    bool all_ok = true;
    for (const Sweep& s : sweeps) {
        bool ok_s = false, ok_p = false;
        double ts = time_sweep(s, ExecMode::serial, ok_s);
        double tp = time_sweep(s, ExecMode::parallel, ok_p);
        bool ok = ok_s && ok_p;
        all_ok = all_ok && ok;
        std::printf("%-28s %12llu %9.3fs %9.3fs %7.2fx %s\n", s.name.c_str(),
                    static_cast<unsigned long long>(s.count), ts, tp, tp > 0 ? ts / tp : 0.0,
                    ok ? "pass" : "FAIL");
    }
    return all_ok ? 0 : 1;
}
