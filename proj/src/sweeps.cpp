#include "ree2g2/sweeps.hpp"

#include "ree2g2/rng.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ree2g2 {

namespace {

/* decode 0 <= v < 729 into an element with all six coordinates in F3 */
UnipotentElement prime_coord_element(const UnipotentGroup& U, std::uint64_t v) {
    std::array<FqElement, 6> c;
    for (int i = 0; i < 6; ++i) {
        c[static_cast<std::size_t>(i)] = U.tower().from_int(U.level(), static_cast<long>(v % 3));
        v /= 3;
    }
    return U.from_coords(c);
}

bool associative(const UnipotentGroup& U, const UnipotentElement& u, const UnipotentElement& v,
                 const UnipotentElement& w) {
    return U.multiply(U.multiply(u, v), w) == U.multiply(u, U.multiply(v, w));
}

/* sorted Artin-Schreier image {t^3 - t : t in F_q} for binary-search membership */
std::vector<FqElement> artin_schreier_image(const FieldTower& K) {
    std::vector<FqElement> image;
    const std::uint64_t q = fq_size(K);
    image.reserve(q);
    for (std::uint64_t i = 0; i < q; ++i) {
        FqElement t = fq_element_at(K, i);
        image.push_back(K.sub(K.frobenius_pow(t, 1), t));
    }
    std::sort(image.begin(), image.end(), lex_less);
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return image;
}

int eta_from_image(const FieldTower& K, const std::vector<FqElement>& image,
                   const FqElement& x) {
    int found = 0, value = 0;
    for (int e : {-1, 0, 1}) {
        FqElement shifted = K.sub(x, K.mul(K.from_int(Level::fq, e), K.xi()));
        if (std::binary_search(image.begin(), image.end(), shifted, lex_less)) {
            ++found;
            value = e;
        }
    }
    if (found != 1) throw std::logic_error("Artin-Schreier cosets fail to partition F_q");
    return value;
}

std::string coords_text(const FieldTower& K, const FqElement& x) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < K.degree(x.level); ++i) {
        if (i) os << ",";
        os << int(x.c[static_cast<std::size_t>(i)]);
    }
    os << "]";
    return os.str();
}

}  // namespace

const char* exec_mode_name(ExecMode m) {
    return m == ExecMode::serial ? "serial" : "parallel";
}

ExecMode default_exec_mode() {
#if defined(REE2G2_HAVE_OPENMP)
    return ExecMode::parallel;
#else
    return ExecMode::serial;
#endif
}

std::uint64_t fq_size(const FieldTower& K) {
    std::uint64_t s = 1;
    for (int i = 0; i < K.degree(Level::fq); ++i) s *= 3;
    return s;
}

FqElement fq_element_at(const FieldTower& K, std::uint64_t index) {
    std::vector<int> coeffs(static_cast<std::size_t>(K.degree(Level::fq)), 0);
    for (auto& c : coeffs) {
        c = static_cast<int>(index % 3);
        index /= 3;
    }
    return K.from_coeffs(Level::fq, coeffs);
}

SweepResult run_sweep(const Sweep& s, ExecMode mode) {
    SweepResult r;
    r.total = s.count;
    std::uint64_t failures = 0;
    std::uint64_t first = std::numeric_limits<std::uint64_t>::max();

#if defined(REE2G2_HAVE_OPENMP)
    if (mode == ExecMode::parallel) {
        const std::int64_t n = static_cast<std::int64_t>(s.count);
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : failures) reduction(min : first)
        for (std::int64_t i = 0; i < n; ++i) {
            if (!s.pred(static_cast<std::uint64_t>(i))) {
                ++failures;
                first = std::min(first, static_cast<std::uint64_t>(i));
            }
        }
        r.failures = failures;
        if (failures) r.first_failure = static_cast<std::int64_t>(first);
        return r;
    }
#else
    (void)mode;
#endif

    for (std::uint64_t i = 0; i < s.count; ++i) {
        if (!s.pred(i)) {
            ++failures;
            first = std::min(first, i);
        }
    }
    r.failures = failures;
    if (failures) r.first_failure = static_cast<std::int64_t>(first);
    return r;
}

Sweep associativity_generator_sweep(const UnipotentGroup& U) {
    auto gen = [&U](std::uint64_t g) {
        Root r = all_roots()[g % 6];
        long c = (g / 6) ? -1 : 1;
        return U.root_elt(r, U.tower().from_int(U.level(), c));
    };
    Sweep s;
    s.name = "associativity-generators";
    s.count = 12 * 12 * 12;
    s.pred = [&U, gen](std::uint64_t i) {
        return associative(U, gen(i % 12), gen((i / 12) % 12), gen(i / 144));
    };
    s.describe = [](std::uint64_t i) {
        std::ostringstream os;
        os << "generator triple (" << i % 12 << "," << (i / 12) % 12 << "," << i / 144
           << ") in root*sign order";
        return os.str();
    };
    return s;
}

Sweep associativity_prime_coord_sweep(const UnipotentGroup& U, std::uint64_t samples,
                                      std::uint64_t seed) {
    Sweep s;
    s.name = "associativity-prime-coords";
    s.count = samples;
    s.pred = [&U, seed](std::uint64_t i) {
        SplitMix64 rng = SplitMix64::for_index(seed, i);
        UnipotentElement u = prime_coord_element(U, rng.below(729));
        UnipotentElement v = prime_coord_element(U, rng.below(729));
        UnipotentElement w = prime_coord_element(U, rng.below(729));
        return associative(U, u, v, w);
    };
    s.describe = [seed](std::uint64_t i) {
        SplitMix64 rng = SplitMix64::for_index(seed, i);
        std::ostringstream os;
        os << "prime-coordinate triple codes (" << rng.below(729) << "," << rng.below(729)
           << "," << rng.below(729) << ")";
        return os.str();
    };
    return s;
}

Sweep associativity_random_sweep(const UnipotentGroup& U, std::uint64_t samples,
                                 std::uint64_t seed) {
    Sweep s;
    s.name = "associativity-random";
    s.count = samples;
    s.pred = [&U, seed](std::uint64_t i) {
        SplitMix64 rng = SplitMix64::for_index(seed, i);
        UnipotentElement u = U.random_element(rng);
        UnipotentElement v = U.random_element(rng);
        UnipotentElement w = U.random_element(rng);
        return associative(U, u, v, w);
    };
    s.describe = [seed](std::uint64_t i) {
        std::ostringstream os;
        os << "random triple from stream (" << seed << "," << i << ")";
        return os.str();
    };
    return s;
}

Sweep identity_inverse_sweep(const UnipotentGroup& U, std::uint64_t samples,
                             std::uint64_t seed) {
    Sweep s;
    s.name = "identity-inverse";
    s.count = samples;
    s.pred = [&U, seed](std::uint64_t i) {
        SplitMix64 rng = SplitMix64::for_index(seed, i);
        UnipotentElement u = U.random_element(rng);
        UnipotentElement e = U.identity();
        UnipotentElement ui = U.inverse(u);
        return U.multiply(u, e) == u && U.multiply(e, u) == u &&
               U.multiply(u, ui).is_identity() && U.multiply(ui, u).is_identity();
    };
    s.describe = [seed](std::uint64_t i) {
        std::ostringstream os;
        os << "random element from stream (" << seed << "," << i << ")";
        return os.str();
    };
    return s;
}

Sweep endo_homomorphism_sweep(const UnipotentGroup& U, std::uint64_t pairs,
                              std::uint64_t seed) {
    const int n = U.tower().n();
    Sweep s;
    s.name = "endo-homomorphism";
    s.count = pairs;
    s.pred = [&U, n, seed](std::uint64_t i) {
        SplitMix64 rng = SplitMix64::for_index(seed, i);
        UnipotentElement u = U.random_element(rng);
        UnipotentElement v = U.random_element(rng);
        UnipotentElement uv = U.multiply(u, v);
        for (GroupEndo e : {GroupEndo::frobenius(1), GroupEndo::alpha(),
                            GroupEndo::ree_twist(n), GroupEndo::frobenius(2 * n + 1)}) {
            if (U.apply_endo(e, uv) != U.multiply(U.apply_endo(e, u), U.apply_endo(e, v)))
                return false;
        }
        return true;
    };
    s.describe = [seed](std::uint64_t i) {
        std::ostringstream os;
        os << "random pair from stream (" << seed << "," << i << ")";
        return os.str();
    };
    return s;
}

Sweep endo_square_sweep(const UnipotentGroup& U, std::uint64_t reps_per_root,
                        std::uint64_t seed) {
    const int n = U.tower().n();
    Sweep s;
    s.name = "endo-squares";
    s.count = 6 * reps_per_root;
    s.pred = [&U, n, seed](std::uint64_t i) {
        SplitMix64 rng = SplitMix64::for_index(seed, i);
        Root r = all_roots()[i % 6];
        UnipotentElement x = U.root_elt(r, U.tower().random_element(U.level(), rng));
        GroupEndo F = GroupEndo::ree_twist(n);
        GroupEndo A = GroupEndo::alpha();
        bool f_square = U.apply_endo(F, U.apply_endo(F, x)) ==
                        U.apply_endo(GroupEndo::frobenius(2 * n + 1), x);
        bool a_square =
            U.apply_endo(A, U.apply_endo(A, x)) == U.apply_endo(GroupEndo::frobenius(1), x);
        return f_square && a_square;
    };
    s.describe = [seed](std::uint64_t i) {
        std::ostringstream os;
        os << "generator " << root_name(all_roots()[i % 6]) << " with argument from stream ("
           << seed << "," << i << ")";
        return os.str();
    };
    return s;
}

Sweep eta_equivalence_sweep(const FieldTower& K, std::uint64_t samples, std::uint64_t seed) {
    auto image = std::make_shared<const std::vector<FqElement>>(artin_schreier_image(K));
    const bool exhaustive = samples == 0;
    Sweep s;
    s.name = "eta-equivalence";
    s.count = exhaustive ? fq_size(K) : samples;
    s.pred = [&K, image, exhaustive, seed](std::uint64_t i) {
        FqElement x;
        if (exhaustive) {
            x = fq_element_at(K, i);
        } else {
            SplitMix64 rng = SplitMix64::for_index(seed, i);
            x = K.random_element(Level::fq, rng);
        }
        return K.eta(x) == eta_from_image(K, *image, x);
    };
    s.describe = [&K, exhaustive, seed](std::uint64_t i) {
        if (exhaustive) return "x = " + coords_text(K, fq_element_at(K, i));
        std::ostringstream os;
        os << "random x from stream (" << seed << "," << i << ")";
        return os.str();
    };
    return s;
}

Sweep eta_additivity_sweep(const FieldTower& K, std::uint64_t samples, std::uint64_t seed) {
    const bool exhaustive = samples == 0;
    const std::uint64_t q = fq_size(K);
    Sweep s;
    s.name = "eta-additivity";
    s.count = exhaustive ? q * q : samples;
    s.pred = [&K, exhaustive, q, seed](std::uint64_t i) {
        FqElement x, y;
        if (exhaustive) {
            x = fq_element_at(K, i % q);
            y = fq_element_at(K, i / q);
        } else {
            SplitMix64 rng = SplitMix64::for_index(seed, i);
            x = K.random_element(Level::fq, rng);
            y = K.random_element(Level::fq, rng);
        }
        F3 lhs = f3_from_int(K.eta(K.add(x, y)));
        F3 rhs = f3_add(f3_from_int(K.eta(x)), f3_from_int(K.eta(y)));
        return lhs == rhs;
    };
    s.describe = [exhaustive, q, seed](std::uint64_t i) {
        std::ostringstream os;
        if (exhaustive)
            os << "pair codes (" << i % q << "," << i / q << ")";
        else
            os << "random pair from stream (" << seed << "," << i << ")";
        return os.str();
    };
    return s;
}

int eta_bruteforce(const FieldTower& K, const FqElement& x_mid) {
    return eta_from_image(K, artin_schreier_image(K), x_mid);
}

}  // namespace ree2g2
