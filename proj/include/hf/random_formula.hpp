#pragma once

// Deterministic random formula generation shared by tests and the
// `verify` command. The generator is pinned here rather than delegated to
// <random> so that a seed produces the same instance sequence on every
// platform:
//
//   - Rng is splitmix64.
//   - A literal is drawn as: variable uniform in [1, n] via below(),
//     polarity from one further bit.
//   - A clause is three literal draws; clauses containing both v and -v
//     (tautologies) are rejected and redrawn whole.
//   - A QBF prefix quantifies every variable 1..n in order, each
//     quantifier EXISTS or FORALL from one bit.

#include <cstdint>

#include "hf/formula.hpp"

namespace hf {

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound) by rejection; bound must be nonzero
    uint64_t below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    uint64_t state_;
};

inline Clause random_clause(Rng& rng, int num_vars) {
    while (true) {
        Clause c;
        for (int i = 0; i < 3; ++i) {
            int v = 1 + static_cast<int>(rng.below(num_vars));
            c[i] = rng.below(2) ? v : -v;
        }
        bool tautological = false;
        for (int i = 0; i < 3 && !tautological; ++i)
            for (int j = 0; j < 3; ++j)
                if (c[i] == -c[j]) tautological = true;
        if (!tautological) return c;
    }
}

inline Cnf random_cnf(Rng& rng, int num_vars, int num_clauses) {
    Cnf f;
    f.num_vars = num_vars;
    for (int i = 0; i < num_clauses; ++i)
        f.clauses.push_back(random_clause(rng, num_vars));
    return f;
}

inline Qbf random_qbf(Rng& rng, int num_vars, int num_clauses) {
    Qbf q;
    q.matrix = random_cnf(rng, num_vars, num_clauses);
    for (int v = 1; v <= num_vars; ++v)
        q.prefix.push_back({rng.below(2) ? Quantifier::Exists : Quantifier::Forall, v});
    return q;
}

}  // namespace hf
