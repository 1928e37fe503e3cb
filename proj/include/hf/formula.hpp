#pragma once

// Boolean formula data model and brute-force truth oracles.
//
// A literal is a nonzero int in DIMACS convention: +v is the positive
// literal of variable v, -v the negative one. Variable indices are
// 1-based. Every clause holds exactly three literals; narrower source
// clauses are padded by repeating the last literal, which preserves
// satisfiability.

#include <array>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hf/errors.hpp"

namespace hf {

using Lit = int;
using Clause = std::array<Lit, 3>;

inline int var_of(Lit l) { return std::abs(l); }
inline bool is_pos(Lit l) { return l > 0; }

struct Cnf {
    int num_vars = 0;
    std::vector<Clause> clauses;

    bool operator==(const Cnf&) const = default;
};

enum class Quantifier { Exists, Forall };

struct QuantifiedVar {
    Quantifier q;
    int var;

    bool operator==(const QuantifiedVar&) const = default;
};

struct Qbf {
    std::vector<QuantifiedVar> prefix;  // outermost first
    Cnf matrix;

    bool operator==(const Qbf&) const = default;
};

// Total or partial map from variable index to a truth value.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int num_vars) : values_(num_vars + 1, -1) {}

    void set(int var, bool value) {
        if (var >= static_cast<int>(values_.size()))
            values_.resize(var + 1, -1);
        values_[var] = value ? 1 : 0;
    }

    // -1 when unset.
    int get(int var) const {
        if (var <= 0 || var >= static_cast<int>(values_.size())) return -1;
        return values_[var];
    }

    bool total_for(int num_vars) const {
        for (int v = 1; v <= num_vars; ++v)
            if (get(v) < 0) return false;
        return true;
    }

    bool operator==(const Assignment& o) const {
        int n = std::max(values_.size(), o.values_.size());
        for (int v = 0; v < n; ++v) {
            int a = v < static_cast<int>(values_.size()) ? values_[v] : -1;
            int b = v < static_cast<int>(o.values_.size()) ? o.values_[v] : -1;
            if (a != b) return false;
        }
        return true;
    }

private:
    std::vector<int8_t> values_;
};

struct OracleCaps {
    int sat_vars = 24;     // exhaustive SAT enumeration limit
    int qbf_prefix = 20;   // recursive QBF expansion limit
};

inline void check_cnf(const Cnf& f) {
    for (const Clause& c : f.clauses)
        for (Lit l : c) {
            if (l == 0) throw std::invalid_argument("zero literal in clause");
            if (var_of(l) > f.num_vars)
                throw std::invalid_argument("literal variable out of range");
        }
}

// True iff every clause has at least one literal satisfied by `a`.
// `a` must be total over the formula's variables.
inline bool eval(const Cnf& f, const Assignment& a) {
    if (!a.total_for(f.num_vars))
        throw std::invalid_argument("partial assignment");
    for (const Clause& c : f.clauses) {
        bool sat = false;
        for (Lit l : c) {
            if (a.get(var_of(l)) == (is_pos(l) ? 1 : 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

struct SatResult {
    bool satisfiable = false;
    std::optional<Assignment> witness;
};

// Exhaustive enumeration of all 2^n assignments. Deliberately has no
// shortcuts: this is the referee the compilers are checked against.
inline SatResult sat_oracle(const Cnf& f, const OracleCaps& caps = {}) {
    if (f.num_vars > caps.sat_vars)
        throw CapError("sat_oracle: variable cap exceeded");
    const uint64_t total = uint64_t{1} << f.num_vars;
    for (uint64_t bits = 0; bits < total; ++bits) {
        Assignment a(f.num_vars);
        for (int v = 1; v <= f.num_vars; ++v)
            a.set(v, (bits >> (v - 1)) & 1);
        if (eval(f, a)) return {true, a};
    }
    return {false, std::nullopt};
}

namespace detail {

inline bool qbf_expand(const Qbf& q, size_t depth, Assignment& a) {
    if (depth == q.prefix.size()) return eval(q.matrix, a);
    const QuantifiedVar& qv = q.prefix[depth];
    a.set(qv.var, false);
    bool lo = qbf_expand(q, depth + 1, a);
    if (qv.q == Quantifier::Exists && lo) return true;
    if (qv.q == Quantifier::Forall && !lo) return false;
    a.set(qv.var, true);
    return qbf_expand(q, depth + 1, a);
}

}  // namespace detail

// Recursive expansion: EXISTS = or over both values, FORALL = and.
inline bool qbf_oracle(const Qbf& q, const OracleCaps& caps = {}) {
    if (static_cast<int>(q.prefix.size()) > caps.qbf_prefix)
        throw CapError("qbf_oracle: prefix cap exceeded");
    Assignment a(q.matrix.num_vars);
    return detail::qbf_expand(q, 0, a);
}

// Validates the Qbf invariants: prefix binds every matrix variable exactly
// once, outermost first; no variable is quantified twice.
inline void check_qbf(const Qbf& q) {
    check_cnf(q.matrix);
    std::vector<bool> bound(q.matrix.num_vars + 1, false);
    for (const QuantifiedVar& qv : q.prefix) {
        if (qv.var <= 0) throw std::invalid_argument("bad quantified variable");
        if (qv.var < static_cast<int>(bound.size()) && bound[qv.var])
            throw std::invalid_argument("variable quantified twice");
        if (qv.var >= static_cast<int>(bound.size()))
            bound.resize(qv.var + 1, false);
        bound[qv.var] = true;
    }
    for (const Clause& c : q.matrix.clauses)
        for (Lit l : c)
            if (!bound[var_of(l)])
                throw std::invalid_argument("free variable in matrix");
}

}  // namespace hf
