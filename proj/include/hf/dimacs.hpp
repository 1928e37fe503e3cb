#pragma once

// DIMACS CNF and QDIMACS readers/writers.
//
// Reading normalizes whitespace and drops comments; clauses of one or two
// literals are padded to three by repeating the last literal, wider
// clauses are rejected. Writers emit a canonical form so that
// parse(serialize(f)) == f.

#include <sstream>
#include <string>
#include <vector>

#include "hf/formula.hpp"

namespace hf {

namespace detail {

struct DimacsTokens {
    int num_vars = 0;
    int declared_clauses = 0;
    std::vector<std::vector<int>> clause_ints;
    std::vector<std::pair<char, std::vector<int>>> quant_lines;  // 'e' or 'a'
};

inline DimacsTokens scan_dimacs(const std::string& text, bool allow_quant) {
    DimacsTokens out;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<int> pending;  // literals of a clause spanning lines
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first[0] == 'c') continue;
        if (first == "p") {
            if (header_seen) throw ParseError("duplicate header");
            std::string fmt;
            if (!(ls >> fmt >> out.num_vars >> out.declared_clauses) || fmt != "cnf")
                throw ParseError("malformed header, expected 'p cnf V C'");
            if (out.num_vars < 0 || out.declared_clauses < 0)
                throw ParseError("malformed header, negative counts");
            header_seen = true;
            continue;
        }
        if (!header_seen) throw ParseError("clause before header");
        if (allow_quant && (first == "e" || first == "a")) {
            std::vector<int> vars;
            int v;
            bool terminated = false;
            while (ls >> v) {
                if (v == 0) { terminated = true; break; }
                vars.push_back(v);
            }
            if (!terminated) throw ParseError("quantifier line not 0-terminated");
            if (!out.clause_ints.empty())
                throw ParseError("quantifier line after clauses");
            out.quant_lines.emplace_back(first[0], std::move(vars));
            continue;
        }
        // integer clause data; a clause ends at 0 and may span lines
        std::istringstream rest(line);
        int v;
        while (rest >> v) {
            if (v == 0) {
                out.clause_ints.push_back(pending);
                pending.clear();
            } else {
                pending.push_back(v);
            }
        }
        if (rest.fail() && !rest.eof()) throw ParseError("malformed clause line");
    }
    if (!header_seen) throw ParseError("missing 'p cnf' header");
    if (!pending.empty()) throw ParseError("unterminated clause");
    return out;
}

inline Clause pad_clause(const std::vector<int>& lits, int num_vars) {
    if (lits.empty()) throw ParseError("empty clause cannot be padded to width 3");
    if (lits.size() > 3) throw ParseError("clause arity > 3");
    for (int l : lits)
        if (var_of(l) < 1 || var_of(l) > num_vars)
            throw ParseError("variable index out of range");
    Clause c{};
    for (size_t i = 0; i < 3; ++i)
        c[i] = lits[std::min(i, lits.size() - 1)];
    return c;
}

}  // namespace detail

inline Cnf parse_cnf(const std::string& text) {
    auto toks = detail::scan_dimacs(text, /*allow_quant=*/false);
    Cnf f;
    f.num_vars = toks.num_vars;
    for (const auto& lits : toks.clause_ints)
        f.clauses.push_back(detail::pad_clause(lits, f.num_vars));
    if (static_cast<int>(f.clauses.size()) != toks.declared_clauses)
        throw ParseError("clause count mismatch");
    return f;
}

inline Qbf parse_qbf(const std::string& text) {
    auto toks = detail::scan_dimacs(text, /*allow_quant=*/true);
    Qbf q;
    q.matrix.num_vars = toks.num_vars;
    for (const auto& [kind, vars] : toks.quant_lines)
        for (int v : vars) {
            if (v < 1 || v > toks.num_vars)
                throw ParseError("quantified variable out of range");
            q.prefix.push_back({kind == 'e' ? Quantifier::Exists : Quantifier::Forall, v});
        }
    for (const auto& lits : toks.clause_ints)
        q.matrix.clauses.push_back(detail::pad_clause(lits, q.matrix.num_vars));
    if (static_cast<int>(q.matrix.clauses.size()) != toks.declared_clauses)
        throw ParseError("clause count mismatch");
    try {
        check_qbf(q);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return q;
}

inline std::string serialize_cnf(const Cnf& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const Clause& c : f.clauses)
        out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

inline std::string serialize_qbf(const Qbf& q) {
    std::ostringstream out;
    out << "p cnf " << q.matrix.num_vars << ' ' << q.matrix.clauses.size() << '\n';
    // one variable per quantifier line keeps the prefix order explicit
    for (const QuantifiedVar& qv : q.prefix)
        out << (qv.q == Quantifier::Exists ? 'e' : 'a') << ' ' << qv.var << " 0\n";
    for (const Clause& c : q.matrix.clauses)
        out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

}  // namespace hf
