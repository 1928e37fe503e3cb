#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hf/dimacs.hpp"
#include "hf/formula.hpp"
#include "hf/random_formula.hpp"

using namespace hf;

namespace {

Assignment make_assignment(std::initializer_list<bool> vals) {
    Assignment a;
    int v = 1;
    for (bool b : vals) a.set(v++, b);
    return a;
}

// Independent double enumeration used to referee sat_oracle: walks the
// assignment space in the opposite bit order through eval() only.
bool any_satisfying(const Cnf& f) {
    const uint64_t total = uint64_t{1} << f.num_vars;
    for (uint64_t i = 0; i < total; ++i) {
        uint64_t bits = total - 1 - i;
        Assignment a(f.num_vars);
        for (int v = 1; v <= f.num_vars; ++v)
            a.set(v, (bits >> (f.num_vars - v)) & 1);
        if (eval(f, a)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("parse_cnf pads narrow clauses by repeating the last literal") {
    Cnf f = parse_cnf("p cnf 2 1\n1 -2 0\n");
    CHECK(f.num_vars == 2);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0] == Clause{1, -2, -2});

    Cnf g = parse_cnf("p cnf 1 2\n1 0\n-1 0\n");
    REQUIRE(g.clauses.size() == 2);
    CHECK(g.clauses[0] == Clause{1, 1, 1});
    CHECK(g.clauses[1] == Clause{-1, -1, -1});
}

TEST_CASE("parse_cnf rejects malformed input") {
    CHECK_THROWS_AS(parse_cnf("p cnf 1 1\n1 2 0\n"), ParseError);     // var out of range
    CHECK_THROWS_AS(parse_cnf("p dnf 1 1\n1 0\n"), ParseError);       // bad header
    CHECK_THROWS_AS(parse_cnf("p cnf 1 2\n1 0\n"), ParseError);       // count mismatch
    CHECK_THROWS_AS(parse_cnf("p cnf 2 1\n1 2 1 2 0\n"), ParseError); // arity > 3
    CHECK_THROWS_AS(parse_cnf("p cnf 1 1\n0\n"), ParseError);         // empty clause
    CHECK_THROWS_AS(parse_cnf("1 0\n"), ParseError);                  // no header
    CHECK_THROWS_AS(parse_cnf("p cnf 1 1\n1\n"), ParseError);         // unterminated
}

TEST_CASE("parse_cnf tolerates comments and multi-line clauses") {
    Cnf f = parse_cnf("c a comment\np cnf 3 1\nc mid\n1\n2 3 0\n");
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0] == Clause{1, 2, 3});
}

TEST_CASE("parse_qbf reads prefix in source order") {
    Qbf q = parse_qbf("p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n");
    REQUIRE(q.prefix.size() == 2);
    CHECK(q.prefix[0] == QuantifiedVar{Quantifier::Forall, 1});
    CHECK(q.prefix[1] == QuantifiedVar{Quantifier::Exists, 2});
    CHECK(q.matrix.clauses.size() == 2);
}

TEST_CASE("parse_qbf rejects free and doubly-quantified variables") {
    // matrix mentions unquantified var 2
    CHECK_THROWS_AS(parse_qbf("p cnf 2 1\ne 1 0\n1 2 0\n"), ParseError);
    // empty prefix with nonempty matrix
    CHECK_THROWS_AS(parse_qbf("p cnf 1 1\n1 0\n"), ParseError);
    // quantified twice
    CHECK_THROWS_AS(parse_qbf("p cnf 1 1\ne 1 0\na 1 0\n1 0\n"), ParseError);
    // quantifier line after clauses
    CHECK_THROWS_AS(parse_qbf("p cnf 2 1\ne 1 0\n1 0\ne 2 0\n"), ParseError);
}

TEST_CASE("eval checks clause satisfaction under a total assignment") {
    Cnf f{3, {{1, 2, -3}}};
    CHECK(eval(f, make_assignment({true, false, true})));
    Cnf g{1, {{1, 1, 1}}};
    CHECK_FALSE(eval(g, make_assignment({false})));
    Cnf empty{2, {}};
    CHECK(eval(empty, make_assignment({false, false})));  // vacuous conjunction
    CHECK_THROWS_AS(eval(f, make_assignment({true})), std::invalid_argument);
}

TEST_CASE("sat_oracle by exhaustive enumeration") {
    // (x1)(~x1) padded: contradiction
    Cnf contra = parse_cnf("p cnf 1 2\n1 0\n-1 0\n");
    CHECK_FALSE(sat_oracle(contra).satisfiable);

    Cnf triv{3, {{1, 2, 3}}};
    auto r = sat_oracle(triv);
    CHECK(r.satisfiable);
    REQUIRE(r.witness.has_value());
    CHECK(eval(triv, *r.witness));

    // enumerated by hand: x1=F, x2=F satisfies all three clauses
    Cnf mixed{2, {{1, -2, -2}, {-1, -1, 2}, {-1, -2, -2}}};
    auto m = sat_oracle(mixed);
    CHECK(m.satisfiable);
    CHECK(eval(mixed, *m.witness));

    Cnf big{30, {}};
    CHECK_THROWS_AS(sat_oracle(big), CapError);
}

TEST_CASE("qbf_oracle by recursive expansion") {
    // forall x exists y: (x|y)(~x|~y)  -- y := ~x works
    Qbf q1 = parse_qbf("p cnf 2 2\na 1 0\ne 2 0\n1 2 2 0\n-1 -2 -2 0\n");
    CHECK(qbf_oracle(q1));

    // exists x forall y: same matrix -- no single x works
    Qbf q2 = parse_qbf("p cnf 2 2\ne 1 0\na 2 0\n1 2 2 0\n-1 -2 -2 0\n");
    CHECK_FALSE(qbf_oracle(q2));

    Qbf q3 = parse_qbf("p cnf 1 1\ne 1 0\n1 1 1 0\n");
    CHECK(qbf_oracle(q3));

    Qbf deep;
    deep.matrix.num_vars = 24;
    for (int v = 1; v <= 24; ++v) deep.prefix.push_back({Quantifier::Exists, v});
    CHECK_THROWS_AS(qbf_oracle(deep), CapError);
}

TEST_CASE("sat_oracle agrees with independent double enumeration, n <= 10") {
    Rng rng(20240917);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(rng.below(10));
        int m = 1 + static_cast<int>(rng.below(6));
        Cnf f = random_cnf(rng, n, m);
        CHECK(sat_oracle(f).satisfiable == any_satisfying(f));
    }
}

TEST_CASE("qbf_oracle on all-exists prefix equals sat_oracle on the matrix") {
    Rng rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(rng.below(8));
        int m = 1 + static_cast<int>(rng.below(5));
        Cnf f = random_cnf(rng, n, m);
        Qbf q;
        q.matrix = f;
        for (int v = 1; v <= n; ++v) q.prefix.push_back({Quantifier::Exists, v});
        CHECK(qbf_oracle(q) == sat_oracle(f).satisfiable);
    }
}

TEST_CASE("DIMACS round-trips") {
    Rng rng(1234);
    for (int iter = 0; iter < 100; ++iter) {
        Cnf f = random_cnf(rng, 1 + static_cast<int>(rng.below(6)),
                           1 + static_cast<int>(rng.below(8)));
        CHECK(parse_cnf(serialize_cnf(f)) == f);
        Qbf q = random_qbf(rng, 1 + static_cast<int>(rng.below(5)),
                           1 + static_cast<int>(rng.below(6)));
        CHECK(parse_qbf(serialize_qbf(q)) == q);
    }
}

TEST_CASE("eval is monotone in the set of satisfied literals per clause") {
    // flipping one variable of a satisfying assignment can only break
    // clauses that relied on it; adding satisfied literals never hurts
    Rng rng(5150);
    for (int iter = 0; iter < 100; ++iter) {
        int n = 1 + static_cast<int>(rng.below(6));
        Cnf f = random_cnf(rng, n, 1 + static_cast<int>(rng.below(5)));
        Assignment a(n);
        for (int v = 1; v <= n; ++v) a.set(v, rng.below(2) == 1);
        // grow the satisfied-literal set: duplicate a clause with one
        // literal replaced by a literal already true under `a`
        if (!f.clauses.empty() && eval(f, a)) {
            Cnf g = f;
            for (auto& c : g.clauses)
                for (auto& l : c)
                    if (a.get(var_of(l)) != (is_pos(l) ? 1 : 0)) {
                        // make this literal agree with `a`
                        l = a.get(var_of(l)) == 1 ? var_of(l) : -var_of(l);
                    }
            CHECK(eval(g, a));
        }
    }
}
