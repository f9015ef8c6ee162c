#include "mkfa/harness.hpp"
#include "mkfa/logic.hpp"

#include <doctest.h>

using namespace mkfa;

namespace {

const TruthValue k1 = parse_truth("<3/10,1/5,2/5,1/10>");
const Alphabet AB({"a", "b"});

bool mso_equal(const MsoPtr& x, const MsoPtr& y) {
    if (x->kind != y->kind) return false;
    if (x->letter != y->letter || x->v1 != y->v1 || x->v2 != y->v2) return false;
    if ((x->a == nullptr) != (y->a == nullptr)) return false;
    if ((x->b == nullptr) != (y->b == nullptr)) return false;
    if (x->a && !mso_equal(x->a, y->a)) return false;
    if (x->b && !mso_equal(x->b, y->b)) return false;
    return true;
}

bool mk_equal(const MkPtr& x, const MkPtr& y) {
    if (x->kind != y->kind) return false;
    if (x->kind == MkFormula::Kind::Const) return x->k == y->k;
    if (x->kind == MkFormula::Kind::Bool) return mso_equal(x->boolean, y->boolean);
    if (x->var != y->var) return false;
    if ((x->b == nullptr) != (y->b == nullptr)) return false;
    if (!mk_equal(x->a, y->a)) return false;
    if (x->b && !mk_equal(x->b, y->b)) return false;
    return true;
}

} // namespace

TEST_CASE("parsing the concrete syntax") {
    MsoPtr f = parse_mso("exists x . P_a(x)");
    CHECK(f->kind == MsoFormula::Kind::ExistsFO);
    CHECK(f->a->kind == MsoFormula::Kind::Pred);

    MkPtr s = parse_mk("sum x . (<1,0,0,0>)");
    CHECK(s->kind == MkFormula::Kind::SumFO);
    CHECK(s->a->kind == MkFormula::Kind::Const);

    // first(y) expands to a bounded-quantifier shape; check it semantically
    MsoPtr first_y = parse_mso("first(y)");
    Word w = {0, 1};
    CHECK(mso_satisfies(AB, w, Assignment{}.with_fo("y", 0), first_y));
    CHECK_FALSE(mso_satisfies(AB, w, Assignment{}.with_fo("y", 1), first_y));

    CHECK_THROWS_AS(parse_mso("exists x . x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mso("P_a(X)"), std::invalid_argument);  // case convention
    CHECK_THROWS_AS(parse_mk("prod X . <1,0,0,0>"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mk("(true | <1,0,0,0>)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mk("(true (+) true (*) true)"), std::invalid_argument);
}

TEST_CASE("rendering reparses to the same tree") {
    const char* samples[] = {
        "true",
        "((P_a(x) | P_b(y)) (+) <1/2,1/4,1/8,1/8>)",
        "(exists X . (forall x . (x in X)))",
        "(sum X1 . ((partition(X1)) (*) (prod x . ((x in X1 -> <3/10,1/5,2/5,1/10>)))))",
        "!(x <= y)",
    };
    for (const char* s : samples) {
        MkPtr f = parse_mk(s);
        CHECK(mk_equal(f, parse_mk(mk_str(f))));
    }
}

TEST_CASE("satisfaction on small words") {
    Word ab = {0, 1};
    CHECK(mso_satisfies(AB, ab, {}, parse_mso("true")));
    CHECK(mso_satisfies(AB, ab, {}, parse_mso("exists x . P_b(x)")));
    CHECK_FALSE(mso_satisfies(AB, ab, {}, parse_mso("exists x . (first(x) & P_b(x))")));
    CHECK_THROWS_AS(mso_satisfies(AB, ab, {}, parse_mso("P_a(x)")), std::invalid_argument);
}

TEST_CASE("subset enumeration order") {
    auto s0 = subsets_ascending(0);
    REQUIRE(s0.size() == 1);
    CHECK(s0[0].empty());

    auto s2 = subsets_ascending(2);
    REQUIRE(s2.size() == 4);
    CHECK(s2[0] == std::vector<std::size_t>{});
    CHECK(s2[1] == std::vector<std::size_t>{0});
    CHECK(s2[2] == std::vector<std::size_t>{0, 1});
    CHECK(s2[3] == std::vector<std::size_t>{1});

    for (std::size_t n = 0; n <= 4; ++n) {
        auto s = subsets_ascending(n);
        CHECK(s.size() == (std::size_t{1} << n));
        CHECK(s[0].empty()); // the empty set always comes first
    }
}

TEST_CASE("direct MK semantics") {
    MkPtr c = parse_mk("<3/10,1/5,2/5,1/10>");
    CHECK(mk_eval(AB, {}, {0, 1}, {}, c) == k1);

    // prod over all positions of a fully covering set variable
    MkPtr p = parse_mk("prod x . ((x in X1 -> <3/10,1/5,2/5,1/10>))");
    Word w = {0, 0, 1};
    Assignment s = Assignment{}.with_so("X1", {0, 1, 2});
    TruthValue three[] = {k1, k1, k1};
    CHECK(mk_eval(AB, {"X1"}, w, s, p) == conj_fold(three));

    // empty product is ONE, empty sum is ZERO
    CHECK(mk_eval(AB, {"X1"}, {}, Assignment{}.with_so("X1", {}), p) == truth_one());
    CHECK(mk_eval(AB, {}, {}, {}, parse_mk("sum x . (<1,0,0,0>)")) == truth_zero());

    // an unassigned first-order variable of V makes the pair invalid
    MkPtr b = parse_mk("<1,0,0,0>");
    CHECK(mk_eval(AB, {"x"}, {0}, {}, b) == truth_zero());
}

TEST_CASE("restricted fragment check") {
    CHECK_FALSE(is_rmso(parse_mk("(<1,0,0,0> (*) <0,1,0,0>)")).ok);
    CHECK(is_rmso(parse_mk("((exists x . P_a(x)) (*) <1,0,0,0>)")).ok);
    CHECK(is_rmso(parse_mk("prod x . ((x in X1 -> <1,0,0,0>) (+) (x in X2 -> <0,1,0,0>))"))
              .ok);
    CHECK_FALSE(is_rmso(parse_mk("prod x . (<1,0,0,0> (+) <0,1,0,0>)")).ok);
    CHECK_FALSE(is_rmso(parse_mk("prod x . ((y in X1 -> <1,0,0,0>))")).ok);
    auto c = is_rmso(parse_mk("(<1,0,0,0> (*) <0,1,0,0>)"));
    REQUIRE_FALSE(c.violations.empty());
    CHECK(c.violations[0].find("left operand") != std::string::npos);
}

TEST_CASE("boolean compilation to DFA") {
    ExtAlphabet e0 = ext_base(AB);
    Dfa t = mso_to_dfa(parse_mso("true"), e0);
    for (const Word& w : enumerate_words(e0.flat, 3)) CHECK(accepts(t, w));

    Dfa has_a = mso_to_dfa(parse_mso("exists x . P_a(x)"), e0);
    for (const Word& w : enumerate_words(e0.flat, 4)) {
        bool expect = std::find(w.begin(), w.end(), Letter{0}) != w.end();
        CHECK(accepts(has_a, w) == expect);
    }

    ExtAlphabet ex = ext_canonical(AB, {"x"});
    MsoPtr f = parse_mso("(P_a(x) | (exists y . (x <= y & P_b(y))))");
    Dfa d = mso_to_dfa(f, ex);
    for (const Word& w : enumerate_words(ex.flat, 3))
        CHECK(accepts(d, w) == mso_satisfies_encoded(ex, w, f));
}

TEST_CASE("restricted compilation matches the direct semantics") {
    ExtAlphabet e0 = ext_base(AB);
    SUBCASE("constant sentence") {
        MkAutomaton m = rmso_to_automaton(parse_mk("<3/10,1/5,2/5,1/10>"), e0);
        for (const Word& w : enumerate_words(e0.flat, 3)) CHECK(behavior(m, w) == k1);
    }
    SUBCASE("boolean sentence") {
        MkPtr f = parse_mk("(exists x . P_a(x))");
        MkAutomaton m = rmso_to_automaton(f, e0);
        for (const Word& w : enumerate_words(e0.flat, 3))
            CHECK(behavior(m, w) == mk_eval_encoded(e0, w, f));
    }
    SUBCASE("non-restricted input is rejected") {
        CHECK_THROWS_AS(rmso_to_automaton(parse_mk("(<1,0,0,0> (*) <1,0,0,0>)"), e0),
                        std::invalid_argument);
    }
}

TEST_CASE("decompiled sentences are restricted and match on constants") {
    Alphabet A({"a"});
    MkAutomaton c;
    c.states = {"q"};
    c.alphabet = A;
    c.initial = {{0, k1}};
    c.transitions.push_back({0, 0, 0, truth_one()});
    c.final_weights = {{0, truth_one()}};
    c.sort_all();
    RmsoSentence s = automaton_to_rmso(c);
    CHECK(is_rmso(s.sentence).ok);
    for (const Word& w : enumerate_words(A, 3))
        CHECK(mk_eval(A, {}, w, {}, s.sentence) == k1);
}

TEST_CASE("emitted sentences render to a parser fixpoint") {
    harness::Rng rng(61);
    Alphabet A({"a", "b"});
    MkAutomaton a = harness::random_mk_automaton(rng, 2, A, false);
    RmsoSentence s = automaton_to_rmso(a);
    std::string once = mk_str(s.sentence);
    CHECK(mk_str(parse_mk(once)) == once);
}

TEST_CASE("encode/decode round trip") {
    ExtAlphabet e = ext_canonical(AB, {"x", "X"});
    harness::Rng rng(3);
    for (const Word& w : enumerate_words(e.flat, 3)) {
        DecodedWord d = decode_word(e, w);
        if (!d.valid) continue;
        CHECK(encode_word(e, d.base, d.assignment) == w);
    }
}
