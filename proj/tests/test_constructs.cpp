#include "mkfa/constructs.hpp"
#include "mkfa/harness.hpp"
#include "mkfa/langexpr.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mkfa;

namespace {

const TruthValue k1 = parse_truth("<3/10,1/5,2/5,1/10>");
const TruthValue k2 = parse_truth("<9/10,1/20,3/100,1/50>");

Dfa all_accepting(const Alphabet& a) {
    Dfa d;
    d.alphabet = a;
    d.states = {"q"};
    d.initial = 0;
    for (Letter l = 0; l < a.size(); ++l) d.transitions.push_back({0, l, 0});
    d.final_states = {0};
    d.sort_all();
    d.complete = true;
    return d;
}

Dfa empty_language(const Alphabet& a) {
    Dfa d = all_accepting(a);
    d.final_states.clear();
    return d;
}

Dfa astar_b() {
    Dfa d;
    d.alphabet = Alphabet({"a", "b"});
    d.states = {"s", "t"};
    d.initial = 0;
    d.transitions = {{0, 0, 0}, {0, 1, 1}};
    d.final_states = {1};
    d.sort_all();
    return d;
}

// accepts only the empty word
Dfa epsilon_only(const Alphabet& a) {
    Dfa d;
    d.alphabet = a;
    d.states = {"e"};
    d.initial = 0;
    d.final_states = {0};
    d.sort_all();
    return d;
}

bool equal_upto(const MkAutomaton& a, const LangExprPtr& oracle, std::size_t maxlen,
                bool skip_eps = false) {
    for (const Word& w : enumerate_words(a.alphabet, maxlen)) {
        if (skip_eps && w.empty()) continue;
        if (!(behavior(a, w) == eval(*oracle, w))) return false;
    }
    return true;
}

} // namespace

TEST_CASE("characteristic automaton") {
    Alphabet A({"a", "b"});
    MkAutomaton all = char_automaton(all_accepting(A));
    for (const Word& w : enumerate_words(A, 3)) CHECK(behavior(all, w) == truth_one());

    MkAutomaton ab = char_automaton(astar_b());
    CHECK(behavior(ab, word_from_string(A, "ab")) == truth_one());
    CHECK(behavior(ab, word_from_string(A, "ba")) == truth_zero());
    CHECK(behavior(ab, {}) == truth_zero()); // epsilon not in a*b
    CHECK(behavior(char_automaton(epsilon_only(A)), {}) == truth_one());
}

TEST_CASE("disjunction of constants and neutrality of the empty part") {
    Alphabet A({"a"});
    MkAutomaton c1 = const_automaton(k1, A), c2 = const_automaton(k2, A);
    MkAutomaton d12 = disjunction(c1, c2), d21 = disjunction(c2, c1);
    for (const Word& w : enumerate_words(A, 4)) {
        CHECK(behavior(d12, w) == disj(k1, k2));
        CHECK(behavior(d21, w) == disj(k2, k1));
    }
    // order sensitivity is visible on the reference pair
    CHECK_FALSE(behavior(d12, {0}) == behavior(d21, {0}));

    MkAutomaton dead = c2;
    dead.final_weights.clear();
    MkAutomaton with_dead = disjunction(c1, dead);
    for (const Word& w : enumerate_words(A, 5)) CHECK(behavior(with_dead, w) == k1);
}

TEST_CASE("conjunction with a characteristic language") {
    harness::Rng rng(3);
    Alphabet A({"a", "b"});
    MkAutomaton a = harness::random_mk_automaton(rng, 3, A, false);
    CHECK(equal_upto(conj_char(all_accepting(A), a), le_behavior(a), 5));
    MkAutomaton zero = conj_char(empty_language(A), a);
    for (const Word& w : enumerate_words(A, 5)) CHECK(behavior(zero, w) == truth_zero());
    CHECK(equal_upto(conj_char(astar_b(), a),
                     le_conj(le_char(astar_b()), le_behavior(a)), 5));
}

TEST_CASE("hom image: identity, constants, multiset invariant") {
    Alphabet A({"a", "b"}), B({"c"});
    StrictAlphabeticHom id = StrictAlphabeticHom::identity(A);
    harness::Rng rng(9);
    MkAutomaton a = harness::random_mk_automaton(rng, 3, A, false);
    CHECK(equal_upto(hom_image(a, id), le_behavior(a), 4));

    StrictAlphabeticHom collapse{A, B, {0, 0}};
    MkAutomaton img = hom_image(const_automaton(k1, A), collapse);
    // two preimages of "c": fold of two k1's
    CHECK(behavior(img, {0}) == disj(k1, k1));
    CHECK(behavior(img, {}) == k1);

    for (int i = 0; i < 20; ++i) {
        MkAutomaton m = harness::random_mk_automaton(rng, 3, A, false);
        MkAutomaton h = hom_image(m, collapse);
        for (const Word& u : enumerate_words(B, 4)) {
            if (u.empty()) continue;
            std::vector<TruthValue> img_ws, src_ws;
            for (const Path& p : paths(h, u)) img_ws.push_back(path_weight(h, p));
            // preimages of c^n are all words of length n over A
            for (const Word& v : enumerate_words(A, u.size()))
                if (v.size() == u.size())
                    for (const Path& p : paths(m, v)) src_ws.push_back(path_weight(m, p));
            std::sort(img_ws.begin(), img_ws.end(), truth_less);
            std::sort(src_ws.begin(), src_ws.end(), truth_less);
            CHECK(img_ws == src_ws);
        }
    }
}

TEST_CASE("inverse hom image is exact") {
    Alphabet A({"x", "y"}), B({"b"});
    StrictAlphabeticHom h{A, B, {0, 0}};
    harness::Rng rng(17);
    MkAutomaton a = harness::random_mk_automaton(rng, 3, B, false);
    MkAutomaton pre = inv_hom(a, h);
    CHECK(behavior(pre, word_from_string(A, "x y")) ==
          behavior(a, word_from_string(B, "b b")));
    CHECK(equal_upto(pre, le_invhom(h, le_behavior(a)), 5));
    StrictAlphabeticHom id = StrictAlphabeticHom::identity(B);
    CHECK(equal_upto(inv_hom(a, id), le_behavior(a), 5));
}

TEST_CASE("scalar on the right") {
    Alphabet A({"a"});
    harness::Rng rng(21);
    MkAutomaton a = harness::random_mk_automaton(rng, 3, A, true);
    CHECK(equal_upto(scalar_right(a, truth_one()), le_behavior(a), 5));
    MkAutomaton s = scalar_right(const_automaton(k1, A), k2);
    for (const Word& w : enumerate_words(A, 4)) CHECK(behavior(s, w) == conj(k1, k2));
    // a dead word stays ZERO, matching ZERO conj k
    MkAutomaton dead;
    dead.states = {"q"};
    dead.alphabet = A;
    dead.initial = {{0, k1}};
    dead.final_weights = {{0, truth_one()}};
    dead.sort_all();
    CHECK(behavior(scalar_right(dead, k2), {0}) == truth_zero());
    CHECK_THROWS_AS(scalar_right(harness::random_mk_automaton(rng, 3, A, false),
                                 k1),
                    std::invalid_argument);
}

TEST_CASE("scalar on the left and its dead-word discrepancy") {
    Alphabet A({"a"});
    harness::Rng rng(29);
    MkAutomaton a = harness::random_mk_automaton(rng, 3, A, true);
    ScalarLeftResult one = scalar_left(truth_one(), a);
    CHECK(equal_upto(one.automaton, le_behavior(a), 5));

    // live words carry k conj behavior
    MkAutomaton c = const_automaton(k1, A);
    ScalarLeftResult sl = scalar_left(k2, c);
    for (const Word& w : enumerate_words(A, 4))
        CHECK(behavior(sl.automaton, w) == conj(k2, k1));

    // dead word with e(k) = 1/10: automaton ZERO vs pointwise (0,9/10,0,1/10)
    MkAutomaton dead;
    dead.states = {"q"};
    dead.alphabet = A;
    dead.initial = {{0, truth_one()}};
    dead.final_weights = {{0, truth_one()}};
    dead.sort_all();
    ScalarLeftResult r = scalar_left(k1, dead);
    Word wa = {0};
    CHECK(accepts(r.discrepancy_domain, wa));
    CHECK(behavior(r.automaton, wa) == truth_zero());
    CHECK(conj(k1, behavior(dead, wa)) == parse_truth("<0,9/10,0,1/10>"));

    // zero scalar removes the initial entry and the behavior collapses
    ScalarLeftResult z = scalar_left(truth_zero(), c);
    CHECK(z.initial_removed);
    for (const Word& w : enumerate_words(A, 3))
        CHECK(behavior(z.automaton, w) == truth_zero());
}

TEST_CASE("normalization") {
    harness::Rng rng(31);
    for (int i = 0; i < 25; ++i) {
        Alphabet A = harness::random_alphabet(rng, 3);
        MkAutomaton a = harness::random_mk_automaton(rng, 4, A, true);
        MkAutomaton b = normalize(a);
        CHECK(is_normalized(b));
        CHECK(is_unambiguous(b));
        CHECK(behavior(b, {}) == truth_zero());
        for (const Word& w : enumerate_words(A, 4)) {
            if (w.empty()) continue;
            CHECK(behavior(b, w) == behavior(a, w));
            CHECK(paths(b, w).size() == paths(a, w).size());
        }
    }
}

TEST_CASE("scalar on a normalized automaton keeps its shape") {
    harness::Rng rng(37);
    Alphabet A({"a", "b"});
    MkAutomaton a = normalize(harness::random_mk_automaton(rng, 3, A, true));
    CHECK(equal_upto(scalar_right_normalized(a, truth_one()), le_behavior(a), 4));
    MkAutomaton s = scalar_right_normalized(a, k2);
    CHECK(is_normalized(s));
    CHECK(is_unambiguous(s));
    CHECK(equal_upto(s, le_scalar_right(le_behavior(a), k2), 4));
}

TEST_CASE("cauchy product") {
    Alphabet A({"a", "b"});
    harness::Rng rng(41);
    SUBCASE("left unit: the indicator of the empty word") {
        MkAutomaton r = char_automaton(epsilon_only(A));
        MkAutomaton s = harness::random_mk_automaton(rng, 3, A, true);
        MkAutomaton rs = cauchy(r, s);
        for (const Word& w : enumerate_words(A, 4))
            CHECK(behavior(rs, w) == behavior(s, w));
    }
    SUBCASE("oracle sweep on random deterministic pairs") {
        for (int i = 0; i < 15; ++i) {
            MkAutomaton a1 = harness::random_mk_automaton(rng, 3, A, true);
            MkAutomaton a2 = harness::random_mk_automaton(rng, 3, A, true);
            CHECK(equal_upto(cauchy(a1, a2),
                             le_cauchy(le_behavior(a1), le_behavior(a2)), 4));
        }
    }
    SUBCASE("preconditions") {
        MkAutomaton nd = harness::random_mk_automaton(rng, 3, A, false);
        while (is_deterministic(nd)) nd = harness::random_mk_automaton(rng, 3, A, false);
        MkAutomaton d = harness::random_mk_automaton(rng, 3, A, true);
        CHECK_THROWS_AS(cauchy(nd, d), std::invalid_argument);
    }
}

TEST_CASE("cauchy keeps the terms with path-less suffixes") {
    // s(v) = ZERO on a path-less v still contributes r(u) conj ZERO,
    // which is nonzero whenever r(u) has error mass
    Alphabet A({"a"});
    SUBCASE("split at 0") {
        MkAutomaton r, s;
        r.states = {"q"};
        r.alphabet = A;
        r.initial = {{0, parse_truth("<1/2,0,0,1/2>")}};
        r.final_weights = {{0, truth_one()}};
        r.sort_all();
        s = r;
        s.initial[0].second = parse_truth("<1/4,1/4,1/4,1/4>");
        MkAutomaton rs = cauchy(r, s);
        // every nonempty word: r(eps) conj ZERO = (0, t+f+u, 0, e)
        for (const Word& w : enumerate_words(A, 4)) {
            if (w.empty()) continue;
            CHECK(behavior(rs, w) == parse_truth("<0,1/2,0,1/2>"));
        }
        CHECK(behavior(rs, {}) ==
              conj(parse_truth("<1/2,0,0,1/2>"), parse_truth("<1/4,1/4,1/4,1/4>")));
    }
    SUBCASE("middle split with a live prefix") {
        MkAutomaton r;
        r.states = {"p", "f"};
        r.alphabet = A;
        r.initial = {{0, truth_one()}};
        r.transitions = {{0, 0, 1, k1}};
        r.final_weights = {{1, truth_one()}};
        r.sort_all();
        MkAutomaton s;
        s.states = {"q"};
        s.alphabet = A;
        s.initial = {{0, parse_truth("<1/4,1/4,1/4,1/4>")}};
        s.final_weights = {{0, truth_one()}};
        s.sort_all();
        // rs("aa") = (0 conj s(aa)) disj (r(a) conj ZERO) disj (0 conj s(eps))
        //          = k1 conj ZERO = (0, 9/10, 0, 1/10)
        CHECK(behavior(cauchy(r, s), {0, 0}) == parse_truth("<0,9/10,0,1/10>"));
    }
}

TEST_CASE("cauchy product is not associative at the language level") {
    Alphabet A({"a"});
    auto r = le_scalar_right(le_word({}, A), parse_truth("<1/2,0,0,1/2>"));
    auto s = le_word({0}, A);
    auto t = le_word({}, A);
    TruthValue left = eval(*le_cauchy(le_cauchy(r, s), t), {0});
    TruthValue right = eval(*le_cauchy(r, le_cauchy(s, t)), {0});
    CHECK(left == parse_truth("<1/4,0,0,3/4>"));
    CHECK(right == parse_truth("<1/2,0,0,1/2>"));
    CHECK_FALSE(left == right);
}

TEST_CASE("strong support") {
    Alphabet A({"a", "b"});
    harness::Rng rng(43);
    for (int i = 0; i < 25; ++i) {
        MkAutomaton a = harness::random_mk_automaton(rng, 4, A, true);
        Dfa d = strong_support(a);
        for (const Word& w : enumerate_words(A, 5))
            CHECK(accepts(d, w) == (behavior(a, w).t != 0));
    }
    // one t = 0 weight on the only accepting route kills the word
    MkAutomaton m;
    m.states = {"p", "q"};
    m.alphabet = A;
    m.initial = {{0, truth_one()}};
    m.transitions = {{0, 0, 1, parse_truth("<0,1/2,1/4,1/4>")}};
    m.final_weights = {{1, truth_one()}};
    m.sort_all();
    CHECK_FALSE(accepts(strong_support(m), {0}));
}

TEST_CASE("in/ter elimination") {
    harness::Rng rng(47);
    for (int i = 0; i < 25; ++i) {
        Alphabet A = harness::random_alphabet(rng, 3);
        MkAutomaton a = harness::random_mk_automaton(rng, 4, A, false);
        MkAutomaton b = in_ter_one(a);
        for (const auto& [q, w] : b.initial) CHECK(w == truth_one());
        for (const auto& [q, w] : b.final_weights) CHECK(w == truth_one());
        for (const Word& w : enumerate_words(A, 4)) {
            if (w.empty()) continue;
            CHECK(behavior(b, w) == behavior(a, w));
            CHECK(paths(b, w).size() == paths(a, w).size());
        }
    }
}

TEST_CASE("nivat decomposition and composition") {
    Alphabet A({"a", "b"});
    SUBCASE("constant round trip (single path per word)") {
        MkAutomaton c = const_automaton(k1, A);
        // pin the empty word to ZERO first
        MkAutomaton src = c;
        src.final_weights.clear();
        src.states.push_back("f");
        for (Letter l = 0; l < A.size(); ++l)
            src.transitions.push_back({0, l, 1, truth_one()});
        src.final_weights = {{1, truth_one()}};
        src.sort_all();
        REQUIRE(behavior(src, {}) == truth_zero());
        NivatData n = nivat_decompose(src);
        CHECK(n.inner.size() == in_ter_one(src).transitions.size());
        CHECK(n.language.transitions.size() == n.inner.size());
        MkAutomaton back = nivat_compose(n);
        for (const Word& w : enumerate_words(A, 4)) {
            if (w.empty()) continue;
            CHECK(behavior(back, w) == behavior(src, w));
        }
        CHECK(behavior(back, {}) == truth_zero());
    }
    SUBCASE("empty-word precondition is checked") {
        MkAutomaton c = const_automaton(k1, A);
        CHECK_THROWS_AS(nivat_decompose(c), std::invalid_argument);
    }
}

TEST_CASE("alphabet mismatches are rejected") {
    Alphabet A({"a"}), B({"b"});
    MkAutomaton x = const_automaton(k1, A), y = const_automaton(k2, B);
    CHECK_THROWS_AS(disjunction(x, y), std::invalid_argument);
    CHECK_THROWS_AS(cauchy(x, y), std::invalid_argument);
    CHECK_THROWS_AS(conj_char(all_accepting(B), x), std::invalid_argument);
}
