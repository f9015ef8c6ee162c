#include "mkfa/classical.hpp"
#include "mkfa/harness.hpp"

#include <doctest.h>

using namespace mkfa;

namespace {

// a*b over {a,b}
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

} // namespace

TEST_CASE("word tokenization") {
    Alphabet a({"a", "b"});
    CHECK(word_from_string(a, "aab") == Word{0, 0, 1});
    CHECK(word_from_string(a, "a b a") == Word{0, 1, 0});
    CHECK(word_from_string(a, "").empty());
    CHECK_THROWS_AS(word_from_string(a, "axb"), ForeignLetterError);
}

TEST_CASE("acceptance basics") {
    Alphabet a({"a", "b"});
    CHECK(accepts(all_accepting(a), word_from_string(a, "abba")));
    Dfa d = astar_b();
    CHECK(accepts(d, word_from_string(a, "aab")));
    CHECK_FALSE(accepts(d, word_from_string(a, "ba")));
    Dfa none = d;
    none.final_states.clear();
    CHECK_FALSE(accepts(none, word_from_string(a, "aab")));
}

TEST_CASE("determinize agrees with the source language") {
    harness::Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        Alphabet a = harness::random_alphabet(rng, 2);
        Nfa n;
        n.alphabet = a;
        std::size_t ns = 1 + rng.index(3);
        for (std::size_t q = 0; q < ns; ++q) n.states.push_back("n" + std::to_string(q));
        for (State q = 0; q < ns; ++q)
            for (Letter l = 0; l < a.size(); ++l)
                for (State t = 0; t < ns; ++t)
                    if (rng.chance(1, 3)) n.transitions.push_back({q, l, t});
        for (State q = 0; q < ns; ++q)
            if (rng.chance(1, 2)) n.initial.push_back(q);
        for (State q = 0; q < ns; ++q)
            if (rng.chance(1, 2)) n.final_states.push_back(q);
        n.sort_all();
        Dfa d = determinize(n);
        CHECK(d.complete);
        for (const Word& w : enumerate_words(a, 6))
            CHECK(accepts(n, w) == accepts(d, w));
    }
}

TEST_CASE("determinize drops unreachable states") {
    Nfa n;
    n.alphabet = Alphabet({"a"});
    n.states = {"r", "dead"};
    n.initial = {0};
    n.transitions = {{0, 0, 0}};
    n.final_states = {0};
    n.sort_all();
    Dfa d = determinize(n);
    // the reachable subsets are {r} alone
    CHECK(d.states.size() == 1);
}

TEST_CASE("boolean closure properties on bounded words") {
    Dfa d = astar_b();
    CHECK(language_equal_upto(complement(complement(d)), d, 6));
    CHECK(language_equal_upto(product(d, all_accepting(d.alphabet)), d, 6));
    Dfa everything = unite(d, complement(d));
    for (const Word& w : enumerate_words(d.alphabet, 6)) CHECK(accepts(everything, w));
}

TEST_CASE("strip_epsilon removes exactly the empty word") {
    Dfa d = all_accepting(Alphabet({"a"}));
    Dfa s = strip_epsilon(d);
    CHECK_FALSE(accepts(s, {}));
    for (const Word& w : enumerate_words(d.alphabet, 4))
        if (!w.empty()) CHECK(accepts(s, w));
}

TEST_CASE("extended alphabets order the new row 1 before 0") {
    Alphabet a({"a", "b"});
    ExtAlphabet e = ext_extend(ext_base(a), "x");
    REQUIRE(e.letters.size() == 4);
    CHECK(e.flat.letters == std::vector<std::string>{"a|1", "a|0", "b|1", "b|0"});
    ExtAlphabet e2 = ext_extend(e, "X");
    CHECK(e2.flat.letters[0] == "a|11");
    CHECK(e2.flat.letters[1] == "a|10");
}

TEST_CASE("projection erases a row and maps the language") {
    Alphabet a({"a"});
    ExtAlphabet e = ext_extend(ext_base(a), "x");
    // language: exactly one 1 in the x-row
    Dfa v = valid_assignments_dfa(e);
    auto [projected, reduced] = project(nfa_of_dfa(v), e, "x");
    CHECK(reduced.flat == ext_base(a).flat);
    // image: every nonempty word has some position
    for (const Word& w : enumerate_words(reduced.flat, 4))
        CHECK(accepts(projected, w) == !w.empty());
}

TEST_CASE("projection agrees with brute-force preimage search") {
    harness::Rng rng(5);
    Alphabet a({"a", "b"});
    ExtAlphabet e = ext_extend(ext_base(a), "X");
    for (int i = 0; i < 10; ++i) {
        Nfa n;
        n.alphabet = e.flat;
        std::size_t ns = 1 + rng.index(2);
        for (std::size_t q = 0; q < ns; ++q) n.states.push_back("n" + std::to_string(q));
        for (State q = 0; q < ns; ++q)
            for (Letter l = 0; l < e.flat.size(); ++l)
                for (State t = 0; t < ns; ++t)
                    if (rng.chance(1, 3)) n.transitions.push_back({q, l, t});
        n.initial = {0};
        for (State q = 0; q < ns; ++q)
            if (rng.chance(1, 2)) n.final_states.push_back(q);
        n.sort_all();
        auto [projected, reduced] = project(n, e, "X");
        for (const Word& w : enumerate_words(reduced.flat, 4)) {
            // preimages: all bit choices over the erased row
            bool any = false;
            for (std::size_t mask = 0; mask < (std::size_t{1} << w.size()) && !any; ++mask) {
                Word lifted;
                for (std::size_t p = 0; p < w.size(); ++p) {
                    // source letters are (l,1) at 2l and (l,0) at 2l+1
                    lifted.push_back(static_cast<Letter>(
                        2 * w[p] + (((mask >> p) & 1u) ? 0 : 1)));
                }
                if (accepts(n, lifted)) any = true;
            }
            CHECK(accepts(projected, w) == any);
        }
    }
}

TEST_CASE("valid assignment language") {
    Alphabet a({"a"});
    SUBCASE("no first-order rows accepts everything") {
        ExtAlphabet e = ext_extend(ext_base(a), "X");
        Dfa v = valid_assignments_dfa(e);
        for (const Word& w : enumerate_words(e.flat, 3)) CHECK(accepts(v, w));
    }
    SUBCASE("one first-order row wants exactly one 1") {
        ExtAlphabet e = ext_extend(ext_base(a), "x");
        Dfa v = valid_assignments_dfa(e);
        // letters: a|1 = 0, a|0 = 1
        CHECK_FALSE(accepts(v, {1, 1}));    // zero ones
        CHECK(accepts(v, {1, 0}));          // exactly one
        CHECK_FALSE(accepts(v, {0, 0}));    // two ones
        CHECK_FALSE(accepts(v, {}));
    }
}
