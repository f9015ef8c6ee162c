#include "mkfa/format.hpp"
#include "mkfa/harness.hpp"
#include "mkfa/langexpr.hpp"

#include <doctest.h>

#include <map>

using namespace mkfa;

namespace {

const TruthValue k1 = parse_truth("<3/10,1/5,2/5,1/10>");
const TruthValue k2 = parse_truth("<9/10,1/20,3/100,1/50>");

} // namespace

TEST_CASE("pointwise nodes evaluate from the definitions") {
    Alphabet A({"a", "b"});
    auto c1 = le_const(k1, A);
    CHECK(eval(*c1, {}) == k1);
    CHECK(eval(*c1, {0, 1}) == k1);
    CHECK(eval(*le_disj(c1, le_const(k2, A)), {0}) == disj(k1, k2));
    CHECK(eval(*le_conj(c1, le_const(k2, A)), {0}) == conj(k1, k2));
    CHECK(eval(*le_scalar_left(k2, c1), {0}) == conj(k2, k1));
    CHECK(eval(*le_scalar_right(c1, k2), {0}) == conj(k1, k2));
    CHECK(eval(*le_word({0, 1}, A), {0, 1}) == truth_one());
    CHECK(eval(*le_word({0, 1}, A), {1, 0}) == truth_zero());
}

TEST_CASE("cauchy split fold, unfolded by hand for the epsilon indicator") {
    Alphabet A({"a"});
    harness::Rng rng(2);
    MkAutomaton sa = harness::random_mk_automaton(rng, 3, A, false);
    auto s = le_behavior(sa);
    auto e = le_word({}, A);
    // for w = "a": (eps(eps) conj s(a)) disj (eps(a) conj s(eps)) = s(a)
    CHECK(eval(*le_cauchy(e, s), {0}) == eval(*s, Word{0}));
    // and at epsilon: s(eps)
    CHECK(eval(*le_cauchy(e, s), {}) == eval(*s, Word{}));
}

TEST_CASE("hom image folds the preimages in lexicographic order") {
    Alphabet A({"a", "b"}), B({"c"});
    StrictAlphabeticHom h{A, B, {0, 0}};
    auto img = le_hom(h, le_const(k1, A));
    // two preimages of "c": k1 disj k1, which is not k1
    CHECK(eval(*img, {0}) == disj(k1, k1));
    CHECK_FALSE(eval(*img, {0}) == k1);
}

TEST_CASE("strong support enumeration") {
    Alphabet A({"a"});
    CHECK(stgsupp(*le_const(truth_zero(), A), 3).empty());
    CHECK(stgsupp(*le_const(truth_one(), A), 3).size() == 4); // eps, a, aa, aaa
    harness::Rng rng(13);
    MkAutomaton a = harness::random_mk_automaton(rng, 3, A, true);
    Dfa d = strong_support(a);
    auto words = stgsupp(*le_behavior(a), 5);
    for (const Word& w : enumerate_words(A, 5)) {
        bool in_list = std::find(words.begin(), words.end(), w) != words.end();
        CHECK(in_list == accepts(d, w));
    }
}

TEST_CASE("expression parser resolves alphabets and files") {
    Alphabet A({"a", "b"});
    MkAutomaton c1 = const_automaton(k1, A);
    std::map<std::string, MkAutomaton> files{{"c1.mkfa", c1}};
    LangExprLoader loader{
        [&](const std::string& name) { return files.at(name); },
        [&](const std::string&) -> Dfa { throw std::invalid_argument("none"); }};

    auto e = parse_lang_expr("disj(auto(c1.mkfa), const(<9/10,1/20,3/100,1/50>))", loader);
    CHECK(eval(*e, {0}) == disj(k1, k2));

    auto w = parse_lang_expr("scalarR(word(\"ab\"), <1,0,0,0>)", loader, &A);
    CHECK(eval(*w, {0, 1}) == truth_one());

    auto hom = parse_lang_expr("hom(a>c;b>c, auto(c1.mkfa))", loader);
    CHECK(hom->alphabet.letters == std::vector<std::string>{"c"});
    CHECK(eval(*hom, {0}) == disj(k1, k1));

    CHECK_THROWS_AS(parse_lang_expr("const(<1,0,0,0>)", loader), std::invalid_argument);
    CHECK_THROWS_AS(parse_lang_expr("bogus(3)", loader), std::invalid_argument);
}

TEST_CASE("bimonoid laws lift pointwise to languages") {
    Alphabet A({"a"});
    harness::Rng rng(19);
    auto x = le_behavior(harness::random_mk_automaton(rng, 2, A, false));
    auto y = le_const(k1, A);
    auto z = le_const(k2, A);
    for (const Word& w : enumerate_words(A, 4)) {
        CHECK(eval(*le_disj(le_disj(x, y), z), w) == eval(*le_disj(x, le_disj(y, z)), w));
        CHECK(eval(*le_conj(le_conj(x, y), z), w) == eval(*le_conj(x, le_conj(y, z)), w));
        CHECK(eval(*le_disj(le_const(truth_zero(), A), x), w) == eval(*x, w));
        CHECK(eval(*le_conj(le_const(truth_one(), A), x), w) == eval(*x, w));
    }
}
