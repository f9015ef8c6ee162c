#include "mkfa/automaton.hpp"
#include "mkfa/harness.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mkfa;

namespace {

const TruthValue k1 = parse_truth("<3/10,1/5,2/5,1/10>");
const TruthValue k2 = parse_truth("<9/10,1/20,3/100,1/50>");

// one state, all self-loops weight ONE, in = k, ter = ONE
MkAutomaton const_fixture(const TruthValue& k, const Alphabet& a) {
    MkAutomaton m;
    m.states = {"q"};
    m.alphabet = a;
    m.initial = {{0, k}};
    for (Letter l = 0; l < a.size(); ++l) m.transitions.push_back({0, l, 0, truth_one()});
    m.final_weights = {{0, truth_one()}};
    m.sort_all();
    return m;
}

// states p < q; in(p)=ONE; ter(p)=ter(q)=ONE; (p,a,p):k1 (p,a,q):k2 (q,a,q):ONE
MkAutomaton two_fixture() {
    MkAutomaton m;
    m.states = {"p", "q"};
    m.alphabet = Alphabet({"a"});
    m.initial = {{0, truth_one()}};
    m.transitions = {{0, 0, 0, k1}, {0, 0, 1, k2}, {1, 0, 1, truth_one()}};
    m.final_weights = {{0, truth_one()}, {1, truth_one()}};
    m.sort_all();
    return m;
}

// independent reference: enumerate every state sequence, filter paths,
// sort by the prefix order with ties broken on the last state, fold
TruthValue reference_behavior(const MkAutomaton& a, const Word& w) {
    if (w.empty()) {
        TruthValue acc = truth_zero();
        for (const auto& [q, in] : a.initial)
            if (const TruthValue* ter = a.final_weight(q)) acc = disj(acc, conj(in, *ter));
        return acc;
    }
    std::size_t n = a.states.size();
    std::vector<std::vector<State>> seqs;
    std::vector<State> cur(w.size() + 1, 0);
    while (true) {
        bool valid = a.initial_weight(cur[0]) != nullptr &&
                     a.final_weight(cur[w.size()]) != nullptr;
        for (std::size_t i = 0; valid && i < w.size(); ++i) {
            bool has = false;
            for (const auto& t : a.out(cur[i], w[i]))
                if (t.to == cur[i + 1]) has = true;
            valid = has;
        }
        if (valid) seqs.push_back(cur);
        std::size_t i = cur.size();
        while (i > 0) {
            if (++cur[i - 1] < n) break;
            cur[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    std::sort(seqs.begin(), seqs.end(), [](const auto& x, const auto& y) {
        // prefix q0..q(n-1) first, final state breaks the tie
        if (!std::equal(x.begin(), x.end() - 1, y.begin(), y.end() - 1))
            return std::lexicographical_compare(x.begin(), x.end() - 1, y.begin(),
                                                y.end() - 1);
        return x.back() < y.back();
    });
    TruthValue acc = truth_zero();
    for (const auto& s : seqs) acc = disj(acc, path_weight(a, Path{w, s}));
    return acc;
}

} // namespace

TEST_CASE("constant automaton behaves constantly") {
    Alphabet A({"a", "b"});
    MkAutomaton m = const_fixture(k1, A);
    CHECK(behavior(m, {}) == k1);
    CHECK(behavior(m, word_from_string(A, "aa")) == k1);
    CHECK(behavior(m, word_from_string(A, "ab")) == k1);
    CHECK(paths(m, word_from_string(A, "aa")).size() == 1);
    CHECK(path_weight(m, paths(m, word_from_string(A, "a"))[0]) == k1);
}

TEST_CASE("two-path fixture orders paths and folds them") {
    MkAutomaton m = two_fixture();
    Word wa = {0};
    auto ps = paths(m, wa);
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].seq == std::vector<State>{0, 0}); // [p,p] before [p,q]
    CHECK(ps[1].seq == std::vector<State>{0, 1});
    CHECK(path_weight(m, ps[0]) == k1);
    CHECK(path_weight(m, ps[1]) == k2);
    CHECK(behavior(m, wa) == disj(k1, k2));
    CHECK(behavior(m, wa) == parse_truth("<21/25,1/100,19/500,14/125>"));
}

TEST_CASE("no final states means no paths and ZERO behavior") {
    MkAutomaton m = two_fixture();
    m.final_weights.clear();
    CHECK(paths(m, {0}).empty());
    CHECK(behavior(m, {0}) == truth_zero());
    CHECK(behavior(m, {}) == truth_zero());
}

TEST_CASE("validation reports violations as data") {
    MkAutomaton good = two_fixture();
    CHECK(validate(good).empty());

    MkAutomaton zero_in = good;
    zero_in.initial[0].second = truth_zero();
    auto v = validate(zero_in);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("nonzero") != std::string::npos);

    MkAutomaton bad_ref = good;
    bad_ref.transitions.push_back({7, 0, 0, truth_one()});
    bad_ref.sort_all();
    CHECK_FALSE(validate(bad_ref).empty());
}

TEST_CASE("classification predicates") {
    Alphabet A({"a"});
    MkAutomaton c = const_fixture(k1, A);
    CHECK(is_deterministic(c));
    CHECK_FALSE(is_normalized(c)); // initial state is final
    CHECK(is_unambiguous(c));

    MkAutomaton two_init = c;
    two_init.states.push_back("r");
    two_init.initial.push_back({1, k2});
    two_init.sort_all();
    CHECK_FALSE(is_deterministic(two_init));

    CHECK_FALSE(is_deterministic(two_fixture())); // two successors on (p,a)
    CHECK_FALSE(is_unambiguous(two_fixture()));
}

TEST_CASE("unambiguous but nondeterministic fixture") {
    // two initial states on disjoint letters
    MkAutomaton m;
    m.states = {"p", "q"};
    m.alphabet = Alphabet({"a", "b"});
    m.initial = {{0, k1}, {1, k2}};
    m.transitions = {{0, 0, 0, truth_one()}, {1, 1, 1, truth_one()}};
    m.final_weights = {{0, truth_one()}};
    m.sort_all();
    CHECK_FALSE(is_deterministic(m));
    CHECK(is_unambiguous(m));
    // exhaustive path check agrees
    for (const Word& w : enumerate_words(m.alphabet, 4))
        CHECK(paths(m, w).size() <= 1);
}

TEST_CASE("behavior equals the materialize-sort-fold reference") {
    harness::Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        Alphabet A = harness::random_alphabet(rng, 2);
        MkAutomaton a = harness::random_mk_automaton(rng, 4, A, false);
        for (const Word& w : enumerate_words(A, 5))
            CHECK(behavior(a, w) == reference_behavior(a, w));
    }
}

TEST_CASE("foreign letters are rejected") {
    MkAutomaton m = two_fixture();
    CHECK_THROWS_AS(behavior(m, {5}), ForeignLetterError);
    CHECK_THROWS_AS(paths(m, {5}), ForeignLetterError);
}
