#include "mkfa/format.hpp"
#include "mkfa/harness.hpp"

#include <doctest.h>

using namespace mkfa;

namespace {

const char* two_fixture_text =
    "mkfa 1\n"
    "kind mk\n"
    "alphabet a\n"
    "state p\n"
    "state q\n"
    "initial p <1,0,0,0>\n"
    "trans p a p <3/10,1/5,2/5,1/10>\n"
    "trans p a q <9/10,1/20,3/100,1/50>\n"
    "trans q a q <1,0,0,0>\n"
    "final p <1,0,0,0>\n"
    "final q <1,0,0,0>\n";

} // namespace

TEST_CASE("mk files parse, validate and round-trip byte-identically") {
    ParsedAutomaton p = parse_automaton(two_fixture_text);
    REQUIRE(p.kind == ParsedAutomaton::Kind::Mk);
    CHECK(validate(p.mk).empty());
    CHECK(p.mk.states == std::vector<std::string>{"p", "q"});
    CHECK(behavior(p.mk, {0}) == parse_truth("<21/25,1/100,19/500,14/125>"));
    CHECK(serialize(p.mk) == two_fixture_text);
}

TEST_CASE("comments and blank lines are ignored") {
    std::string text = "# header comment\nmkfa 1\nkind mk\n\nalphabet a # letters\n"
                       "state p\ninitial p <1,0,0,0>\nfinal p <1,0,0,0>\n";
    ParsedAutomaton p = parse_automaton(text);
    CHECK(p.mk.states.size() == 1);
}

TEST_CASE("classical files") {
    std::string text = "mkfa 1\nkind classical\nalphabet a b\nstate s\nstate t\n"
                       "initial s\ntrans s a s\ntrans s b t\nfinal t\n";
    ParsedAutomaton p = parse_automaton(text);
    REQUIRE(p.kind == ParsedAutomaton::Kind::Classical);
    CHECK(serialize(p.classical) == text);
    Dfa d = to_dfa(p.classical);
    CHECK(accepts(d, {0, 0, 1}));
    CHECK_FALSE(accepts(d, {1, 0}));
}

TEST_CASE("nondeterministic classical files are determinized on demand") {
    std::string text = "mkfa 1\nkind classical\nalphabet a\nstate s\nstate t\n"
                       "initial s\ninitial t\ntrans s a s\ntrans s a t\nfinal t\n";
    ParsedAutomaton p = parse_automaton(text);
    Dfa d = to_dfa(p.classical);
    for (const Word& w : enumerate_words(p.classical.alphabet, 5))
        CHECK(accepts(d, w) == accepts(p.classical, w));
}

TEST_CASE("format errors carry line numbers") {
    CHECK_THROWS_AS(parse_automaton("bogus\n"), FormatError);
    CHECK_THROWS_AS(parse_automaton("mkfa 1\nkind mk\nalphabet a\ninitial p <1,0,0,0>\n"),
                    FormatError); // unknown state
    CHECK_THROWS_AS(parse_automaton("mkfa 1\nkind mk\nalphabet a\nstate p\n"
                                    "initial p <1,1,0,0>\n"),
                    FormatError); // bad truth literal
    CHECK_THROWS_AS(parse_automaton("mkfa 1\nkind classical\nalphabet a\nstate p\n"
                                    "initial p <1,0,0,0>\n"),
                    FormatError); // weight on a classical record
    CHECK_THROWS_AS(parse_automaton("mkfa 1\nkind mk\nstate p\n"), FormatError);
}

TEST_CASE("random automata survive a serialize/parse round trip") {
    harness::Rng rng(53);
    for (int i = 0; i < 25; ++i) {
        Alphabet A = harness::random_alphabet(rng, 3);
        MkAutomaton a = harness::random_mk_automaton(rng, 4, A, false);
        std::string text = serialize(a);
        ParsedAutomaton p = parse_automaton(text);
        REQUIRE(p.kind == ParsedAutomaton::Kind::Mk);
        CHECK(serialize(p.mk) == text);
        for (const Word& w : enumerate_words(A, 3))
            CHECK(behavior(p.mk, w) == behavior(a, w));
    }
}
