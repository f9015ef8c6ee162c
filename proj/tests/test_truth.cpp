#include "mkfa/harness.hpp"
#include "mkfa/truth.hpp"

#include <doctest.h>

using namespace mkfa;

namespace {
const TruthValue k1 = parse_truth("<3/10,1/5,2/5,1/10>");
const TruthValue k2 = parse_truth("<9/10,1/20,3/100,1/50>");
} // namespace

TEST_CASE("disjunction and conjunction units") {
    CHECK(disj(truth_zero(), k1) == k1);
    CHECK(disj(k1, truth_zero()) == k1);
    CHECK(conj(truth_one(), k1) == k1);
    CHECK(conj(k1, truth_one()) == k1);
}

TEST_CASE("disjunction on the reference pair") {
    // both values computed from the four component formulas by hand
    CHECK(disj(k1, k2) == parse_truth("<21/25,1/100,19/500,14/125>"));
    CHECK(disj(k2, k1) == parse_truth("<231/250,1/100,19/500,7/250>"));
    CHECK_FALSE(disj(k1, k2) == disj(k2, k1));
}

TEST_CASE("conjunction absorbs on the left of zero only") {
    CHECK(conj(truth_zero(), k1) == truth_zero());
    // k conj ZERO = (0, t+f+u, 0, e)
    CHECK(conj(k1, truth_zero()) == parse_truth("<0,9/10,0,1/10>"));
}

TEST_CASE("folds have the right units and direction") {
    CHECK(disj_fold({}) == truth_zero());
    CHECK(conj_fold({}) == truth_one());
    TruthValue single[] = {k1};
    CHECK(disj_fold(single) == k1);
    CHECK(conj_fold(single) == k1);
    TruthValue both[] = {k1, k2};
    CHECK(disj_fold(both) == disj(k1, k2));
    TruthValue zk[] = {truth_zero(), k1};
    CHECK(conj_fold(zk) == truth_zero());
}

TEST_CASE("truth literal parsing") {
    CHECK(parse_truth("<0.3,0.2,0.4,0.1>") == k1);
    CHECK(parse_truth("<1,0,0,0>") == truth_one());
    CHECK(parse_truth("< 1/2 , 1/4 , 1/8 , 1/8 >").is_valid());
    CHECK_THROWS_AS(parse_truth("<1/2,1/2,1/2,0>"), std::invalid_argument); // sum != 1
    CHECK_THROWS_AS(parse_truth("<2,0,0,-1>"), std::invalid_argument);
    CHECK_THROWS_AS(parse_truth("1,0,0,0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_truth("<1,0,0>"), std::invalid_argument);
}

TEST_CASE("canonical rendering round-trips") {
    CHECK(k2.str() == "<9/10,1/20,3/100,1/50>");
    CHECK(parse_truth(k2.str()) == k2);
    CHECK(truth_one().str() == "<1,0,0,0>");
}

TEST_CASE("randomized closure and associativity") {
    harness::Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        TruthValue a = harness::random_truth(rng);
        TruthValue b = harness::random_truth(rng);
        TruthValue c = harness::random_truth(rng);
        CHECK(disj(a, b).is_valid());
        CHECK(conj(a, b).is_valid());
        CHECK(disj(disj(a, b), c) == disj(a, disj(b, c)));
        CHECK(conj(conj(a, b), c) == conj(a, conj(b, c)));
    }
}

TEST_CASE("distributivity fails both ways on the frozen triple") {
    const TruthValue &a = k1, &b = k2, &c = k1;
    CHECK_FALSE(conj(a, disj(b, c)) == disj(conj(a, b), conj(a, c)));
    CHECK_FALSE(disj(a, conj(b, c)) == conj(disj(a, b), disj(a, c)));
}

TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(rational_str(parse_rational("10/4")) == "5/2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}
