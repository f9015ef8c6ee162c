// automaton.hpp -- MK-fuzzy automata: representation, validation,
// classification, ordered path enumeration and behavior evaluation.
//
// The state list is linearly ordered (order = list position).  Paths over
// a word are ordered lexicographically on their state sequences; behavior
// is the ordered disjunction-fold of path weights.  Because conjunction
// does not distribute over disjunction, evaluation is definitionally a
// per-path fold: there is no sound per-state aggregation.

#ifndef MKFA_AUTOMATON_HPP
#define MKFA_AUTOMATON_HPP

#include "mkfa/classical.hpp"
#include "mkfa/truth.hpp"

#include <span>
#include <string>
#include <vector>

namespace mkfa {

struct MkTransition {
    State from;
    Letter letter;
    State to;
    TruthValue weight;
};

struct MkAutomaton {
    std::vector<std::string> states; // order = position
    Alphabet alphabet;
    std::vector<std::pair<State, TruthValue>> initial; // sorted by state
    std::vector<MkTransition> transitions;             // sorted by (from,letter,to)
    std::vector<std::pair<State, TruthValue>> final_weights; // sorted by state

    void sort_all();

    const TruthValue* initial_weight(State q) const;
    const TruthValue* final_weight(State q) const;
    // transitions from (q, letter), ascending target order
    std::span<const MkTransition> out(State q, Letter letter) const;
};

// A path over w is a state sequence q0..qn with every step a transition,
// q0 initial and qn final.
struct Path {
    Word word;
    std::vector<State> seq;
};

/// Structural invariant check; the empty list means valid.  Violations
/// are data, not errors.
std::vector<std::string> validate(const MkAutomaton& a);

/// All paths of a over w, born sorted: lexicographic on the full state
/// sequence (ties on q0..q(n-1) broken by qn).
std::vector<Path> paths(const MkAutomaton& a, const Word& w);

/// conj-fold of [in(q0), wt(t1), ..., wt(tn), ter(qn)], left to right.
TruthValue path_weight(const MkAutomaton& a, const Path& p);

/// Ordered fold of path weights; ZERO when no path exists.  For the empty
/// word: fold of in(q) conj ter(q) over initial-and-final states in state
/// order.  Paths are enumerated lazily (depth-first), never materialized.
TruthValue behavior(const MkAutomaton& a, const Word& w);

/// Single initial state (at most) and at most one successor per
/// (state, letter).
bool is_deterministic(const MkAutomaton& a);

/// Single non-final initial with weight ONE, unit final weights, no
/// transition into the initial, none out of a final state.
bool is_normalized(const MkAutomaton& a);

/// No word has two distinct accepting paths; decided by a product
/// reachability check on the underlying boolean automaton.
bool is_unambiguous(const MkAutomaton& a);

/// The boolean skeleton: same states/transitions, initial/final as sets.
Nfa underlying_nfa(const MkAutomaton& a);

} // namespace mkfa

#endif // MKFA_AUTOMATON_HPP
