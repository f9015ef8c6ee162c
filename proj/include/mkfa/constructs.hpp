// constructs.hpp -- automaton-level constructions: characteristic
// automata, closure under disjunction, conjunction with recognizable
// languages, homomorphic and inverse homomorphic images, scalars,
// normalization, in/ter elimination, Cauchy product, strong support and
// the Nivat decomposition/composition.
//
// Every construction is a pure function on immutable inputs.  State
// orders are part of each contract: with a non-commutative disjunction,
// reordering states changes behavior.

#ifndef MKFA_CONSTRUCTS_HPP
#define MKFA_CONSTRUCTS_HPP

#include "mkfa/automaton.hpp"
#include "mkfa/classical.hpp"

namespace mkfa {

// Letter-to-letter map between free monoids; total on the (ordered)
// source alphabet.
struct StrictAlphabeticHom {
    Alphabet source;
    Alphabet target;
    std::vector<Letter> map; // indexed by source letter

    Word apply(const Word& w) const;
    static StrictAlphabeticHom identity(const Alphabet& a);
};

/// Characteristic automaton of L(d): d's structure with all weights ONE.
MkAutomaton char_automaton(const Dfa& d);

/// One-state automaton with behavior constantly k (k nonzero as an
/// initial weight is required; k = ZERO is rejected).
MkAutomaton const_automaton(const TruthValue& k, const Alphabet& a);

/// Ordered disjoint union, every a1-state preceding every a2-state;
/// behavior is the pointwise disjunction.  Order of arguments matters.
MkAutomaton disjunction(const MkAutomaton& a1, const MkAutomaton& a2);

/// Product with d; pair states ordered second-component-major.  Behavior
/// is the characteristic language of d conjoined (on the left) with a's.
MkAutomaton conj_char(const Dfa& d, const MkAutomaton& a);

/// Image construction over pair states (letter, state), ordered
/// first-component-major.  The multiset of path weights over a target
/// word u equals the multiset over all h-preimages of u; whether the
/// folds agree in general is probed, not assumed.
MkAutomaton hom_image(const MkAutomaton& a, const StrictAlphabeticHom& h);

/// Preimage construction: same states and order, letters relabelled
/// through h.  Behavior(w) equals a's behavior at h(w), exactly.
MkAutomaton inv_hom(const MkAutomaton& a, const StrictAlphabeticHom& h);

/// Deterministic input; final weights conjoined with k on the right.
/// Pointwise equal to (behavior conj k) everywhere, dead words included.
MkAutomaton scalar_right(const MkAutomaton& a, const TruthValue& k);

struct ScalarLeftResult {
    MkAutomaton automaton;
    // words with no accepting path: there the construction yields ZERO
    // while the pointwise definition yields k conj ZERO
    Dfa discrepancy_domain;
    bool initial_removed = false;
};

/// Deterministic input; initial weight conjoined with k on the left.
/// Correct on every word with an accepting path; the mismatch domain is
/// returned alongside.  When k conj in(q0) is ZERO the initial entry is
/// dropped (signalled via initial_removed).
ScalarLeftResult scalar_left(const TruthValue& k, const MkAutomaton& a);

/// Deterministic input; returns a normalized unambiguous automaton with
/// the same behavior on nonempty words and ZERO at the empty word.
MkAutomaton normalize(const MkAutomaton& a);

/// Normalized unambiguous input; weights on transitions entering a final
/// state absorb k.  Pointwise (behavior conj k), preserving the shape.
MkAutomaton scalar_right_normalized(const MkAutomaton& a, const TruthValue& k);

/// Cauchy product of two deterministic automata.  Assembles the epsilon
/// term, the split-at-0 term, the middle concatenation and the
/// split-at-end term as an ordered union; split positions with a
/// path-less suffix are completed by a zero-weighted branch so the
/// behavior equals the definitional split fold exactly.
MkAutomaton cauchy(const MkAutomaton& a1, const MkAutomaton& a2);

/// Deterministic input; the words whose behavior has nonzero t-component.
/// Sound because the t-component is multiplicative under conjunction.
Dfa strong_support(const MkAutomaton& a);

struct NivatData {
    Alphabet inner;                    // one letter per transition
    Nfa language;                      // epsilon-free by construction
    std::vector<TruthValue> letter_weight; // indexed by inner letter
    StrictAlphabeticHom hom;           // inner -> original alphabet
};

/// Decomposition (source behavior must be ZERO at the empty word): the
/// inner alphabet is the transition set of the in/ter-eliminated
/// automaton, the language is its path language, weights and hom read
/// off the transitions.
NivatData nivat_decompose(const MkAutomaton& a);

/// hom-image of (characteristic language of the decomposition's language
/// conjoined with its letterwise weighting).
MkAutomaton nivat_compose(const NivatData& n);

/// Initial and final weights pushed into adjacent transitions via
/// initial/final state copies; behavior preserved on nonempty words.
/// The copies drop the empty-word behavior to ZERO; an automaton whose
/// weights are already units is returned unchanged.
MkAutomaton in_ter_one(const MkAutomaton& a);

} // namespace mkfa

#endif // MKFA_CONSTRUCTS_HPP
