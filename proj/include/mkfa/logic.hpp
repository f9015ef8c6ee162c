// logic.hpp -- boolean MSO and MK-fuzzy MSO over finite words: abstract
// syntax, concrete-syntax parsing, direct semantics (with the subset
// ordering of the quantifier folds), the restricted fragment check, and
// both directions of the logic/automaton translation.

#ifndef MKFA_LOGIC_HPP
#define MKFA_LOGIC_HPP

#include "mkfa/automaton.hpp"
#include "mkfa/classical.hpp"
#include "mkfa/truth.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace mkfa {

// ---------------------------------------------------------------------
// abstract syntax

struct MsoFormula;
using MsoPtr = std::shared_ptr<const MsoFormula>;

struct MsoFormula {
    enum class Kind { True, Pred, Le, In, Not, Or, ExistsFO, ExistsSO };
    Kind kind;
    std::string letter; // Pred
    std::string v1, v2; // Pred: v1; Le: v1 <= v2; In: v1 in v2; Exists: v1
    MsoPtr a, b;
};

MsoPtr mso_true();
MsoPtr mso_false(); // !true
MsoPtr mso_pred(std::string letter, std::string x);
MsoPtr mso_le(std::string x, std::string y);
MsoPtr mso_in(std::string x, std::string X);
MsoPtr mso_not(MsoPtr a);
MsoPtr mso_or(MsoPtr a, MsoPtr b);
MsoPtr mso_and(MsoPtr a, MsoPtr b); // !(!a | !b)
MsoPtr mso_exists(std::string v, MsoPtr a);
MsoPtr mso_forall(std::string v, MsoPtr a); // !exists v . !a

struct MkFormula;
using MkPtr = std::shared_ptr<const MkFormula>;

struct MkFormula {
    enum class Kind { Const, Bool, Plus, Times, SumFO, SumSO, ProdFO };
    Kind kind;
    TruthValue k;
    MsoPtr boolean;
    std::string var;
    MkPtr a, b;
};

MkPtr mk_const(TruthValue k);
MkPtr mk_bool(MsoPtr b);
MkPtr mk_plus(MkPtr a, MkPtr b);
MkPtr mk_times(MkPtr a, MkPtr b);
MkPtr mk_sum_fo(std::string x, MkPtr a);
MkPtr mk_sum_so(std::string X, MkPtr a);
MkPtr mk_prod_fo(std::string x, MkPtr a);
/// The (x in X -> k) clause: (x in X) otimes k, which takes value k when
/// x lies in X and ZERO otherwise.
MkPtr mk_imp(std::string x, std::string X, TruthValue k);

bool is_first_order(const std::string& var);

std::set<std::string> free_vars(const MsoPtr& f);
std::set<std::string> free_vars(const MkPtr& f);

// ---------------------------------------------------------------------
// concrete syntax

/// Parses the boolean layer only.
MsoPtr parse_mso(const std::string& text);
/// Parses the MK layer (boolean subformulas embedded where they appear).
MkPtr parse_mk(const std::string& text);

std::string mso_str(const MsoPtr& f);
std::string mk_str(const MkPtr& f);

// ---------------------------------------------------------------------
// semantics

// Explicit variable assignment over a word.
struct Assignment {
    std::map<std::string, std::size_t> fo;
    std::map<std::string, std::vector<std::size_t>> so; // sorted position sets

    Assignment with_fo(const std::string& x, std::size_t i) const;
    Assignment with_so(const std::string& X, std::vector<std::size_t> I) const;
};

/// Standard satisfaction; throws on unbound variables.
bool mso_satisfies(const Alphabet& a, const Word& w, const Assignment& s, const MsoPtr& f);

/// All subsets of {0..n-1} in the ascending subset order: I before J
/// whenever the ascending-index word of I is lexicographically smaller.
std::vector<std::vector<std::size_t>> subsets_ascending(std::size_t n);

/// Direct evaluation over variable set V (must cover the free variables).
/// Invalid pairs (a first-order variable of V unassigned or out of range)
/// evaluate to ZERO.  First-order folds run over positions ascending,
/// subset folds over subsets_ascending.
TruthValue mk_eval(const Alphabet& a, const std::vector<std::string>& V, const Word& w,
                   const Assignment& s, const MkPtr& f);

// encoded view: a word over an extended alphabet as (base word, assignment)
struct DecodedWord {
    Word base;
    Assignment assignment;
    bool valid; // every first-order row carries exactly one 1
};
DecodedWord decode_word(const ExtAlphabet& ext, const Word& encoded);
/// Inverse of decode_word for valid assignments.
Word encode_word(const ExtAlphabet& ext, const Word& base, const Assignment& s);

/// mk_eval on an encoded word; ZERO outside the valid encodings.
TruthValue mk_eval_encoded(const ExtAlphabet& ext, const Word& encoded, const MkPtr& f);
bool mso_satisfies_encoded(const ExtAlphabet& ext, const Word& encoded, const MsoPtr& f);

// ---------------------------------------------------------------------
// restricted fragment and translations

struct RmsoCheck {
    bool ok;
    std::vector<std::string> violations; // location + reason
};

/// Restricted: every otimes has a boolean left operand, and every prod-x
/// body is a plus-tree of (x in X -> k) clauses over the bound variable.
RmsoCheck is_rmso(const MkPtr& f);

/// Classical compilation to a DFA over the extended alphabet; recognizes
/// exactly the valid encodings satisfying the formula.
Dfa mso_to_dfa(const MsoPtr& f, const ExtAlphabet& ext);

/// Compilation of a restricted formula to an MK-fuzzy automaton over the
/// extended alphabet; requires is_rmso.
MkAutomaton rmso_to_automaton(const MkPtr& f, const ExtAlphabet& ext);

struct RmsoCompiled {
    MkAutomaton automaton;
    ExtAlphabet ext;
};
/// Convenience: builds A_V from the alphabet and variable list (which
/// must cover the free variables) and compiles over it.
RmsoCompiled rmso_to_automaton(const MkPtr& f, const Alphabet& a,
                               const std::vector<std::string>& V);

struct RmsoSentence {
    MkPtr sentence;
    MsoPtr path_constraint;               // the assignment-shape formula
    std::vector<std::string> set_vars;    // one per transition, in order
    MkAutomaton in_ter_normalized;        // the automaton the sentence encodes
};
/// Emits a restricted sentence whose semantics matches the automaton's
/// behavior (up to the documented assignment-order question, which the
/// recdef-order probe tracks).  One second-order variable per transition
/// of the in/ter-eliminated automaton, in transition order.
RmsoSentence automaton_to_rmso(const MkAutomaton& a);

} // namespace mkfa

#endif // MKFA_LOGIC_HPP
