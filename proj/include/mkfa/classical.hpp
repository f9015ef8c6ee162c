// classical.hpp -- boolean finite automata over ordered symbol sets.
//
// Supplies the recognizable languages consumed by the MK-fuzzy
// constructions and the MSO compilation pipeline.  Alphabets are ordered
// token lists; extended alphabets pair a base letter with a bit row per
// variable for assignment encodings.

#ifndef MKFA_CLASSICAL_HPP
#define MKFA_CLASSICAL_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mkfa {

using State = std::uint32_t;
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

struct ForeignLetterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered alphabet; a letter is its position in the token list.
struct Alphabet {
    std::vector<std::string> letters;

    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    std::optional<Letter> find(const std::string& token) const;
    bool operator==(const Alphabet&) const = default;
};

/// Tokenizes a word: whitespace-separated tokens, or one character per
/// letter when every token of the alphabet is a single character.
/// Throws ForeignLetterError on letters outside the alphabet.
Word word_from_string(const Alphabet& a, const std::string& text);

std::string word_str(const Alphabet& a, const Word& w);

/// All words of length <= maxlen, shortest first, letter order within a
/// length (the enumeration order used by every bounded sweep).
std::vector<Word> enumerate_words(const Alphabet& a, std::size_t maxlen);

struct Transition {
    State from;
    Letter letter;
    State to;

    auto operator<=>(const Transition&) const = default;
};

struct Nfa {
    std::vector<std::string> states; // order = position
    Alphabet alphabet;
    std::vector<State> initial;           // sorted
    std::vector<Transition> transitions;  // sorted, duplicate-free
    std::vector<State> final_states;      // sorted

    void sort_all();
    std::vector<State> targets(State from, Letter letter) const;
};

struct Dfa {
    std::vector<std::string> states;
    Alphabet alphabet;
    std::optional<State> initial; // absent = empty language
    std::vector<Transition> transitions;
    std::vector<State> final_states;
    bool complete = false;

    void sort_all();
    std::optional<State> target(State from, Letter letter) const;
    bool is_final(State q) const;
};

bool accepts(const Dfa& d, const Word& w);
bool accepts(const Nfa& n, const Word& w);

Nfa nfa_of_dfa(const Dfa& d);

/// Subset construction.  Output is complete and its states are ordered
/// canonically by their sorted member lists (empty set first).
Dfa determinize(const Nfa& n);

/// Intersection; pair states ordered lexicographically.
Dfa product(const Dfa& d1, const Dfa& d2);

/// Complement; completes the input internally via a sink.
Dfa complement(const Dfa& d);

/// Union; both sides completed internally, product order.
Dfa unite(const Dfa& d1, const Dfa& d2);

/// L(d) minus the empty word; adds a fresh initial copy when needed.
Dfa strip_epsilon(const Dfa& d);

/// Language equality on all words of length <= maxlen.
bool language_equal_upto(const Dfa& d1, const Dfa& d2, std::size_t maxlen);

// ---------------------------------------------------------------------
// Extended alphabets A_V = A x {0,1}^V for assignment encodings.

struct ExtLetter {
    Letter base;
    std::uint32_t bits; // bit i = row i

    bool operator==(const ExtLetter&) const = default;
};

struct ExtAlphabet {
    Alphabet base;
    std::vector<std::string> rows; // variable names; bit position = index
    std::vector<ExtLetter> letters; // order = letter order
    Alphabet flat;                  // rendered tokens, same order

    std::size_t row_index(const std::string& var) const; // throws if absent
    bool row_is_first_order(std::size_t i) const;        // lowercase convention
    bool bit(Letter ext_letter, std::size_t row) const {
        return (letters[ext_letter].bits >> row) & 1u;
    }
};

/// A_V with V empty: letters coincide with the base alphabet.
ExtAlphabet ext_base(const Alphabet& a);

/// Appends a row; letters ordered with (l, var=1) before (l, var=0) for
/// every existing letter l, preserving the existing order between them.
ExtAlphabet ext_extend(const ExtAlphabet& a, const std::string& var);

/// ext_base followed by ext_extend for each variable in order.
ExtAlphabet ext_canonical(const Alphabet& a, const std::vector<std::string>& vars);

/// Erases one row.  Output letters are ordered by first occurrence of
/// their image in the source order; projecting the last-extended row of
/// ext_extend recovers the original alphabet exactly.
std::pair<Nfa, ExtAlphabet> project(const Nfa& n, const ExtAlphabet& ext,
                                    const std::string& var);

/// Recognizes the valid encodings: every first-order row carries exactly
/// one 1.  Complete; all-accepting when no first-order row exists.
Dfa valid_assignments_dfa(const ExtAlphabet& ext);

} // namespace mkfa

#endif // MKFA_CLASSICAL_HPP
