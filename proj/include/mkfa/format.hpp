// format.hpp -- the line-oriented automaton text format.
//
//   mkfa 1
//   kind mk|classical
//   alphabet <letter> <letter> ...
//   state <name>              (file order = state order)
//   initial <state> [<truth>]
//   trans <from> <letter> <to> [<truth>]
//   final <state> [<truth>]
//
// Truth literals appear on mk records and are absent on classical ones.
// '#' starts a comment, lines are LF-terminated UTF-8.  Serialization is
// canonical (records sorted by state order, then letter order, then
// target) and round-trips byte-identically.

#ifndef MKFA_FORMAT_HPP
#define MKFA_FORMAT_HPP

#include "mkfa/automaton.hpp"
#include "mkfa/classical.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace mkfa {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParsedAutomaton {
    enum class Kind { Mk, Classical };
    Kind kind;
    MkAutomaton mk;  // when kind == Mk
    Nfa classical;   // when kind == Classical
};

ParsedAutomaton parse_automaton(const std::string& text);
ParsedAutomaton parse_automaton_file(const std::string& path);

std::string serialize(const MkAutomaton& a);
std::string serialize(const Nfa& n);
std::string serialize(const Dfa& d);

/// Classical view as a Dfa; determinizes when the file is nondeterministic.
Dfa to_dfa(const Nfa& n);

} // namespace mkfa

#endif // MKFA_FORMAT_HPP
