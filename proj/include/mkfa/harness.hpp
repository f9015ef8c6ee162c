// harness.hpp -- seeded instance generators, oracle-sweep verification
// suites and documented-gap probes.  Shared by the CLI (verify/probe) and the
// acceptance suite.
//
// Suites assert invariants and count failures.  Probes search for
// counterexamples to questions the constructions deliberately leave
// open; a probe counterexample is a report, never a failure.

#ifndef MKFA_HARNESS_HPP
#define MKFA_HARNESS_HPP

#include "mkfa/automaton.hpp"
#include "mkfa/constructs.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace mkfa::harness {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t next(std::uint64_t bound) { return eng() % bound; } // bound > 0
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next(n)); }
    bool chance(std::uint64_t num, std::uint64_t den) { return next(den) < num; }
};

/// Random element of K with small denominators; occasionally an exact
/// unit, so boundary cases stay covered.
TruthValue random_truth(Rng& rng, unsigned max_den = 6);
TruthValue random_truth_nonzero(Rng& rng, unsigned max_den = 6);

Alphabet random_alphabet(Rng& rng, std::size_t max_letters);
MkAutomaton random_mk_automaton(Rng& rng, std::size_t max_states, const Alphabet& a,
                                bool deterministic);
Dfa random_dfa(Rng& rng, std::size_t max_states, const Alphabet& a);
StrictAlphabeticHom random_hom(Rng& rng, const Alphabet& source, const Alphabet& target);

struct Report {
    std::string name;        // suite or probe
    std::string verdict;     // ok | fail | counterexample | match | note
    std::uint64_t seed = 0;
    std::uint64_t instance = 0;
    std::string detail;
    std::string dump; // replayable instance dump (serialized automata)
};

struct Options {
    std::size_t maxlen = 5;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1000; // probes
};

using Sink = std::function<void(const Report&)>;

std::vector<std::string> suite_names();
/// Runs one suite; returns the number of failed checks.  Throws
/// std::invalid_argument on an unknown name.
int run_suite(const std::string& name, const Options& opt, const Sink& sink);

std::vector<std::string> probe_names();
/// Runs one probe; returns the number of counterexamples found.
int run_probe(const std::string& name, const Options& opt, const Sink& sink);

} // namespace mkfa::harness

#endif // MKFA_HARNESS_HPP
