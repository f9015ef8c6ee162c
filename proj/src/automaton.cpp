#include "mkfa/automaton.hpp"

#include <algorithm>
#include <set>

namespace mkfa {

namespace {

bool transition_less(const MkTransition& a, const MkTransition& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.letter != b.letter) return a.letter < b.letter;
    return a.to < b.to;
}

const TruthValue* weight_lookup(const std::vector<std::pair<State, TruthValue>>& v, State q) {
    auto it = std::lower_bound(v.begin(), v.end(), q,
                               [](const auto& p, State s) { return p.first < s; });
    if (it != v.end() && it->first == q) return &it->second;
    return nullptr;
}

} // namespace

void MkAutomaton::sort_all() {
    auto by_state = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(initial.begin(), initial.end(), by_state);
    std::sort(final_weights.begin(), final_weights.end(), by_state);
    std::sort(transitions.begin(), transitions.end(), transition_less);
}

const TruthValue* MkAutomaton::initial_weight(State q) const {
    return weight_lookup(initial, q);
}

const TruthValue* MkAutomaton::final_weight(State q) const {
    return weight_lookup(final_weights, q);
}

std::span<const MkTransition> MkAutomaton::out(State q, Letter letter) const {
    MkTransition lo{q, letter, 0, {}};
    auto first = std::lower_bound(transitions.begin(), transitions.end(), lo, transition_less);
    auto last = first;
    while (last != transitions.end() && last->from == q && last->letter == letter) ++last;
    return {first, last};
}

std::vector<std::string> validate(const MkAutomaton& a) {
    std::vector<std::string> out;
    auto state_ok = [&](State q) { return q < a.states.size(); };
    for (const auto& [q, w] : a.initial) {
        if (!state_ok(q)) {
            out.push_back("initial entry references unknown state #" + std::to_string(q));
            continue;
        }
        if (w == truth_zero())
            out.push_back("initial weight of state '" + a.states[q] +
                          "' is the zero quadruple; initial weights must be nonzero");
        else if (!w.is_valid())
            out.push_back("initial weight of state '" + a.states[q] + "' is not in K");
    }
    for (std::size_t i = 1; i < a.initial.size(); ++i)
        if (a.initial[i].first == a.initial[i - 1].first)
            out.push_back("duplicate initial entry for state '" +
                          a.states[a.initial[i].first] + "'");
    for (const auto& [q, w] : a.final_weights) {
        if (!state_ok(q)) {
            out.push_back("final entry references unknown state #" + std::to_string(q));
            continue;
        }
        if (!w.is_valid())
            out.push_back("final weight of state '" + a.states[q] + "' is not in K");
    }
    for (std::size_t i = 1; i < a.final_weights.size(); ++i)
        if (a.final_weights[i].first == a.final_weights[i - 1].first)
            out.push_back("duplicate final entry for state '" +
                          a.states[a.final_weights[i].first] + "'");
    for (const auto& t : a.transitions) {
        if (!state_ok(t.from) || !state_ok(t.to)) {
            out.push_back("transition references unknown state");
            continue;
        }
        if (t.letter >= a.alphabet.size())
            out.push_back("transition from '" + a.states[t.from] +
                          "' uses a letter outside the alphabet");
        if (!t.weight.is_valid())
            out.push_back("transition weight from '" + a.states[t.from] + "' is not in K");
    }
    for (std::size_t i = 1; i < a.transitions.size(); ++i) {
        const auto &p = a.transitions[i - 1], &t = a.transitions[i];
        if (p.from == t.from && p.letter == t.letter && p.to == t.to)
            out.push_back("duplicate transition (" + a.states[t.from] + "," +
                          a.alphabet.letters[t.letter] + "," + a.states[t.to] + ")");
    }
    return out;
}

namespace {

void check_word(const MkAutomaton& a, const Word& w) {
    for (Letter l : w)
        if (l >= a.alphabet.size()) throw ForeignLetterError("letter index out of range");
}

// Depth-first extension in ascending successor order; emits accepting
// paths in lexicographic order of their state sequences.
template <typename Visit>
void walk_paths(const MkAutomaton& a, const Word& w, std::size_t depth,
                std::vector<State>& seq, const TruthValue& acc, Visit&& visit) {
    if (depth == w.size()) {
        if (const TruthValue* ter = a.final_weight(seq.back())) visit(seq, conj(acc, *ter));
        return;
    }
    for (const auto& t : a.out(seq.back(), w[depth])) {
        seq.push_back(t.to);
        walk_paths(a, w, depth + 1, seq, conj(acc, t.weight), visit);
        seq.pop_back();
    }
}

template <typename Visit>
void visit_paths(const MkAutomaton& a, const Word& w, Visit&& visit) {
    std::vector<State> seq;
    for (const auto& [q0, in] : a.initial) {
        seq.assign(1, q0);
        walk_paths(a, w, 0, seq, in, visit);
    }
}

} // namespace

std::vector<Path> paths(const MkAutomaton& a, const Word& w) {
    check_word(a, w);
    std::vector<Path> out;
    if (w.empty()) {
        for (const auto& [q, in] : a.initial)
            if (a.final_weight(q)) out.push_back({w, {q}});
        return out;
    }
    visit_paths(a, w, [&](const std::vector<State>& seq, const TruthValue&) {
        out.push_back({w, seq});
    });
    return out;
}

TruthValue path_weight(const MkAutomaton& a, const Path& p) {
    if (p.seq.size() != p.word.size() + 1)
        throw std::invalid_argument("path length does not match its word");
    const TruthValue* in = a.initial_weight(p.seq.front());
    const TruthValue* ter = a.final_weight(p.seq.back());
    if (!in || !ter) throw std::invalid_argument("path endpoints are not initial/final");
    TruthValue acc = *in;
    for (std::size_t i = 0; i < p.word.size(); ++i) {
        const MkTransition* found = nullptr;
        for (const auto& t : a.out(p.seq[i], p.word[i]))
            if (t.to == p.seq[i + 1]) {
                found = &t;
                break;
            }
        if (!found) throw std::invalid_argument("path step is not a transition");
        acc = conj(acc, found->weight);
    }
    return conj(acc, *ter);
}

TruthValue behavior(const MkAutomaton& a, const Word& w) {
    check_word(a, w);
    TruthValue acc = truth_zero();
    if (w.empty()) {
        for (const auto& [q, in] : a.initial)
            if (const TruthValue* ter = a.final_weight(q)) acc = disj(acc, conj(in, *ter));
        return acc;
    }
    visit_paths(a, w, [&](const std::vector<State>&, const TruthValue& weight) {
        acc = disj(acc, weight);
    });
    return acc;
}

bool is_deterministic(const MkAutomaton& a) {
    if (a.initial.size() > 1) return false;
    for (std::size_t i = 1; i < a.transitions.size(); ++i)
        if (a.transitions[i].from == a.transitions[i - 1].from &&
            a.transitions[i].letter == a.transitions[i - 1].letter)
            return false;
    return true;
}

bool is_normalized(const MkAutomaton& a) {
    if (a.initial.size() != 1) return false;
    State qin = a.initial[0].first;
    if (a.initial[0].second != truth_one()) return false;
    if (a.final_weight(qin)) return false;
    for (const auto& [q, w] : a.final_weights)
        if (w != truth_one()) return false;
    for (const auto& t : a.transitions) {
        if (t.to == qin) return false;
        if (a.final_weight(t.from)) return false;
    }
    return true;
}

bool is_unambiguous(const MkAutomaton& a) {
    // epsilon: at most one initial-and-final state
    std::size_t eps_paths = 0;
    for (const auto& [q, in] : a.initial)
        if (a.final_weight(q)) ++eps_paths;
    if (eps_paths > 1) return false;

    // pairs of runs; flag = the two runs have already differed
    struct PairState {
        State p, q;
        bool differed;
        auto operator<=>(const PairState&) const = default;
    };
    std::set<PairState> seen;
    std::vector<PairState> stack;
    auto push = [&](PairState s) {
        if (seen.insert(s).second) stack.push_back(s);
    };
    for (const auto& [p, wp] : a.initial)
        for (const auto& [q, wq] : a.initial) push({p, q, p != q});
    auto is_final = [&](State q) { return a.final_weight(q) != nullptr; };
    while (!stack.empty()) {
        PairState s = stack.back();
        stack.pop_back();
        if (s.differed && is_final(s.p) && is_final(s.q)) return false;
        for (Letter l = 0; l < a.alphabet.size(); ++l)
            for (const auto& t1 : a.out(s.p, l))
                for (const auto& t2 : a.out(s.q, l))
                    push({t1.to, t2.to, s.differed || t1.to != t2.to});
    }
    return true;
}

Nfa underlying_nfa(const MkAutomaton& a) {
    Nfa n;
    n.states = a.states;
    n.alphabet = a.alphabet;
    for (const auto& [q, w] : a.initial) n.initial.push_back(q);
    for (const auto& [q, w] : a.final_weights) n.final_states.push_back(q);
    for (const auto& t : a.transitions) n.transitions.push_back({t.from, t.letter, t.to});
    n.sort_all();
    return n;
}

} // namespace mkfa
