#include "mkfa/constructs.hpp"

#include <algorithm>
#include <stdexcept>

namespace mkfa {

Word StrictAlphabeticHom::apply(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
        if (l >= map.size()) throw ForeignLetterError("letter outside hom source");
        out.push_back(map[l]);
    }
    return out;
}

StrictAlphabeticHom StrictAlphabeticHom::identity(const Alphabet& a) {
    StrictAlphabeticHom h;
    h.source = a;
    h.target = a;
    for (Letter l = 0; l < a.size(); ++l) h.map.push_back(l);
    return h;
}

MkAutomaton char_automaton(const Dfa& d) {
    MkAutomaton m;
    m.states = d.states;
    m.alphabet = d.alphabet;
    if (d.initial) m.initial.push_back({*d.initial, truth_one()});
    for (const auto& t : d.transitions)
        m.transitions.push_back({t.from, t.letter, t.to, truth_one()});
    for (State f : d.final_states) m.final_weights.push_back({f, truth_one()});
    m.sort_all();
    return m;
}

MkAutomaton const_automaton(const TruthValue& k, const Alphabet& a) {
    if (k == truth_zero())
        throw std::invalid_argument("constant automaton needs a nonzero initial weight");
    MkAutomaton m;
    m.states = {"q"};
    m.alphabet = a;
    m.initial.push_back({0, k});
    for (Letter l = 0; l < a.size(); ++l) m.transitions.push_back({0, l, 0, truth_one()});
    m.final_weights.push_back({0, truth_one()});
    m.sort_all();
    return m;
}

namespace {

// Ordered disjoint union of parts; part i precedes part i+1, names tagged.
MkAutomaton ordered_union(const std::vector<const MkAutomaton*>& parts,
                          const std::vector<std::string>& tags) {
    MkAutomaton m;
    m.alphabet = parts.empty() ? Alphabet{} : parts[0]->alphabet;
    std::vector<State> offset(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i]->alphabet != m.alphabet)
            throw std::invalid_argument("union: alphabet mismatch");
        offset[i] = static_cast<State>(m.states.size());
        for (const auto& n : parts[i]->states) m.states.push_back(tags[i] + n);
        for (const auto& [q, w] : parts[i]->initial) m.initial.push_back({q + offset[i], w});
        for (const auto& t : parts[i]->transitions)
            m.transitions.push_back({t.from + offset[i], t.letter, t.to + offset[i], t.weight});
        for (const auto& [q, w] : parts[i]->final_weights)
            m.final_weights.push_back({q + offset[i], w});
    }
    m.sort_all();
    return m;
}

void require_deterministic(const MkAutomaton& a, const char* op) {
    if (!is_deterministic(a))
        throw std::invalid_argument(std::string(op) +
                                    " requires a deterministic automaton operand");
}

} // namespace

MkAutomaton disjunction(const MkAutomaton& a1, const MkAutomaton& a2) {
    if (a1.alphabet != a2.alphabet)
        throw std::invalid_argument("disjunction: alphabet mismatch");
    return ordered_union({&a1, &a2}, {"l:", "r:"});
}

MkAutomaton conj_char(const Dfa& d, const MkAutomaton& a) {
    if (d.alphabet != a.alphabet)
        throw std::invalid_argument("conj-char: alphabet mismatch");
    MkAutomaton m;
    m.alphabet = a.alphabet;
    // full product; second component major so the pair order follows a's
    std::size_t n1 = d.states.size(), n2 = a.states.size();
    auto idx = [&](State q1, State q2) { return static_cast<State>(q2 * n1 + q1); };
    m.states.resize(n1 * n2);
    for (State q2 = 0; q2 < n2; ++q2)
        for (State q1 = 0; q1 < n1; ++q1)
            m.states[idx(q1, q2)] = "(" + d.states[q1] + "," + a.states[q2] + ")";
    if (d.initial)
        for (const auto& [q2, w] : a.initial) m.initial.push_back({idx(*d.initial, q2), w});
    for (const auto& td : d.transitions)
        for (const auto& ta : a.transitions)
            if (td.letter == ta.letter)
                m.transitions.push_back(
                    {idx(td.from, ta.from), ta.letter, idx(td.to, ta.to), ta.weight});
    for (State f1 : d.final_states)
        for (const auto& [f2, w] : a.final_weights) m.final_weights.push_back({idx(f1, f2), w});
    m.sort_all();
    return m;
}

MkAutomaton hom_image(const MkAutomaton& a, const StrictAlphabeticHom& h) {
    if (a.alphabet != h.source)
        throw std::invalid_argument("hom-image: automaton is not over the hom source");
    if (a.alphabet.size() == 0) throw std::invalid_argument("hom-image: empty source alphabet");
    MkAutomaton m;
    m.alphabet = h.target;
    std::size_t nq = a.states.size(), na = a.alphabet.size();
    auto idx = [&](Letter x, State q) { return static_cast<State>(x * nq + q); };
    m.states.resize(na * nq);
    for (Letter x = 0; x < na; ++x)
        for (State q = 0; q < nq; ++q)
            m.states[idx(x, q)] = a.alphabet.letters[x] + ":" + a.states[q];
    for (const auto& [q, w] : a.initial) m.initial.push_back({idx(0, q), w});
    for (const auto& t : a.transitions)
        for (Letter x = 0; x < na; ++x)
            m.transitions.push_back({idx(x, t.from), h.map[t.letter], idx(t.letter, t.to),
                                     t.weight});
    for (Letter x = 0; x < na; ++x)
        for (const auto& [f, w] : a.final_weights) m.final_weights.push_back({idx(x, f), w});
    m.sort_all();
    return m;
}

MkAutomaton inv_hom(const MkAutomaton& a, const StrictAlphabeticHom& h) {
    if (a.alphabet != h.target)
        throw std::invalid_argument("inv-hom: automaton is not over the hom target");
    MkAutomaton m;
    m.states = a.states;
    m.alphabet = h.source;
    m.initial = a.initial;
    m.final_weights = a.final_weights;
    for (Letter x = 0; x < h.source.size(); ++x)
        for (const auto& t : a.transitions)
            if (t.letter == h.map[x]) m.transitions.push_back({t.from, x, t.to, t.weight});
    m.sort_all();
    return m;
}

MkAutomaton scalar_right(const MkAutomaton& a, const TruthValue& k) {
    require_deterministic(a, "scalar-right");
    MkAutomaton m = a;
    for (auto& [q, w] : m.final_weights) w = conj(w, k);
    return m;
}

ScalarLeftResult scalar_left(const TruthValue& k, const MkAutomaton& a) {
    require_deterministic(a, "scalar-left");
    ScalarLeftResult r;
    r.automaton = a;
    if (!r.automaton.initial.empty()) {
        TruthValue w = conj(k, r.automaton.initial[0].second);
        if (w == truth_zero()) {
            r.automaton.initial.clear();
            r.initial_removed = true;
        } else {
            r.automaton.initial[0].second = w;
        }
    }
    r.discrepancy_domain = complement(determinize(underlying_nfa(a)));
    return r;
}

MkAutomaton normalize(const MkAutomaton& a) {
    require_deterministic(a, "normalize");
    MkAutomaton m;
    m.alphabet = a.alphabet;
    std::size_t n = a.states.size();
    // order: q, fin-copy of q (when final), ..., fresh initial last
    std::vector<State> orig(n), fin(n, 0);
    for (State q = 0; q < n; ++q) {
        orig[q] = static_cast<State>(m.states.size());
        m.states.push_back("st:" + a.states[q]);
        if (a.final_weight(q)) {
            fin[q] = static_cast<State>(m.states.size());
            m.states.push_back("fin:" + a.states[q]);
        }
    }
    State qin = static_cast<State>(m.states.size());
    m.states.push_back("in:");
    m.initial.push_back({qin, truth_one()});
    for (State q = 0; q < n; ++q)
        if (a.final_weight(q)) m.final_weights.push_back({fin[q], truth_one()});

    for (const auto& t : a.transitions) {
        m.transitions.push_back({orig[t.from], t.letter, orig[t.to], t.weight});
        if (const TruthValue* ter = a.final_weight(t.to))
            m.transitions.push_back({orig[t.from], t.letter, fin[t.to], conj(t.weight, *ter)});
    }
    if (!a.initial.empty()) {
        State q0 = a.initial[0].first;
        const TruthValue& in0 = a.initial[0].second;
        for (const auto& t : a.transitions) {
            if (t.from != q0) continue;
            m.transitions.push_back({qin, t.letter, orig[t.to], conj(in0, t.weight)});
            if (const TruthValue* ter = a.final_weight(t.to))
                m.transitions.push_back(
                    {qin, t.letter, fin[t.to], conj(conj(in0, t.weight), *ter)});
        }
    }
    m.sort_all();
    return m;
}

MkAutomaton scalar_right_normalized(const MkAutomaton& a, const TruthValue& k) {
    if (!is_normalized(a) || !is_unambiguous(a))
        throw std::invalid_argument(
            "scalar-right-normalized requires a normalized unambiguous automaton");
    MkAutomaton m = a;
    for (auto& t : m.transitions)
        if (m.final_weight(t.to)) t.weight = conj(t.weight, k);
    return m;
}

Dfa strong_support(const MkAutomaton& a) {
    require_deterministic(a, "support");
    Dfa d;
    d.states = a.states;
    d.alphabet = a.alphabet;
    if (!a.initial.empty() && a.initial[0].second.t > 0) d.initial = a.initial[0].first;
    for (const auto& t : a.transitions)
        if (t.weight.t > 0) d.transitions.push_back({t.from, t.letter, t.to});
    for (const auto& [q, w] : a.final_weights)
        if (w.t > 0) d.final_states.push_back(q);
    d.sort_all();
    d.complete = false;
    return d;
}

MkAutomaton in_ter_one(const MkAutomaton& a) {
    // already unit-weighted: the copy construction would only rename
    bool unit = true;
    for (const auto& [q, w] : a.initial)
        if (!(w == truth_one())) unit = false;
    for (const auto& [q, w] : a.final_weights)
        if (!(w == truth_one())) unit = false;
    if (unit) return a;

    MkAutomaton m;
    m.alphabet = a.alphabet;
    std::size_t n = a.states.size();
    std::vector<State> ini(n, 0), orig(n), fin(n, 0);
    for (State q = 0; q < n; ++q) {
        if (a.initial_weight(q)) {
            ini[q] = static_cast<State>(m.states.size());
            m.states.push_back("ini:" + a.states[q]);
        }
        orig[q] = static_cast<State>(m.states.size());
        m.states.push_back("st:" + a.states[q]);
        if (a.final_weight(q)) {
            fin[q] = static_cast<State>(m.states.size());
            m.states.push_back("fin:" + a.states[q]);
        }
    }
    for (const auto& [q, w] : a.initial) m.initial.push_back({ini[q], truth_one()});
    for (const auto& [q, w] : a.final_weights) m.final_weights.push_back({fin[q], truth_one()});

    for (const auto& t : a.transitions) {
        const TruthValue* in0 = a.initial_weight(t.from);
        const TruthValue* ter = a.final_weight(t.to);
        m.transitions.push_back({orig[t.from], t.letter, orig[t.to], t.weight});
        if (ter)
            m.transitions.push_back({orig[t.from], t.letter, fin[t.to], conj(t.weight, *ter)});
        if (in0)
            m.transitions.push_back({ini[t.from], t.letter, orig[t.to], conj(*in0, t.weight)});
        if (in0 && ter)
            m.transitions.push_back(
                {ini[t.from], t.letter, fin[t.to], conj(conj(*in0, t.weight), *ter)});
    }
    m.sort_all();
    return m;
}

namespace {

// Complete DFA for the words with no accepting path, empty word excluded.
Dfa dead_word_dfa(const MkAutomaton& a) {
    return strip_epsilon(complement(determinize(underlying_nfa(a))));
}

} // namespace

MkAutomaton cauchy(const MkAutomaton& a1, const MkAutomaton& a2) {
    if (a1.alphabet != a2.alphabet) throw std::invalid_argument("cauchy: alphabet mismatch");
    require_deterministic(a1, "cauchy");
    require_deterministic(a2, "cauchy");

    const TruthValue r_eps = behavior(a1, {});
    const TruthValue s_eps = behavior(a2, {});
    const MkAutomaton A1 = normalize(a1);
    const MkAutomaton A2 = normalize(a2);
    const Dfa dead2 = dead_word_dfa(a2); // suffixes with no path, over A+

    // middle: splits u,v in A+; concatenation of A1 (final part cut) with
    // A2, plus a zero-weighted branch over the path-less suffixes so every
    // split contributes its exact term.
    MkAutomaton mid;
    mid.alphabet = a1.alphabet;
    std::size_t n2 = A2.states.size();
    // order: A2 block, dead block, then A1 block (non-final states only)
    for (const auto& s : A2.states) mid.states.push_back("s:" + s);
    for (const auto& s : dead2.states) mid.states.push_back("d:" + s);
    std::vector<State> a1_idx(A1.states.size(), 0);
    std::vector<bool> a1_kept(A1.states.size(), false);
    for (State q = 0; q < A1.states.size(); ++q) {
        if (A1.final_weight(q)) continue;
        a1_kept[q] = true;
        a1_idx[q] = static_cast<State>(mid.states.size());
        mid.states.push_back("r:" + A1.states[q]);
    }
    State qin1 = a1_idx[A1.initial[0].first];
    mid.initial.push_back({qin1, truth_one()});
    State qin2 = A2.initial[0].first; // block offset 0
    std::optional<State> dinit;
    if (dead2.initial) dinit = static_cast<State>(n2 + *dead2.initial);
    for (const auto& t : A2.transitions)
        mid.transitions.push_back({t.from, t.letter, t.to, t.weight});
    for (const auto& t : dead2.transitions)
        mid.transitions.push_back({static_cast<State>(n2 + t.from), t.letter,
                                   static_cast<State>(n2 + t.to), truth_zero()});
    for (const auto& t : A1.transitions) {
        if (!a1_kept[t.from]) continue; // normalized: finals have no outgoing anyway
        if (a1_kept[t.to]) {
            mid.transitions.push_back({a1_idx[t.from], t.letter, a1_idx[t.to], t.weight});
        } else {
            mid.transitions.push_back({a1_idx[t.from], t.letter, qin2, t.weight});
            if (dinit) mid.transitions.push_back({a1_idx[t.from], t.letter, *dinit, t.weight});
        }
    }
    for (const auto& [f, w] : A2.final_weights) mid.final_weights.push_back({f, w});
    for (State f : dead2.final_states)
        mid.final_weights.push_back({static_cast<State>(n2 + f), truth_one()});
    mid.sort_all();

    // split at 0: r(eps) conj s, live part via the scalar construction,
    // path-less words via a constant over the dead-word language
    MkAutomaton a3 = normalize(scalar_left(r_eps, a2).automaton);
    TruthValue c0 = conj(r_eps, truth_zero());
    bool with_dead0 = c0 != truth_zero();
    MkAutomaton dead0;
    if (with_dead0) dead0 = conj_char(dead2, const_automaton(c0, a2.alphabet));

    // split at |w|: r conj s(eps)
    MkAutomaton last = scalar_right_normalized(A1, s_eps);

    // epsilon term
    TruthValue v_eps = conj(r_eps, s_eps);
    MkAutomaton eps;
    bool with_eps = v_eps != truth_zero();
    if (with_eps) {
        eps.alphabet = a1.alphabet;
        eps.states = {"eps"};
        eps.initial.push_back({0, v_eps});
        eps.final_weights.push_back({0, truth_one()});
    }

    std::vector<const MkAutomaton*> parts;
    std::vector<std::string> tags;
    std::size_t pi = 0;
    auto add = [&](const MkAutomaton* p) {
        parts.push_back(p);
        tags.push_back("p" + std::to_string(pi++) + ":");
    };
    if (with_eps) add(&eps);
    add(&a3);
    if (with_dead0) add(&dead0);
    add(&mid);
    add(&last);
    return ordered_union(parts, tags);
}

NivatData nivat_decompose(const MkAutomaton& a) {
    if (behavior(a, {}) != truth_zero())
        throw std::invalid_argument(
            "nivat-decompose requires behavior ZERO at the empty word");
    MkAutomaton b = in_ter_one(a);
    NivatData n;
    for (std::size_t i = 0; i < b.transitions.size(); ++i) {
        const auto& t = b.transitions[i];
        n.inner.letters.push_back("t" + std::to_string(i) + ":(" + b.states[t.from] + "," +
                                  b.alphabet.letters[t.letter] + "," + b.states[t.to] + ")");
        n.letter_weight.push_back(t.weight);
        n.hom.map.push_back(t.letter);
    }
    n.hom.source = n.inner;
    n.hom.target = b.alphabet;

    n.language.states = b.states;
    n.language.alphabet = n.inner;
    for (const auto& [q, w] : b.initial) n.language.initial.push_back(q);
    for (const auto& [q, w] : b.final_weights) n.language.final_states.push_back(q);
    for (std::size_t i = 0; i < b.transitions.size(); ++i)
        n.language.transitions.push_back(
            {b.transitions[i].from, static_cast<Letter>(i), b.transitions[i].to});
    n.language.sort_all();
    return n;
}

MkAutomaton nivat_compose(const NivatData& n) {
    if (n.inner.size() == 0) {
        // no transitions decomposed: the language is empty, behavior ZERO
        MkAutomaton empty;
        empty.alphabet = n.hom.target;
        return empty;
    }
    // one-state automaton realizing the letterwise weighting
    MkAutomaton g;
    g.states = {"g"};
    g.alphabet = n.inner;
    g.initial.push_back({0, truth_one()});
    g.final_weights.push_back({0, truth_one()});
    for (Letter b = 0; b < n.inner.size(); ++b)
        g.transitions.push_back({0, b, 0, n.letter_weight[b]});
    g.sort_all();
    return hom_image(conj_char(determinize(n.language), g), n.hom);
}

} // namespace mkfa
