#include "mkfa/classical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mkfa {

std::optional<Letter> Alphabet::find(const std::string& token) const {
    for (std::size_t i = 0; i < letters.size(); ++i)
        if (letters[i] == token) return static_cast<Letter>(i);
    return std::nullopt;
}

Word word_from_string(const Alphabet& a, const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) tokens.push_back(cur), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(cur);

    Word w;
    if (tokens.size() == 1 && !a.find(tokens[0])) {
        bool single_char = std::all_of(a.letters.begin(), a.letters.end(),
                                       [](const std::string& s) { return s.size() == 1; });
        if (single_char) {
            for (char c : tokens[0]) {
                auto l = a.find(std::string(1, c));
                if (!l) throw ForeignLetterError("letter '" + std::string(1, c) +
                                                 "' is not in the alphabet");
                w.push_back(*l);
            }
            return w;
        }
    }
    for (const auto& t : tokens) {
        auto l = a.find(t);
        if (!l) throw ForeignLetterError("letter '" + t + "' is not in the alphabet");
        w.push_back(*l);
    }
    return w;
}

std::string word_str(const Alphabet& a, const Word& w) {
    if (w.empty()) return "";
    bool single_char = std::all_of(a.letters.begin(), a.letters.end(),
                                   [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single_char) out += ' ';
        out += a.letters[w[i]];
    }
    return out;
}

std::vector<Word> enumerate_words(const Alphabet& a, std::size_t maxlen) {
    std::vector<Word> out;
    out.push_back({});
    std::size_t n = a.size();
    for (std::size_t len = 1; len <= maxlen && n > 0; ++len) {
        Word w(len, 0);
        while (true) {
            out.push_back(w);
            std::size_t i = len;
            while (i > 0) {
                if (++w[i - 1] < n) break;
                w[i - 1] = 0;
                --i;
            }
            if (i == 0) break;
        }
    }
    return out;
}

void Nfa::sort_all() {
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    std::sort(final_states.begin(), final_states.end());
    final_states.erase(std::unique(final_states.begin(), final_states.end()),
                       final_states.end());
}

std::vector<State> Nfa::targets(State from, Letter letter) const {
    std::vector<State> out;
    Transition lo{from, letter, 0};
    auto it = std::lower_bound(transitions.begin(), transitions.end(), lo);
    for (; it != transitions.end() && it->from == from && it->letter == letter; ++it)
        out.push_back(it->to);
    return out;
}

void Dfa::sort_all() {
    std::sort(transitions.begin(), transitions.end());
    std::sort(final_states.begin(), final_states.end());
}

std::optional<State> Dfa::target(State from, Letter letter) const {
    Transition lo{from, letter, 0};
    auto it = std::lower_bound(transitions.begin(), transitions.end(), lo);
    if (it != transitions.end() && it->from == from && it->letter == letter) return it->to;
    return std::nullopt;
}

bool Dfa::is_final(State q) const {
    return std::binary_search(final_states.begin(), final_states.end(), q);
}

namespace {

void check_word(const Alphabet& a, const Word& w) {
    for (Letter l : w)
        if (l >= a.size()) throw ForeignLetterError("letter index out of range");
}

bool dfa_is_complete(const Dfa& d) {
    for (State q = 0; q < d.states.size(); ++q)
        for (Letter l = 0; l < d.alphabet.size(); ++l)
            if (!d.target(q, l)) return false;
    return true;
}

std::string set_name(const std::vector<std::string>& names, const std::vector<State>& set) {
    std::string s = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) s += ',';
        s += names[set[i]];
    }
    return s + "}";
}

} // namespace

bool accepts(const Dfa& d, const Word& w) {
    check_word(d.alphabet, w);
    if (!d.initial) return false;
    State q = *d.initial;
    for (Letter l : w) {
        auto t = d.target(q, l);
        if (!t) return false;
        q = *t;
    }
    return d.is_final(q);
}

bool accepts(const Nfa& n, const Word& w) {
    check_word(n.alphabet, w);
    std::vector<State> cur = n.initial;
    for (Letter l : w) {
        std::set<State> next;
        for (State q : cur)
            for (State t : n.targets(q, l)) next.insert(t);
        cur.assign(next.begin(), next.end());
        if (cur.empty()) return false;
    }
    for (State q : cur)
        if (std::binary_search(n.final_states.begin(), n.final_states.end(), q)) return true;
    return false;
}

Nfa nfa_of_dfa(const Dfa& d) {
    Nfa n;
    n.states = d.states;
    n.alphabet = d.alphabet;
    if (d.initial) n.initial = {*d.initial};
    n.transitions = d.transitions;
    n.final_states = d.final_states;
    n.sort_all();
    return n;
}

Dfa determinize(const Nfa& n) {
    std::map<std::vector<State>, std::size_t> seen; // subset -> discovery index
    std::vector<std::vector<State>> subsets;
    auto intern = [&](const std::vector<State>& s) {
        auto [it, fresh] = seen.emplace(s, subsets.size());
        if (fresh) subsets.push_back(s);
        return it->second;
    };

    std::vector<State> start = n.initial;
    std::sort(start.begin(), start.end());
    intern(start);
    // worklist over discovery order; map keeps subsets unique
    std::vector<std::vector<std::size_t>> delta; // by discovery index, per letter
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        delta.emplace_back();
        for (Letter l = 0; l < n.alphabet.size(); ++l) {
            std::set<State> next;
            for (State q : subsets[i])
                for (State t : n.targets(q, l)) next.insert(t);
            delta[i].push_back(intern(std::vector<State>(next.begin(), next.end())));
        }
    }

    // canonical order: sorted member lists, lexicographically
    std::vector<std::size_t> order(subsets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return subsets[a] < subsets[b]; });
    std::vector<State> rank(subsets.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<State>(i);

    Dfa d;
    d.alphabet = n.alphabet;
    d.states.resize(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        d.states[rank[i]] = set_name(n.states, subsets[i]);
    d.initial = rank[0];
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (Letter l = 0; l < n.alphabet.size(); ++l)
            d.transitions.push_back({rank[i], l, rank[delta[i][l]]});
        bool fin = std::any_of(subsets[i].begin(), subsets[i].end(), [&](State q) {
            return std::binary_search(n.final_states.begin(), n.final_states.end(), q);
        });
        if (fin) d.final_states.push_back(rank[i]);
    }
    d.sort_all();
    d.complete = true;
    return d;
}

namespace {

Dfa pair_dfa(const Dfa& d1, const Dfa& d2, bool final_or) {
    if (!d1.initial || !d2.initial) {
        // no joint start; fall back to an explicit empty-language machine
        Dfa d;
        d.alphabet = d1.alphabet;
        if (final_or) {
            if (d1.initial) return d1;
            if (d2.initial) return d2;
        }
        d.states = {"empty"};
        d.initial = 0;
        for (Letter l = 0; l < d.alphabet.size(); ++l) d.transitions.push_back({0, l, 0});
        d.complete = true;
        return d;
    }
    std::map<std::pair<State, State>, std::size_t> seen;
    std::vector<std::pair<State, State>> pairs;
    auto intern = [&](std::pair<State, State> p) {
        auto [it, fresh] = seen.emplace(p, pairs.size());
        if (fresh) pairs.push_back(p);
        return it->second;
    };
    intern({*d1.initial, *d2.initial});
    std::vector<std::vector<std::optional<std::size_t>>> delta;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        delta.emplace_back();
        for (Letter l = 0; l < d1.alphabet.size(); ++l) {
            auto t1 = d1.target(pairs[i].first, l);
            auto t2 = d2.target(pairs[i].second, l);
            if (t1 && t2)
                delta[i].push_back(intern({*t1, *t2}));
            else
                delta[i].push_back(std::nullopt);
        }
    }
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pairs[a] < pairs[b]; });
    std::vector<State> rank(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<State>(i);

    Dfa d;
    d.alphabet = d1.alphabet;
    d.states.resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        d.states[rank[i]] =
            "(" + d1.states[pairs[i].first] + "," + d2.states[pairs[i].second] + ")";
    d.initial = rank[0];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (Letter l = 0; l < d1.alphabet.size(); ++l)
            if (delta[i][l]) d.transitions.push_back({rank[i], l, rank[*delta[i][l]]});
        bool f1 = d1.is_final(pairs[i].first), f2 = d2.is_final(pairs[i].second);
        if (final_or ? (f1 || f2) : (f1 && f2)) d.final_states.push_back(rank[i]);
    }
    d.sort_all();
    d.complete = dfa_is_complete(d);
    return d;
}

} // namespace

Dfa product(const Dfa& d1, const Dfa& d2) {
    if (d1.alphabet != d2.alphabet)
        throw std::invalid_argument("product: alphabet mismatch");
    return pair_dfa(d1, d2, false);
}

namespace {

Dfa completed(const Dfa& d) {
    if (dfa_is_complete(d) && d.initial) {
        Dfa c = d;
        c.complete = true;
        return c;
    }
    Dfa c = d;
    State sink = static_cast<State>(c.states.size());
    c.states.push_back("sink");
    if (!c.initial) c.initial = sink;
    std::vector<Transition> added;
    for (State q = 0; q <= sink; ++q)
        for (Letter l = 0; l < c.alphabet.size(); ++l)
            if (!c.target(q, l)) added.push_back({q, l, sink});
    c.transitions.insert(c.transitions.end(), added.begin(), added.end());
    c.sort_all();
    c.complete = true;
    return c;
}

} // namespace

Dfa complement(const Dfa& d) {
    Dfa c = completed(d);
    std::vector<State> flipped;
    for (State q = 0; q < c.states.size(); ++q)
        if (!c.is_final(q)) flipped.push_back(q);
    c.final_states = std::move(flipped);
    return c;
}

Dfa unite(const Dfa& d1, const Dfa& d2) {
    if (d1.alphabet != d2.alphabet) throw std::invalid_argument("union: alphabet mismatch");
    return pair_dfa(completed(d1), completed(d2), true);
}

Dfa strip_epsilon(const Dfa& d) {
    if (!d.initial || !d.is_final(*d.initial)) return d;
    Dfa c = d;
    State fresh = static_cast<State>(c.states.size());
    c.states.push_back("^" + d.states[*d.initial]);
    for (Letter l = 0; l < c.alphabet.size(); ++l)
        if (auto t = d.target(*d.initial, l)) c.transitions.push_back({fresh, l, *t});
    c.initial = fresh;
    c.sort_all();
    c.complete = dfa_is_complete(c);
    return c;
}

bool language_equal_upto(const Dfa& d1, const Dfa& d2, std::size_t maxlen) {
    for (const Word& w : enumerate_words(d1.alphabet, maxlen))
        if (accepts(d1, w) != accepts(d2, w)) return false;
    return true;
}

// ---------------------------------------------------------------------

std::size_t ExtAlphabet::row_index(const std::string& var) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i] == var) return i;
    throw std::invalid_argument("variable '" + var + "' has no row in this alphabet");
}

bool ExtAlphabet::row_is_first_order(std::size_t i) const {
    const std::string& v = rows[i];
    return !v.empty() && v[0] >= 'a' && v[0] <= 'z';
}

namespace {

std::string ext_token(const Alphabet& base, const ExtLetter& l, std::size_t nrows) {
    if (nrows == 0) return base.letters[l.base];
    std::string s = base.letters[l.base];
    s += '|';
    for (std::size_t i = 0; i < nrows; ++i) s += ((l.bits >> i) & 1u) ? '1' : '0';
    return s;
}

void rebuild_flat(ExtAlphabet& e) {
    e.flat.letters.clear();
    for (const auto& l : e.letters) e.flat.letters.push_back(ext_token(e.base, l, e.rows.size()));
}

} // namespace

ExtAlphabet ext_base(const Alphabet& a) {
    ExtAlphabet e;
    e.base = a;
    for (Letter l = 0; l < a.size(); ++l) e.letters.push_back({l, 0});
    rebuild_flat(e);
    return e;
}

ExtAlphabet ext_extend(const ExtAlphabet& a, const std::string& var) {
    if (a.rows.size() >= 31) throw std::invalid_argument("too many variable rows");
    ExtAlphabet e;
    e.base = a.base;
    e.rows = a.rows;
    e.rows.push_back(var);
    std::uint32_t mask = 1u << a.rows.size();
    for (const auto& l : a.letters) {
        e.letters.push_back({l.base, l.bits | mask}); // var = 1 first
        e.letters.push_back({l.base, l.bits});
    }
    rebuild_flat(e);
    return e;
}

ExtAlphabet ext_canonical(const Alphabet& a, const std::vector<std::string>& vars) {
    ExtAlphabet e = ext_base(a);
    for (const auto& v : vars) e = ext_extend(e, v);
    return e;
}

std::pair<Nfa, ExtAlphabet> project(const Nfa& n, const ExtAlphabet& ext,
                                    const std::string& var) {
    std::size_t r = ext.row_index(var);
    ExtAlphabet out;
    out.base = ext.base;
    for (std::size_t i = 0; i < ext.rows.size(); ++i)
        if (i != r) out.rows.push_back(ext.rows[i]);
    std::uint32_t low = (1u << r) - 1;
    std::vector<Letter> letter_map(ext.letters.size());
    for (std::size_t i = 0; i < ext.letters.size(); ++i) {
        const auto& l = ext.letters[i];
        ExtLetter reduced{l.base,
                          (l.bits & low) | ((l.bits >> (r + 1)) << r)};
        Letter idx = 0;
        bool found = false;
        for (; idx < out.letters.size(); ++idx)
            if (out.letters[idx] == reduced) {
                found = true;
                break;
            }
        if (!found) {
            idx = static_cast<Letter>(out.letters.size());
            out.letters.push_back(reduced);
        }
        letter_map[i] = idx;
    }
    rebuild_flat(out);

    Nfa m;
    m.states = n.states;
    m.alphabet = out.flat;
    m.initial = n.initial;
    m.final_states = n.final_states;
    for (const auto& t : n.transitions)
        m.transitions.push_back({t.from, letter_map[t.letter], t.to});
    m.sort_all();
    return {std::move(m), std::move(out)};
}

Dfa valid_assignments_dfa(const ExtAlphabet& ext) {
    std::vector<std::size_t> fo_rows;
    for (std::size_t i = 0; i < ext.rows.size(); ++i)
        if (ext.row_is_first_order(i)) fo_rows.push_back(i);

    Dfa d;
    d.alphabet = ext.flat;
    std::size_t k = fo_rows.size();
    std::size_t nmask = std::size_t{1} << k;
    State dead = static_cast<State>(nmask);
    for (std::size_t m = 0; m < nmask; ++m) d.states.push_back("v" + std::to_string(m));
    d.states.push_back("dead");
    d.initial = 0;
    for (std::size_t m = 0; m <= nmask; ++m) {
        for (Letter l = 0; l < ext.letters.size(); ++l) {
            if (m == nmask) {
                d.transitions.push_back({dead, l, dead});
                continue;
            }
            std::size_t next = m;
            bool ok = true;
            for (std::size_t j = 0; j < k; ++j) {
                if (ext.bit(l, fo_rows[j])) {
                    if (next & (std::size_t{1} << j)) {
                        ok = false;
                        break;
                    }
                    next |= std::size_t{1} << j;
                }
            }
            d.transitions.push_back(
                {static_cast<State>(m), l, ok ? static_cast<State>(next) : dead});
        }
    }
    d.final_states = {static_cast<State>(nmask - 1)};
    d.sort_all();
    d.complete = true;
    return d;
}

} // namespace mkfa
