#include "mkfa/format.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace mkfa {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct Line {
    std::vector<std::string> fields;
    std::size_t number;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw FormatError("line " + std::to_string(line) + ": " + msg);
}

} // namespace

ParsedAutomaton parse_automaton(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t num = 0;
    while (std::getline(in, raw)) {
        ++num;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto fields = split_ws(raw);
        if (!fields.empty()) lines.push_back({std::move(fields), num});
    }
    if (lines.empty()) throw FormatError("empty automaton file");
    std::size_t li = 0;
    auto& header = lines[li];
    if (header.fields.size() != 2 || header.fields[0] != "mkfa" || header.fields[1] != "1")
        fail(header.number, "expected header 'mkfa 1'");
    ++li;
    if (li >= lines.size() || lines[li].fields.size() != 2 || lines[li].fields[0] != "kind")
        fail(lines[std::min(li, lines.size() - 1)].number, "expected 'kind mk|classical'");
    std::string kind = lines[li].fields[1];
    if (kind != "mk" && kind != "classical") fail(lines[li].number, "unknown kind " + kind);
    ++li;

    Alphabet alphabet;
    std::vector<std::string> states;
    std::map<std::string, State> state_index;
    bool mk = kind == "mk";

    ParsedAutomaton out;
    out.kind = mk ? ParsedAutomaton::Kind::Mk : ParsedAutomaton::Kind::Classical;

    auto lookup_state = [&](const std::string& name, std::size_t ln) {
        auto it = state_index.find(name);
        if (it == state_index.end()) fail(ln, "unknown state '" + name + "'");
        return it->second;
    };
    auto lookup_letter = [&](const std::string& name, std::size_t ln) {
        auto l = alphabet.find(name);
        if (!l) fail(ln, "letter '" + name + "' is not in the alphabet");
        return *l;
    };
    auto parse_weight = [&](const std::vector<std::string>& f, std::size_t want,
                            std::size_t ln) -> TruthValue {
        if (!mk) {
            if (f.size() != want) fail(ln, "classical records carry no weight");
            return truth_one();
        }
        if (f.size() != want + 1) fail(ln, "mk records need a truth literal");
        try {
            return parse_truth(f[want]);
        } catch (const std::invalid_argument& e) {
            fail(ln, e.what());
        }
    };

    for (; li < lines.size(); ++li) {
        const auto& f = lines[li].fields;
        std::size_t ln = lines[li].number;
        const std::string& tag = f[0];
        if (tag == "alphabet") {
            if (!alphabet.letters.empty()) fail(ln, "duplicate alphabet line");
            if (f.size() < 2) fail(ln, "alphabet must not be empty");
            for (std::size_t k = 1; k < f.size(); ++k) {
                if (alphabet.find(f[k])) fail(ln, "duplicate letter " + f[k]);
                alphabet.letters.push_back(f[k]);
            }
        } else if (tag == "state") {
            if (f.size() != 2) fail(ln, "state lines look like: state <name>");
            if (state_index.count(f[1])) fail(ln, "duplicate state '" + f[1] + "'");
            state_index[f[1]] = static_cast<State>(states.size());
            states.push_back(f[1]);
        } else if (tag == "initial") {
            if (f.size() < 2) fail(ln, "initial needs a state");
            State q = lookup_state(f[1], ln);
            TruthValue w = parse_weight(f, 2, ln);
            if (mk)
                out.mk.initial.push_back({q, w});
            else
                out.classical.initial.push_back(q);
        } else if (tag == "trans") {
            if (f.size() < 4) fail(ln, "trans lines look like: trans <from> <letter> <to>");
            State from = lookup_state(f[1], ln);
            Letter l = lookup_letter(f[2], ln);
            State to = lookup_state(f[3], ln);
            TruthValue w = parse_weight(f, 4, ln);
            if (mk)
                out.mk.transitions.push_back({from, l, to, w});
            else
                out.classical.transitions.push_back({from, l, to});
        } else if (tag == "final") {
            if (f.size() < 2) fail(ln, "final needs a state");
            State q = lookup_state(f[1], ln);
            TruthValue w = parse_weight(f, 2, ln);
            if (mk)
                out.mk.final_weights.push_back({q, w});
            else
                out.classical.final_states.push_back(q);
        } else {
            fail(ln, "unknown record '" + tag + "'");
        }
    }
    if (alphabet.letters.empty()) throw FormatError("missing alphabet line");
    if (mk) {
        out.mk.states = std::move(states);
        out.mk.alphabet = std::move(alphabet);
        out.mk.sort_all();
    } else {
        out.classical.states = std::move(states);
        out.classical.alphabet = std::move(alphabet);
        out.classical.sort_all();
    }
    return out;
}

ParsedAutomaton parse_automaton_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_automaton(buf.str());
}

namespace {

void emit_header(std::string& s, const char* kind, const Alphabet& a,
                 const std::vector<std::string>& states) {
    s += "mkfa 1\n";
    s += "kind ";
    s += kind;
    s += '\n';
    s += "alphabet";
    for (const auto& l : a.letters) s += " " + l;
    s += '\n';
    for (const auto& st : states) s += "state " + st + "\n";
}

} // namespace

std::string serialize(const MkAutomaton& a) {
    MkAutomaton c = a;
    c.sort_all();
    std::string s;
    emit_header(s, "mk", c.alphabet, c.states);
    for (const auto& [q, w] : c.initial) s += "initial " + c.states[q] + " " + w.str() + "\n";
    for (const auto& t : c.transitions)
        s += "trans " + c.states[t.from] + " " + c.alphabet.letters[t.letter] + " " +
             c.states[t.to] + " " + t.weight.str() + "\n";
    for (const auto& [q, w] : c.final_weights)
        s += "final " + c.states[q] + " " + w.str() + "\n";
    return s;
}

std::string serialize(const Nfa& n) {
    Nfa c = n;
    c.sort_all();
    std::string s;
    emit_header(s, "classical", c.alphabet, c.states);
    for (State q : c.initial) s += "initial " + c.states[q] + "\n";
    for (const auto& t : c.transitions)
        s += "trans " + c.states[t.from] + " " + c.alphabet.letters[t.letter] + " " +
             c.states[t.to] + "\n";
    for (State q : c.final_states) s += "final " + c.states[q] + "\n";
    return s;
}

std::string serialize(const Dfa& d) { return serialize(nfa_of_dfa(d)); }

Dfa to_dfa(const Nfa& n) {
    // structurally deterministic files keep their states; anything else
    // goes through the subset construction
    bool det = n.initial.size() <= 1;
    for (std::size_t i = 1; det && i < n.transitions.size(); ++i)
        if (n.transitions[i].from == n.transitions[i - 1].from &&
            n.transitions[i].letter == n.transitions[i - 1].letter)
            det = false;
    if (!det) return determinize(n);
    Dfa d;
    d.states = n.states;
    d.alphabet = n.alphabet;
    if (!n.initial.empty()) d.initial = n.initial[0];
    d.transitions = n.transitions;
    d.final_states = n.final_states;
    d.sort_all();
    d.complete = true;
    for (State q = 0; q < d.states.size() && d.complete; ++q)
        for (Letter l = 0; l < d.alphabet.size(); ++l)
            if (!d.target(q, l)) {
                d.complete = false;
                break;
            }
    return d;
}

} // namespace mkfa
