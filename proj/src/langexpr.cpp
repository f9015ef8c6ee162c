#include "mkfa/langexpr.hpp"

#include <cctype>
#include <stdexcept>

namespace mkfa {

namespace {

LangExprPtr make(LangExpr e) { return std::make_shared<LangExpr>(std::move(e)); }

void require_same(const Alphabet& a, const Alphabet& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": alphabet mismatch");
}

} // namespace

LangExprPtr le_behavior(MkAutomaton a) {
    LangExpr e;
    e.kind = LangExpr::Kind::Behavior;
    e.alphabet = a.alphabet;
    e.automaton = std::move(a);
    return make(std::move(e));
}

LangExprPtr le_const(TruthValue k, Alphabet a) {
    if (a.size() == 0) throw std::invalid_argument("constant language needs an alphabet");
    LangExpr e;
    e.kind = LangExpr::Kind::Constant;
    e.alphabet = std::move(a);
    e.k = std::move(k);
    return make(std::move(e));
}

LangExprPtr le_char(Dfa d) {
    LangExpr e;
    e.kind = LangExpr::Kind::CharOfDfa;
    e.alphabet = d.alphabet;
    e.dfa = std::move(d);
    return make(std::move(e));
}

LangExprPtr le_word(Word w, Alphabet a) {
    for (Letter l : w)
        if (l >= a.size()) throw ForeignLetterError("word letter outside the alphabet");
    LangExpr e;
    e.kind = LangExpr::Kind::WordIndicator;
    e.alphabet = std::move(a);
    e.word = std::move(w);
    return make(std::move(e));
}

LangExprPtr le_disj(LangExprPtr a, LangExprPtr b) {
    require_same(a->alphabet, b->alphabet, "disj");
    LangExpr e;
    e.kind = LangExpr::Kind::Disj;
    e.alphabet = a->alphabet;
    e.a = std::move(a);
    e.b = std::move(b);
    return make(std::move(e));
}

LangExprPtr le_conj(LangExprPtr a, LangExprPtr b) {
    require_same(a->alphabet, b->alphabet, "conj");
    LangExpr e;
    e.kind = LangExpr::Kind::Conj;
    e.alphabet = a->alphabet;
    e.a = std::move(a);
    e.b = std::move(b);
    return make(std::move(e));
}

LangExprPtr le_scalar_left(TruthValue k, LangExprPtr x) {
    LangExpr e;
    e.kind = LangExpr::Kind::ScalarLeft;
    e.alphabet = x->alphabet;
    e.k = std::move(k);
    e.a = std::move(x);
    return make(std::move(e));
}

LangExprPtr le_scalar_right(LangExprPtr x, TruthValue k) {
    LangExpr e;
    e.kind = LangExpr::Kind::ScalarRight;
    e.alphabet = x->alphabet;
    e.k = std::move(k);
    e.a = std::move(x);
    return make(std::move(e));
}

LangExprPtr le_cauchy(LangExprPtr a, LangExprPtr b) {
    require_same(a->alphabet, b->alphabet, "cauchy");
    LangExpr e;
    e.kind = LangExpr::Kind::Cauchy;
    e.alphabet = a->alphabet;
    e.a = std::move(a);
    e.b = std::move(b);
    return make(std::move(e));
}

LangExprPtr le_hom(StrictAlphabeticHom h, LangExprPtr x) {
    require_same(x->alphabet, h.source, "hom");
    LangExpr e;
    e.kind = LangExpr::Kind::HomImage;
    e.alphabet = h.target;
    e.hom = std::move(h);
    e.a = std::move(x);
    return make(std::move(e));
}

LangExprPtr le_invhom(StrictAlphabeticHom h, LangExprPtr x) {
    require_same(x->alphabet, h.target, "invhom");
    LangExpr e;
    e.kind = LangExpr::Kind::InvHomImage;
    e.alphabet = h.source;
    e.hom = std::move(h);
    e.a = std::move(x);
    return make(std::move(e));
}

namespace {

// preimages of w under a strict alphabetic hom, lexicographic source
// order; calls visit on each
template <typename Visit>
void each_preimage(const StrictAlphabeticHom& h, const Word& w, Visit&& visit) {
    std::vector<std::vector<Letter>> choices(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (Letter x = 0; x < h.source.size(); ++x)
            if (h.map[x] == w[i]) choices[i].push_back(x);
        if (choices[i].empty()) return;
    }
    Word v(w.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == w.size()) {
            visit(v);
            return;
        }
        for (Letter x : choices[i]) {
            v[i] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

} // namespace

TruthValue eval(const LangExpr& x, const Word& w) {
    for (Letter l : w)
        if (l >= x.alphabet.size()) throw ForeignLetterError("letter outside the alphabet");
    switch (x.kind) {
    case LangExpr::Kind::Behavior: return behavior(x.automaton, w);
    case LangExpr::Kind::Constant: return x.k;
    case LangExpr::Kind::CharOfDfa: return accepts(x.dfa, w) ? truth_one() : truth_zero();
    case LangExpr::Kind::WordIndicator: return w == x.word ? truth_one() : truth_zero();
    case LangExpr::Kind::Disj: return disj(eval(*x.a, w), eval(*x.b, w));
    case LangExpr::Kind::Conj: return conj(eval(*x.a, w), eval(*x.b, w));
    case LangExpr::Kind::ScalarLeft: return conj(x.k, eval(*x.a, w));
    case LangExpr::Kind::ScalarRight: return conj(eval(*x.a, w), x.k);
    case LangExpr::Kind::Cauchy: {
        TruthValue acc = truth_zero();
        for (std::size_t i = 0; i <= w.size(); ++i) {
            Word u(w.begin(), w.begin() + i), v(w.begin() + i, w.end());
            acc = disj(acc, conj(eval(*x.a, u), eval(*x.b, v)));
        }
        return acc;
    }
    case LangExpr::Kind::HomImage: {
        TruthValue acc = truth_zero();
        each_preimage(x.hom, w, [&](const Word& v) { acc = disj(acc, eval(*x.a, v)); });
        return acc;
    }
    case LangExpr::Kind::InvHomImage: return eval(*x.a, x.hom.apply(w));
    }
    throw std::logic_error("unreachable");
}

std::vector<Word> stgsupp(const LangExpr& x, std::size_t maxlen) {
    std::vector<Word> out;
    for (const Word& w : enumerate_words(x.alphabet, maxlen))
        if (eval(x, w).t != 0) out.push_back(w);
    return out;
}

// ---------------------------------------------------------------------
// CLI expression parser

namespace {

struct RawNode {
    std::string fn; // "", "const", "word", "auto", "char", binary/unary ops
    TruthValue k;
    std::string text; // filename, word text
    std::vector<std::pair<std::string, std::string>> map_pairs;
    std::shared_ptr<RawNode> a, b;
};
using RawPtr = std::shared_ptr<RawNode>;

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument("expression: expected '" + std::string(1, c) +
                                        "' at offset " + std::to_string(i));
    }
    std::string until(char stop) {
        skip_ws();
        std::string out;
        while (i < s.size() && s[i] != stop) out.push_back(s[i++]);
        while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
        return out;
    }
};

std::string parse_truth_token(Cursor& c) {
    c.skip_ws();
    if (c.i >= c.s.size() || c.s[c.i] != '<')
        throw std::invalid_argument("expression: expected truth literal");
    std::size_t start = c.i;
    while (c.i < c.s.size() && c.s[c.i] != '>') ++c.i;
    if (c.i == c.s.size()) throw std::invalid_argument("expression: unterminated truth literal");
    ++c.i;
    return c.s.substr(start, c.i - start);
}

RawPtr parse_raw(Cursor& c);

RawPtr parse_raw(Cursor& c) {
    c.skip_ws();
    auto node = std::make_shared<RawNode>();
    if (c.i < c.s.size() && c.s[c.i] == '<') {
        node->fn = "const";
        node->k = parse_truth(parse_truth_token(c));
        return node;
    }
    std::string name;
    while (c.i < c.s.size() && (std::isalnum(static_cast<unsigned char>(c.s[c.i])) != 0))
        name.push_back(c.s[c.i++]);
    node->fn = name;
    c.expect('(');
    if (name == "auto" || name == "char") {
        node->text = c.until(')');
    } else if (name == "const") {
        node->k = parse_truth(parse_truth_token(c));
    } else if (name == "word") {
        c.expect('"');
        node->text = c.until('"');
        c.expect('"');
    } else if (name == "disj" || name == "conj" || name == "cauchy") {
        node->a = parse_raw(c);
        c.expect(',');
        node->b = parse_raw(c);
    } else if (name == "scalarL") {
        node->k = parse_truth(parse_truth_token(c));
        c.expect(',');
        node->a = parse_raw(c);
    } else if (name == "scalarR") {
        node->a = parse_raw(c);
        c.expect(',');
        node->k = parse_truth(parse_truth_token(c));
    } else if (name == "hom" || name == "invhom") {
        std::string map = c.until(',');
        c.expect(',');
        std::size_t p = 0;
        while (p < map.size()) {
            auto semi = map.find(';', p);
            std::string pair = map.substr(p, semi == std::string::npos ? semi : semi - p);
            auto gt = pair.find('>');
            if (gt == std::string::npos)
                throw std::invalid_argument("hom map entries look like src>dst");
            node->map_pairs.push_back({pair.substr(0, gt), pair.substr(gt + 1)});
            p = semi == std::string::npos ? map.size() : semi + 1;
        }
        if (node->map_pairs.empty()) throw std::invalid_argument("hom map is empty");
        node->a = parse_raw(c);
    } else {
        throw std::invalid_argument("unknown expression operator '" + name + "'");
    }
    c.expect(')');
    return node;
}

std::optional<Alphabet> infer_alphabet(const RawNode& n, const LangExprLoader& loader);

std::optional<Alphabet> infer_alphabet(const RawNode& n, const LangExprLoader& loader) {
    if (n.fn == "auto") return loader.load_mk(n.text).alphabet;
    if (n.fn == "char") return loader.load_classical(n.text).alphabet;
    if (n.fn == "const" || n.fn == "word") return std::nullopt;
    if (n.fn == "hom") {
        Alphabet t;
        for (const auto& [src, dst] : n.map_pairs)
            if (!t.find(dst)) t.letters.push_back(dst);
        return t;
    }
    if (n.fn == "invhom") {
        Alphabet s;
        for (const auto& [src, dst] : n.map_pairs) {
            if (s.find(src)) throw std::invalid_argument("hom map repeats letter " + src);
            s.letters.push_back(src);
        }
        return s;
    }
    if (n.a)
        if (auto x = infer_alphabet(*n.a, loader)) return x;
    if (n.b)
        if (auto x = infer_alphabet(*n.b, loader)) return x;
    return std::nullopt;
}

StrictAlphabeticHom build_hom(const RawNode& n, const Alphabet& target) {
    StrictAlphabeticHom h;
    h.target = target;
    for (const auto& [src, dst] : n.map_pairs) {
        if (h.source.find(src)) throw std::invalid_argument("hom map repeats letter " + src);
        h.source.letters.push_back(src);
        auto t = target.find(dst);
        if (!t)
            throw std::invalid_argument("hom maps to letter '" + dst +
                                        "' outside the target alphabet");
        h.map.push_back(*t);
    }
    return h;
}

LangExprPtr build(const RawNode& n, const std::optional<Alphabet>& req,
                  const LangExprLoader& loader) {
    auto need = [&]() -> const Alphabet& {
        if (!req)
            throw std::invalid_argument(
                "cannot infer the alphabet of a constant/word leaf; anchor the expression "
                "with auto()/char() or pass an explicit alphabet");
        return *req;
    };
    if (n.fn == "auto") {
        auto a = loader.load_mk(n.text);
        if (req && a.alphabet != *req)
            throw std::invalid_argument("auto(" + n.text + "): alphabet mismatch");
        return le_behavior(std::move(a));
    }
    if (n.fn == "char") {
        auto d = loader.load_classical(n.text);
        if (req && d.alphabet != *req)
            throw std::invalid_argument("char(" + n.text + "): alphabet mismatch");
        return le_char(std::move(d));
    }
    if (n.fn == "const") return le_const(n.k, need());
    if (n.fn == "word") return le_word(word_from_string(need(), n.text), need());
    if (n.fn == "disj" || n.fn == "conj" || n.fn == "cauchy") {
        std::optional<Alphabet> sub = req;
        if (!sub) sub = infer_alphabet(n, loader);
        auto a = build(*n.a, sub, loader);
        auto b = build(*n.b, a->alphabet, loader);
        if (n.fn == "disj") return le_disj(std::move(a), std::move(b));
        if (n.fn == "conj") return le_conj(std::move(a), std::move(b));
        return le_cauchy(std::move(a), std::move(b));
    }
    if (n.fn == "scalarL" || n.fn == "scalarR") {
        auto a = build(*n.a, req, loader);
        if (n.fn == "scalarL") return le_scalar_left(n.k, std::move(a));
        return le_scalar_right(std::move(a), n.k);
    }
    if (n.fn == "hom") {
        Alphabet target = req ? *req : *infer_alphabet(n, loader);
        auto h = build_hom(n, target);
        auto a = build(*n.a, h.source, loader);
        return le_hom(std::move(h), std::move(a));
    }
    if (n.fn == "invhom") {
        Alphabet source;
        for (const auto& [src, dst] : n.map_pairs) source.letters.push_back(src);
        if (req && source != *req)
            throw std::invalid_argument("invhom: alphabet mismatch");
        std::optional<Alphabet> target = n.a ? infer_alphabet(*n.a, loader) : std::nullopt;
        if (!target) {
            Alphabet t;
            for (const auto& [src, dst] : n.map_pairs)
                if (!t.find(dst)) t.letters.push_back(dst);
            target = t;
        }
        StrictAlphabeticHom h;
        h.source = source;
        h.target = *target;
        for (const auto& [src, dst] : n.map_pairs) {
            auto t = target->find(dst);
            if (!t)
                throw std::invalid_argument("invhom maps to letter '" + dst +
                                            "' outside the target alphabet");
            h.map.push_back(*t);
        }
        auto a = build(*n.a, *target, loader);
        return le_invhom(std::move(h), std::move(a));
    }
    throw std::logic_error("unreachable expression node");
}

} // namespace

LangExprPtr parse_lang_expr(const std::string& text, const LangExprLoader& loader,
                            const Alphabet* fallback_alphabet) {
    Cursor c{text};
    RawPtr raw = parse_raw(c);
    c.skip_ws();
    if (c.i != text.size())
        throw std::invalid_argument("trailing input after expression at offset " +
                                    std::to_string(c.i));
    std::optional<Alphabet> req = infer_alphabet(*raw, loader);
    if (!req && fallback_alphabet) req = *fallback_alphabet;
    return build(*raw, req, loader);
}

} // namespace mkfa
