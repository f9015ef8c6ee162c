// Concrete syntax for the two-layer logic.  Binary operators have no
// precedence: chains of one operator associate left, mixing requires
// parentheses.  Quantifiers bind to the end of the enclosing scope.
// Derived forms (false, &, forall, first, last, succ, partition,
// (x in X -> <k>)) expand during parsing.

#include "mkfa/logic.hpp"

#include <cctype>
#include <stdexcept>

namespace mkfa {

namespace {

struct Token {
    enum class Kind { Ident, Truth, Punct, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

struct Lexer {
    const std::string& s;
    std::size_t i = 0;
    std::vector<Token> tokens;

    explicit Lexer(const std::string& text) : s(text) { run(); }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw std::invalid_argument("formula: " + msg + " (offset " + std::to_string(at) +
                                    ")");
    }

    void run() {
        while (i < s.size()) {
            char c = s[i];
            if (c == ' ' || c == '\t' || c == '\n') {
                ++i;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t start = i;
                while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                                        s[i] == '_'))
                    ++i;
                tokens.push_back({Token::Kind::Ident, s.substr(start, i - start), start});
                continue;
            }
            if (c == '<') {
                if (i + 1 < s.size() && s[i + 1] == '=') {
                    tokens.push_back({Token::Kind::Punct, "<=", i});
                    i += 2;
                    continue;
                }
                std::size_t start = i;
                while (i < s.size() && s[i] != '>') ++i;
                if (i == s.size()) fail("unterminated truth literal", start);
                ++i;
                tokens.push_back({Token::Kind::Truth, s.substr(start, i - start), start});
                continue;
            }
            if (c == '(') {
                if (i + 2 < s.size() && (s[i + 1] == '+' || s[i + 1] == '*') &&
                    s[i + 2] == ')') {
                    tokens.push_back(
                        {Token::Kind::Punct, s[i + 1] == '+' ? "(+)" : "(*)", i});
                    i += 3;
                    continue;
                }
                tokens.push_back({Token::Kind::Punct, "(", i});
                ++i;
                continue;
            }
            if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
                tokens.push_back({Token::Kind::Punct, "->", i});
                i += 2;
                continue;
            }
            if (c == ')' || c == '.' || c == ',' || c == '|' || c == '&' || c == '!') {
                tokens.push_back({Token::Kind::Punct, std::string(1, c), i});
                ++i;
                continue;
            }
            fail(std::string("unexpected character '") + c + "'", i);
        }
        tokens.push_back({Token::Kind::End, "", s.size()});
    }
};

// parse result: exactly one of the two layers
struct Node {
    MsoPtr b;
    MkPtr m;

    bool boolean() const { return b != nullptr; }
    MkPtr lift() const { return b ? mk_bool(b) : m; }
};

struct Parser {
    std::vector<Token> ts;
    std::size_t i = 0;
    const std::string& text;
    int fresh_counter = 0;

    explicit Parser(const std::string& t) : text(t) {
        Lexer lx(t);
        ts = std::move(lx.tokens);
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("formula: " + msg + " (offset " +
                                    std::to_string(ts[i].pos) + ")");
    }

    const Token& peek() const { return ts[i]; }
    bool at_punct(const std::string& p) const {
        return ts[i].kind == Token::Kind::Punct && ts[i].text == p;
    }
    bool at_ident(const std::string& w) const {
        return ts[i].kind == Token::Kind::Ident && ts[i].text == w;
    }
    Token take() { return ts[i++]; }
    void expect_punct(const std::string& p) {
        if (!at_punct(p)) fail("expected '" + p + "'");
        ++i;
    }
    std::string expect_var(bool first_order) {
        if (ts[i].kind != Token::Kind::Ident) fail("expected a variable");
        std::string v = take().text;
        if (is_first_order(v) != first_order)
            fail("variable '" + v + "' has the wrong order (case convention)");
        return v;
    }

    // a name not occurring anywhere in the source text
    std::string fresh_fo() {
        while (true) {
            std::string cand = "q" + std::to_string(++fresh_counter) + "f";
            if (text.find(cand) == std::string::npos) return cand;
        }
    }

    Node parse_formula() {
        Node first = parse_unit();
        std::string op;
        while (ts[i].kind == Token::Kind::Punct &&
               (ts[i].text == "|" || ts[i].text == "&" || ts[i].text == "(+)" ||
                ts[i].text == "(*)")) {
            std::string cur = take().text;
            if (op.empty())
                op = cur;
            else if (op != cur)
                fail("mixing '" + op + "' and '" + cur + "' needs parentheses");
            Node rhs = parse_unit();
            if (cur == "|" || cur == "&") {
                if (!first.boolean() || !rhs.boolean())
                    fail("'" + cur + "' needs boolean operands");
                first.b = cur == "|" ? mso_or(first.b, rhs.b) : mso_and(first.b, rhs.b);
            } else {
                MkPtr l = first.lift(), r = rhs.lift();
                first.b = nullptr;
                first.m = cur == "(+)" ? mk_plus(l, r) : mk_times(l, r);
            }
        }
        return first;
    }

    Node parse_unit() {
        if (at_punct("!")) {
            ++i;
            Node sub = parse_unit();
            if (!sub.boolean()) fail("'!' needs a boolean operand");
            return {mso_not(sub.b), nullptr};
        }
        if (at_ident("exists") || at_ident("forall")) {
            bool universal = take().text == "forall";
            if (ts[i].kind != Token::Kind::Ident) fail("expected a variable");
            std::string v = take().text;
            expect_punct(".");
            Node body = parse_formula();
            if (!body.boolean()) fail("quantified body must be boolean");
            return {universal ? mso_forall(v, body.b) : mso_exists(v, body.b), nullptr};
        }
        if (at_ident("sum") || at_ident("prod")) {
            bool product = take().text == "prod";
            if (ts[i].kind != Token::Kind::Ident) fail("expected a variable");
            std::string v = take().text;
            expect_punct(".");
            Node body = parse_formula();
            MkPtr m = body.lift();
            if (product) {
                if (!is_first_order(v)) fail("prod binds a first-order variable");
                return {nullptr, mk_prod_fo(v, m)};
            }
            return {nullptr, is_first_order(v) ? mk_sum_fo(v, m) : mk_sum_so(v, m)};
        }
        return parse_atom();
    }

    Node parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Truth) {
            return {nullptr, mk_const(parse_truth(take().text))};
        }
        if (at_punct("(")) {
            ++i;
            Node inner = parse_formula();
            if (at_punct("->")) {
                ++i;
                if (!inner.boolean() || inner.b->kind != MsoFormula::Kind::In)
                    fail("'->' belongs to the (x in X -> <k>) form");
                if (peek().kind != Token::Kind::Truth) fail("expected a truth literal");
                TruthValue k = parse_truth(take().text);
                expect_punct(")");
                return {nullptr, mk_imp(inner.b->v1, inner.b->v2, k)};
            }
            expect_punct(")");
            return inner;
        }
        if (t.kind != Token::Kind::Ident) fail("expected a formula");
        std::string w = take().text;
        if (w == "true") return {mso_true(), nullptr};
        if (w == "false") return {mso_false(), nullptr};
        if (w == "first" || w == "last") {
            expect_punct("(");
            std::string y = expect_var(true);
            expect_punct(")");
            std::string f = fresh_fo();
            return {w == "first" ? mso_forall(f, mso_le(y, f)) : mso_forall(f, mso_le(f, y)),
                    nullptr};
        }
        if (w == "succ") {
            expect_punct("(");
            std::string y = expect_var(true);
            expect_punct(",");
            std::string x = expect_var(true);
            expect_punct(")");
            std::string f = fresh_fo();
            MsoPtr s = mso_and(mso_and(mso_le(x, y), mso_not(mso_le(y, x))),
                               mso_forall(f, mso_or(mso_le(f, x), mso_le(y, f))));
            return {s, nullptr};
        }
        if (w == "partition") {
            expect_punct("(");
            std::vector<std::string> sets;
            sets.push_back(expect_var(false));
            while (at_punct(",")) {
                ++i;
                sets.push_back(expect_var(false));
            }
            expect_punct(")");
            std::string x = fresh_fo();
            std::vector<MsoPtr> alts;
            for (std::size_t a = 0; a < sets.size(); ++a) {
                MsoPtr c = mso_in(x, sets[a]);
                for (std::size_t b = 0; b < sets.size(); ++b)
                    if (b != a) c = mso_and(c, mso_not(mso_in(x, sets[b])));
                alts.push_back(c);
            }
            MsoPtr body = alts[0];
            for (std::size_t a = 1; a < alts.size(); ++a) body = mso_or(body, alts[a]);
            return {mso_forall(x, body), nullptr};
        }
        if (w.size() > 2 && w[0] == 'P' && w[1] == '_') {
            expect_punct("(");
            std::string x = expect_var(true);
            expect_punct(")");
            return {mso_pred(w.substr(2), x), nullptr};
        }
        // variable-led atom: "x <= y" or "x in X"
        if (at_punct("<=")) {
            ++i;
            if (!is_first_order(w)) fail("'<=' compares first-order variables");
            std::string y = expect_var(true);
            return {mso_le(w, y), nullptr};
        }
        if (at_ident("in")) {
            ++i;
            if (!is_first_order(w)) fail("'in' needs a first-order variable on the left");
            std::string X = expect_var(false);
            return {mso_in(w, X), nullptr};
        }
        fail("unexpected token '" + w + "'");
    }
};

} // namespace

MsoPtr parse_mso(const std::string& text) {
    Parser p(text);
    Node n = p.parse_formula();
    if (p.peek().kind != Token::Kind::End) p.fail("trailing input");
    if (!n.boolean()) p.fail("expected a boolean formula");
    return n.b;
}

MkPtr parse_mk(const std::string& text) {
    Parser p(text);
    Node n = p.parse_formula();
    if (p.peek().kind != Token::Kind::End) p.fail("trailing input");
    return n.lift();
}

// ---------------------------------------------------------------------
// rendering; output re-parses to the same tree

std::string mso_str(const MsoPtr& f) {
    switch (f->kind) {
    case MsoFormula::Kind::True: return "true";
    case MsoFormula::Kind::Pred: return "P_" + f->letter + "(" + f->v1 + ")";
    case MsoFormula::Kind::Le: return f->v1 + " <= " + f->v2;
    case MsoFormula::Kind::In: return f->v1 + " in " + f->v2;
    case MsoFormula::Kind::Not: return "!(" + mso_str(f->a) + ")";
    case MsoFormula::Kind::Or: return "(" + mso_str(f->a) + " | " + mso_str(f->b) + ")";
    case MsoFormula::Kind::ExistsFO:
    case MsoFormula::Kind::ExistsSO:
        // self-delimiting, so a quantifier can sit under a binary operator
        return "(exists " + f->v1 + " . " + mso_str(f->a) + ")";
    }
    throw std::logic_error("unreachable");
}

std::string mk_str(const MkPtr& f) {
    switch (f->kind) {
    case MkFormula::Kind::Const: return f->k.str();
    case MkFormula::Kind::Bool: return mso_str(f->boolean);
    case MkFormula::Kind::Plus: return "(" + mk_str(f->a) + " (+) " + mk_str(f->b) + ")";
    case MkFormula::Kind::Times: return "(" + mk_str(f->a) + " (*) " + mk_str(f->b) + ")";
    case MkFormula::Kind::SumFO:
    case MkFormula::Kind::SumSO: return "(sum " + f->var + " . " + mk_str(f->a) + ")";
    case MkFormula::Kind::ProdFO: return "(prod " + f->var + " . " + mk_str(f->a) + ")";
    }
    throw std::logic_error("unreachable");
}

} // namespace mkfa
