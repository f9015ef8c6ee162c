#include "mkfa/logic.hpp"

#include "mkfa/constructs.hpp"

#include <algorithm>
#include <stdexcept>

namespace mkfa {

// ---------------------------------------------------------------------
// builders

namespace {
MsoPtr mso_make(MsoFormula f) { return std::make_shared<MsoFormula>(std::move(f)); }
MkPtr mk_make(MkFormula f) { return std::make_shared<MkFormula>(std::move(f)); }
} // namespace

MsoPtr mso_true() {
    return mso_make({MsoFormula::Kind::True, "", "", "", nullptr, nullptr});
}
MsoPtr mso_false() { return mso_not(mso_true()); }
MsoPtr mso_pred(std::string letter, std::string x) {
    if (!is_first_order(x))
        throw std::invalid_argument("P_" + letter + " needs a first-order variable");
    return mso_make({MsoFormula::Kind::Pred, std::move(letter), std::move(x), "", nullptr,
                     nullptr});
}
MsoPtr mso_le(std::string x, std::string y) {
    if (!is_first_order(x) || !is_first_order(y))
        throw std::invalid_argument("<= compares first-order variables");
    return mso_make({MsoFormula::Kind::Le, "", std::move(x), std::move(y), nullptr, nullptr});
}
MsoPtr mso_in(std::string x, std::string X) {
    if (!is_first_order(x) || is_first_order(X))
        throw std::invalid_argument("'in' relates a first-order to a second-order variable");
    return mso_make({MsoFormula::Kind::In, "", std::move(x), std::move(X), nullptr, nullptr});
}
MsoPtr mso_not(MsoPtr a) {
    return mso_make({MsoFormula::Kind::Not, "", "", "", std::move(a), nullptr});
}
MsoPtr mso_or(MsoPtr a, MsoPtr b) {
    return mso_make({MsoFormula::Kind::Or, "", "", "", std::move(a), std::move(b)});
}
MsoPtr mso_and(MsoPtr a, MsoPtr b) {
    return mso_not(mso_or(mso_not(std::move(a)), mso_not(std::move(b))));
}
MsoPtr mso_exists(std::string v, MsoPtr a) {
    auto kind = is_first_order(v) ? MsoFormula::Kind::ExistsFO : MsoFormula::Kind::ExistsSO;
    return mso_make({kind, "", std::move(v), "", std::move(a), nullptr});
}
MsoPtr mso_forall(std::string v, MsoPtr a) {
    return mso_not(mso_exists(std::move(v), mso_not(std::move(a))));
}

MkPtr mk_const(TruthValue k) {
    MkFormula f;
    f.kind = MkFormula::Kind::Const;
    f.k = std::move(k);
    return mk_make(std::move(f));
}
MkPtr mk_bool(MsoPtr b) {
    MkFormula f;
    f.kind = MkFormula::Kind::Bool;
    f.boolean = std::move(b);
    return mk_make(std::move(f));
}
MkPtr mk_plus(MkPtr a, MkPtr b) {
    MkFormula f;
    f.kind = MkFormula::Kind::Plus;
    f.a = std::move(a);
    f.b = std::move(b);
    return mk_make(std::move(f));
}
MkPtr mk_times(MkPtr a, MkPtr b) {
    MkFormula f;
    f.kind = MkFormula::Kind::Times;
    f.a = std::move(a);
    f.b = std::move(b);
    return mk_make(std::move(f));
}
namespace {
MkPtr mk_quant(MkFormula::Kind kind, std::string v, MkPtr a) {
    MkFormula f;
    f.kind = kind;
    f.var = std::move(v);
    f.a = std::move(a);
    return mk_make(std::move(f));
}
} // namespace
MkPtr mk_sum_fo(std::string x, MkPtr a) {
    if (!is_first_order(x)) throw std::invalid_argument("sum over a misclassified variable");
    return mk_quant(MkFormula::Kind::SumFO, std::move(x), std::move(a));
}
MkPtr mk_sum_so(std::string X, MkPtr a) {
    if (is_first_order(X)) throw std::invalid_argument("sum over a misclassified variable");
    return mk_quant(MkFormula::Kind::SumSO, std::move(X), std::move(a));
}
MkPtr mk_prod_fo(std::string x, MkPtr a) {
    if (!is_first_order(x))
        throw std::invalid_argument("prod binds a first-order variable");
    return mk_quant(MkFormula::Kind::ProdFO, std::move(x), std::move(a));
}
MkPtr mk_imp(std::string x, std::string X, TruthValue k) {
    return mk_times(mk_bool(mso_in(std::move(x), std::move(X))), mk_const(std::move(k)));
}

bool is_first_order(const std::string& var) {
    return !var.empty() && var[0] >= 'a' && var[0] <= 'z';
}

namespace {

void free_vars_rec(const MsoPtr& f, std::set<std::string>& out,
                   std::set<std::string> bound) {
    switch (f->kind) {
    case MsoFormula::Kind::True: return;
    case MsoFormula::Kind::Pred:
        if (!bound.count(f->v1)) out.insert(f->v1);
        return;
    case MsoFormula::Kind::Le:
    case MsoFormula::Kind::In:
        if (!bound.count(f->v1)) out.insert(f->v1);
        if (!bound.count(f->v2)) out.insert(f->v2);
        return;
    case MsoFormula::Kind::Not: free_vars_rec(f->a, out, bound); return;
    case MsoFormula::Kind::Or:
        free_vars_rec(f->a, out, bound);
        free_vars_rec(f->b, out, bound);
        return;
    case MsoFormula::Kind::ExistsFO:
    case MsoFormula::Kind::ExistsSO:
        bound.insert(f->v1);
        free_vars_rec(f->a, out, std::move(bound));
        return;
    }
}

void free_vars_rec(const MkPtr& f, std::set<std::string>& out, std::set<std::string> bound) {
    switch (f->kind) {
    case MkFormula::Kind::Const: return;
    case MkFormula::Kind::Bool: free_vars_rec(f->boolean, out, std::move(bound)); return;
    case MkFormula::Kind::Plus:
    case MkFormula::Kind::Times:
        free_vars_rec(f->a, out, bound);
        free_vars_rec(f->b, out, bound);
        return;
    case MkFormula::Kind::SumFO:
    case MkFormula::Kind::SumSO:
    case MkFormula::Kind::ProdFO:
        bound.insert(f->var);
        free_vars_rec(f->a, out, std::move(bound));
        return;
    }
}

} // namespace

std::set<std::string> free_vars(const MsoPtr& f) {
    std::set<std::string> out;
    free_vars_rec(f, out, {});
    return out;
}

std::set<std::string> free_vars(const MkPtr& f) {
    std::set<std::string> out;
    free_vars_rec(f, out, {});
    return out;
}

// ---------------------------------------------------------------------
// direct semantics

Assignment Assignment::with_fo(const std::string& x, std::size_t i) const {
    Assignment s = *this;
    s.fo[x] = i;
    return s;
}

Assignment Assignment::with_so(const std::string& X, std::vector<std::size_t> I) const {
    Assignment s = *this;
    s.so[X] = std::move(I);
    return s;
}

namespace {

// mutable evaluation context; quantifiers bind in place and restore
struct EvalCtx {
    const Alphabet& a;
    const Word& w;
    std::map<std::string, std::size_t> fo;
    std::map<std::string, std::vector<std::size_t>> so;
};

bool sat(EvalCtx& c, const MsoPtr& f) {
    switch (f->kind) {
    case MsoFormula::Kind::True: return true;
    case MsoFormula::Kind::Pred: {
        auto it = c.fo.find(f->v1);
        if (it == c.fo.end()) throw std::invalid_argument("unbound variable " + f->v1);
        auto l = c.a.find(f->letter);
        return l && it->second < c.w.size() && c.w[it->second] == *l;
    }
    case MsoFormula::Kind::Le: {
        auto i = c.fo.find(f->v1), j = c.fo.find(f->v2);
        if (i == c.fo.end()) throw std::invalid_argument("unbound variable " + f->v1);
        if (j == c.fo.end()) throw std::invalid_argument("unbound variable " + f->v2);
        return i->second <= j->second;
    }
    case MsoFormula::Kind::In: {
        auto i = c.fo.find(f->v1);
        if (i == c.fo.end()) throw std::invalid_argument("unbound variable " + f->v1);
        auto X = c.so.find(f->v2);
        if (X == c.so.end()) return false; // empty set
        return std::binary_search(X->second.begin(), X->second.end(), i->second);
    }
    case MsoFormula::Kind::Not: return !sat(c, f->a);
    case MsoFormula::Kind::Or: return sat(c, f->a) || sat(c, f->b);
    case MsoFormula::Kind::ExistsFO: {
        auto old = c.fo.find(f->v1) != c.fo.end() ? std::optional(c.fo[f->v1])
                                                  : std::nullopt;
        bool found = false;
        for (std::size_t i = 0; i < c.w.size() && !found; ++i) {
            c.fo[f->v1] = i;
            found = sat(c, f->a);
        }
        if (old)
            c.fo[f->v1] = *old;
        else
            c.fo.erase(f->v1);
        return found;
    }
    case MsoFormula::Kind::ExistsSO: {
        auto it = c.so.find(f->v1);
        auto old = it != c.so.end() ? std::optional(it->second) : std::nullopt;
        bool found = false;
        for (const auto& I : subsets_ascending(c.w.size())) {
            c.so[f->v1] = I;
            if (sat(c, f->a)) {
                found = true;
                break;
            }
        }
        if (old)
            c.so[f->v1] = std::move(*old);
        else
            c.so.erase(f->v1);
        return found;
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace

bool mso_satisfies(const Alphabet& a, const Word& w, const Assignment& s, const MsoPtr& f) {
    EvalCtx c{a, w, s.fo, s.so};
    return sat(c, f);
}

std::vector<std::vector<std::size_t>> subsets_ascending(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t next_min) -> void {
        out.push_back(cur);
        for (std::size_t i = next_min; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

// validity over V never changes along the recursion: quantifiers only
// bind in-range values, so the check runs once at the top
TruthValue mk_eval_rec(EvalCtx& c, const MkPtr& f,
                       const std::vector<std::vector<std::size_t>>& subsets) {
    switch (f->kind) {
    case MkFormula::Kind::Const: return f->k;
    case MkFormula::Kind::Bool: return sat(c, f->boolean) ? truth_one() : truth_zero();
    case MkFormula::Kind::Plus:
        return disj(mk_eval_rec(c, f->a, subsets), mk_eval_rec(c, f->b, subsets));
    case MkFormula::Kind::Times:
        return conj(mk_eval_rec(c, f->a, subsets), mk_eval_rec(c, f->b, subsets));
    case MkFormula::Kind::SumFO:
    case MkFormula::Kind::ProdFO: {
        auto it = c.fo.find(f->var);
        auto old = it != c.fo.end() ? std::optional(it->second) : std::nullopt;
        bool product = f->kind == MkFormula::Kind::ProdFO;
        TruthValue acc = product ? truth_one() : truth_zero();
        for (std::size_t i = 0; i < c.w.size(); ++i) {
            c.fo[f->var] = i;
            TruthValue v = mk_eval_rec(c, f->a, subsets);
            acc = product ? conj(acc, v) : disj(acc, v);
        }
        if (old)
            c.fo[f->var] = *old;
        else
            c.fo.erase(f->var);
        return acc;
    }
    case MkFormula::Kind::SumSO: {
        auto it = c.so.find(f->var);
        auto old = it != c.so.end() ? std::optional(it->second) : std::nullopt;
        TruthValue acc = truth_zero();
        for (const auto& I : subsets) {
            c.so[f->var] = I;
            acc = disj(acc, mk_eval_rec(c, f->a, subsets));
        }
        if (old)
            c.so[f->var] = std::move(*old);
        else
            c.so.erase(f->var);
        return acc;
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace

TruthValue mk_eval(const Alphabet& a, const std::vector<std::string>& V, const Word& w,
                   const Assignment& s, const MkPtr& f) {
    // (w,s) valid over V: every first-order variable of V assigned a
    // position of w; second-order sets within range
    for (const auto& v : V) {
        if (is_first_order(v)) {
            auto it = s.fo.find(v);
            if (it == s.fo.end() || it->second >= w.size()) return truth_zero();
        } else {
            auto it = s.so.find(v);
            if (it != s.so.end())
                for (std::size_t i : it->second)
                    if (i >= w.size()) return truth_zero();
        }
    }
    EvalCtx c{a, w, s.fo, s.so};
    return mk_eval_rec(c, f, subsets_ascending(w.size()));
}

DecodedWord decode_word(const ExtAlphabet& ext, const Word& encoded) {
    DecodedWord d;
    d.valid = true;
    for (Letter l : encoded) {
        if (l >= ext.letters.size()) throw ForeignLetterError("letter outside the alphabet");
        d.base.push_back(ext.letters[l].base);
    }
    for (std::size_t r = 0; r < ext.rows.size(); ++r) {
        std::vector<std::size_t> ones;
        for (std::size_t i = 0; i < encoded.size(); ++i)
            if (ext.bit(encoded[i], r)) ones.push_back(i);
        if (ext.row_is_first_order(r)) {
            if (ones.size() != 1)
                d.valid = false;
            else
                d.assignment.fo[ext.rows[r]] = ones[0];
        } else {
            d.assignment.so[ext.rows[r]] = ones;
        }
    }
    return d;
}

Word encode_word(const ExtAlphabet& ext, const Word& base, const Assignment& s) {
    Word out;
    for (std::size_t i = 0; i < base.size(); ++i) {
        std::uint32_t bits = 0;
        for (std::size_t r = 0; r < ext.rows.size(); ++r) {
            bool on = false;
            if (ext.row_is_first_order(r)) {
                auto it = s.fo.find(ext.rows[r]);
                if (it == s.fo.end())
                    throw std::invalid_argument("unassigned variable " + ext.rows[r]);
                on = it->second == i;
            } else {
                auto it = s.so.find(ext.rows[r]);
                on = it != s.so.end() &&
                     std::binary_search(it->second.begin(), it->second.end(), i);
            }
            if (on) bits |= 1u << r;
        }
        ExtLetter want{base[i], bits};
        Letter found = 0;
        bool ok = false;
        for (Letter l = 0; l < ext.letters.size(); ++l)
            if (ext.letters[l] == want) {
                found = l;
                ok = true;
                break;
            }
        if (!ok) throw std::logic_error("extended letter missing");
        out.push_back(found);
    }
    return out;
}

TruthValue mk_eval_encoded(const ExtAlphabet& ext, const Word& encoded, const MkPtr& f) {
    DecodedWord d = decode_word(ext, encoded);
    if (!d.valid) return truth_zero();
    return mk_eval(ext.base, ext.rows, d.base, d.assignment, f);
}

bool mso_satisfies_encoded(const ExtAlphabet& ext, const Word& encoded, const MsoPtr& f) {
    DecodedWord d = decode_word(ext, encoded);
    if (!d.valid) return false;
    return mso_satisfies(ext.base, d.base, d.assignment, f);
}

// ---------------------------------------------------------------------
// restricted fragment

namespace {

bool is_imp_clause(const MkPtr& f, const std::string& x) {
    return f->kind == MkFormula::Kind::Times && f->a->kind == MkFormula::Kind::Bool &&
           f->a->boolean->kind == MsoFormula::Kind::In && f->a->boolean->v1 == x &&
           f->b->kind == MkFormula::Kind::Const;
}

bool is_imp_sum(const MkPtr& f, const std::string& x) {
    if (f->kind == MkFormula::Kind::Plus)
        return is_imp_sum(f->a, x) && is_imp_sum(f->b, x);
    return is_imp_clause(f, x);
}

void rmso_rec(const MkPtr& f, const std::string& where, RmsoCheck& out) {
    switch (f->kind) {
    case MkFormula::Kind::Const:
    case MkFormula::Kind::Bool: return;
    case MkFormula::Kind::Plus:
        rmso_rec(f->a, where + ".l", out);
        rmso_rec(f->b, where + ".r", out);
        return;
    case MkFormula::Kind::Times:
        if (f->a->kind != MkFormula::Kind::Bool)
            out.violations.push_back(where +
                                     ": left operand of (*) is not a boolean formula");
        rmso_rec(f->a, where + ".l", out);
        rmso_rec(f->b, where + ".r", out);
        return;
    case MkFormula::Kind::SumFO:
    case MkFormula::Kind::SumSO: rmso_rec(f->a, where + ".body", out); return;
    case MkFormula::Kind::ProdFO:
        if (!is_imp_sum(f->a, f->var))
            out.violations.push_back(
                where + ": prod body must be a (+)-sum of (" + f->var +
                " in X -> <k>) clauses");
        return;
    }
}

} // namespace

RmsoCheck is_rmso(const MkPtr& f) {
    RmsoCheck out;
    rmso_rec(f, "root", out);
    out.ok = out.violations.empty();
    return out;
}

// ---------------------------------------------------------------------
// compilation: boolean MSO -> DFA

namespace {

ExtAlphabet ext_extend_checked(const ExtAlphabet& ext, const std::string& var) {
    for (const auto& r : ext.rows)
        if (r == var)
            throw std::invalid_argument("variable '" + var +
                                        "' is already in scope; rename the inner binding");
    return ext_extend(ext, var);
}

Dfa atom_pred(const ExtAlphabet& ext, const std::string& letter, const std::string& x) {
    std::size_t row = ext.row_index(x);
    auto base = ext.base.find(letter);
    Dfa d;
    d.alphabet = ext.flat;
    d.states = {"before", "after"};
    d.initial = 0;
    for (Letter l = 0; l < ext.letters.size(); ++l) {
        if (!ext.bit(l, row)) {
            d.transitions.push_back({0, l, 0});
            d.transitions.push_back({1, l, 1});
        } else if (base && ext.letters[l].base == *base) {
            d.transitions.push_back({0, l, 1});
        }
    }
    d.final_states = {1};
    d.sort_all();
    return d;
}

Dfa atom_le(const ExtAlphabet& ext, const std::string& x, const std::string& y) {
    std::size_t rx = ext.row_index(x), ry = ext.row_index(y);
    Dfa d;
    d.alphabet = ext.flat;
    d.states = {"none", "x", "both"};
    d.initial = 0;
    for (Letter l = 0; l < ext.letters.size(); ++l) {
        bool bx = ext.bit(l, rx), by = ext.bit(l, ry);
        if (bx && by)
            d.transitions.push_back({0, l, 2});
        else if (bx)
            d.transitions.push_back({0, l, 1});
        else if (!by)
            d.transitions.push_back({0, l, 0});
        if (by)
            d.transitions.push_back({1, l, 2});
        else if (!bx)
            d.transitions.push_back({1, l, 1});
        d.transitions.push_back({2, l, 2});
    }
    d.final_states = {2};
    d.sort_all();
    return d;
}

Dfa atom_in(const ExtAlphabet& ext, const std::string& x, const std::string& X) {
    std::size_t rx = ext.row_index(x), rX = ext.row_index(X);
    Dfa d;
    d.alphabet = ext.flat;
    d.states = {"before", "after"};
    d.initial = 0;
    for (Letter l = 0; l < ext.letters.size(); ++l) {
        bool bx = ext.bit(l, rx), bX = ext.bit(l, rX);
        if (bx && bX)
            d.transitions.push_back({0, l, 1});
        else if (!bx)
            d.transitions.push_back({0, l, 0});
        d.transitions.push_back({1, l, 1});
    }
    d.final_states = {1};
    d.sort_all();
    return d;
}

} // namespace

Dfa mso_to_dfa(const MsoPtr& f, const ExtAlphabet& ext) {
    Dfa valid = valid_assignments_dfa(ext);
    switch (f->kind) {
    case MsoFormula::Kind::True: return valid;
    case MsoFormula::Kind::Pred: return product(atom_pred(ext, f->letter, f->v1), valid);
    case MsoFormula::Kind::Le: return product(atom_le(ext, f->v1, f->v2), valid);
    case MsoFormula::Kind::In: return product(atom_in(ext, f->v1, f->v2), valid);
    case MsoFormula::Kind::Not: return product(complement(mso_to_dfa(f->a, ext)), valid);
    case MsoFormula::Kind::Or: return unite(mso_to_dfa(f->a, ext), mso_to_dfa(f->b, ext));
    case MsoFormula::Kind::ExistsFO:
    case MsoFormula::Kind::ExistsSO: {
        ExtAlphabet ext2 = ext_extend_checked(ext, f->v1);
        Dfa sub = mso_to_dfa(f->a, ext2);
        auto [nfa, reduced] = project(nfa_of_dfa(sub), ext2, f->v1);
        if (!(reduced.flat == ext.flat))
            throw std::logic_error("projection did not restore the outer alphabet");
        Dfa d = determinize(nfa);
        d.alphabet = ext.flat;
        return product(d, valid);
    }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------
// compilation: RMSO -> MK-fuzzy automaton

namespace {

MkAutomaton empty_automaton(const Alphabet& a) {
    MkAutomaton m;
    m.alphabet = a;
    return m;
}

void collect_imp_clauses(const MkPtr& f, std::vector<std::pair<std::string, TruthValue>>& out) {
    if (f->kind == MkFormula::Kind::Plus) {
        collect_imp_clauses(f->a, out);
        collect_imp_clauses(f->b, out);
        return;
    }
    out.push_back({f->a->boolean->v2, f->b->k});
}

MkAutomaton rmso_rec_compile(const MkPtr& f, const ExtAlphabet& ext) {
    switch (f->kind) {
    case MkFormula::Kind::Const:
        if (f->k == truth_zero()) return empty_automaton(ext.flat);
        return conj_char(valid_assignments_dfa(ext), const_automaton(f->k, ext.flat));
    case MkFormula::Kind::Bool: return char_automaton(mso_to_dfa(f->boolean, ext));
    case MkFormula::Kind::Plus:
        return disjunction(rmso_rec_compile(f->a, ext), rmso_rec_compile(f->b, ext));
    case MkFormula::Kind::Times:
        return conj_char(mso_to_dfa(f->a->boolean, ext), rmso_rec_compile(f->b, ext));
    case MkFormula::Kind::SumFO:
    case MkFormula::Kind::SumSO: {
        ExtAlphabet ext2 = ext_extend_checked(ext, f->var);
        MkAutomaton inner = rmso_rec_compile(f->a, ext2);
        StrictAlphabeticHom h;
        h.source = ext2.flat;
        h.target = ext.flat;
        h.map.resize(ext2.letters.size());
        for (Letter l = 0; l < ext2.letters.size(); ++l) h.map[l] = l / 2;
        return conj_char(valid_assignments_dfa(ext), hom_image(inner, h));
    }
    case MkFormula::Kind::ProdFO: {
        std::vector<std::pair<std::string, TruthValue>> clauses;
        collect_imp_clauses(f->a, clauses);
        MkAutomaton one;
        one.alphabet = ext.flat;
        one.states = {"q"};
        one.initial.push_back({0, truth_one()});
        one.final_weights.push_back({0, truth_one()});
        for (Letter l = 0; l < ext.letters.size(); ++l) {
            TruthValue wt = truth_zero();
            for (const auto& [X, k] : clauses) {
                bool on = ext.bit(l, ext.row_index(X));
                wt = disj(wt, conj(on ? truth_one() : truth_zero(), k));
            }
            one.transitions.push_back({0, l, 0, wt});
        }
        one.sort_all();
        return conj_char(valid_assignments_dfa(ext), one);
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace

MkAutomaton rmso_to_automaton(const MkPtr& f, const ExtAlphabet& ext) {
    RmsoCheck c = is_rmso(f);
    if (!c.ok)
        throw std::invalid_argument("formula is not in the restricted fragment: " +
                                    c.violations.front());
    return rmso_rec_compile(f, ext);
}

RmsoCompiled rmso_to_automaton(const MkPtr& f, const Alphabet& a,
                               const std::vector<std::string>& V) {
    for (const auto& v : free_vars(f))
        if (std::find(V.begin(), V.end(), v) == V.end())
            throw std::invalid_argument("variable set misses free variable " + v);
    RmsoCompiled out{MkAutomaton{}, ext_canonical(a, V)};
    out.automaton = rmso_to_automaton(f, out.ext);
    return out;
}

// ---------------------------------------------------------------------
// automaton -> RMSO sentence

namespace {

MsoPtr or_all(std::vector<MsoPtr> parts) {
    if (parts.empty()) return mso_false();
    MsoPtr acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = mso_or(acc, parts[i]);
    return acc;
}

MsoPtr and_all(std::vector<MsoPtr> parts) {
    if (parts.empty()) return mso_true();
    MsoPtr acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = mso_and(acc, parts[i]);
    return acc;
}

// boolean implication, classical
MsoPtr mso_imp(MsoPtr a, MsoPtr b) { return mso_or(mso_not(std::move(a)), std::move(b)); }

MsoPtr mso_first(const std::string& y, const std::string& fresh) {
    return mso_forall(fresh, mso_le(y, fresh));
}

MsoPtr mso_last(const std::string& y, const std::string& fresh) {
    return mso_forall(fresh, mso_le(fresh, y));
}

// y = x + 1
MsoPtr mso_succ(const std::string& y, const std::string& x, const std::string& fresh) {
    return and_all({mso_le(x, y), mso_not(mso_le(y, x)),
                    mso_forall(fresh, mso_or(mso_le(fresh, x), mso_le(y, fresh)))});
}

MsoPtr mso_partition(const std::vector<std::string>& sets, const std::string& x) {
    std::vector<MsoPtr> alts;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::vector<MsoPtr> conj_parts{mso_in(x, sets[i])};
        for (std::size_t j = 0; j < sets.size(); ++j)
            if (j != i) conj_parts.push_back(mso_not(mso_in(x, sets[j])));
        alts.push_back(and_all(std::move(conj_parts)));
    }
    return mso_forall(x, or_all(std::move(alts)));
}

} // namespace

RmsoSentence automaton_to_rmso(const MkAutomaton& a) {
    RmsoSentence out;
    out.in_ter_normalized = in_ter_one(a);
    const MkAutomaton& b = out.in_ter_normalized;
    std::size_t m = b.transitions.size();

    MkPtr core;
    if (m == 0) {
        // no transitions: zero on every nonempty word
        core = mk_times(mk_bool(mso_false()), mk_const(truth_one()));
        out.path_constraint = mso_false();
    } else {
        for (std::size_t i = 0; i < m; ++i) out.set_vars.push_back("X" + std::to_string(i + 1));

        std::vector<MsoPtr> psi_parts;
        psi_parts.push_back(mso_partition(out.set_vars, "x"));
        for (std::size_t i = 0; i < m; ++i) {
            const auto& t = b.transitions[i];
            psi_parts.push_back(mso_forall(
                "x", mso_imp(mso_in("x", out.set_vars[i]),
                             mso_pred(b.alphabet.letters[t.letter], "x"))));
        }
        {
            std::vector<MsoPtr> pair_alts;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (b.transitions[i].to == b.transitions[j].from)
                        pair_alts.push_back(mso_and(mso_in("x", out.set_vars[i]),
                                                    mso_in("y", out.set_vars[j])));
            psi_parts.push_back(mso_forall(
                "x", mso_forall("y", mso_imp(mso_succ("y", "x", "z"),
                                             or_all(std::move(pair_alts))))));
        }
        {
            std::vector<MsoPtr> starts;
            for (std::size_t i = 0; i < m; ++i)
                if (b.initial_weight(b.transitions[i].from))
                    starts.push_back(mso_in("z", out.set_vars[i]));
            psi_parts.push_back(
                mso_exists("z", mso_and(mso_first("z", "x"), or_all(std::move(starts)))));
        }
        {
            std::vector<MsoPtr> ends;
            for (std::size_t i = 0; i < m; ++i)
                if (b.final_weight(b.transitions[i].to))
                    ends.push_back(mso_in("z1", out.set_vars[i]));
            psi_parts.push_back(
                mso_exists("z1", mso_and(mso_last("z1", "x"), or_all(std::move(ends)))));
        }
        out.path_constraint = and_all(std::move(psi_parts));

        MkPtr weight_sum;
        for (std::size_t i = 0; i < m; ++i) {
            MkPtr clause = mk_imp("x", out.set_vars[i], b.transitions[i].weight);
            weight_sum = weight_sum ? mk_plus(weight_sum, clause) : clause;
        }
        core = mk_times(mk_bool(out.path_constraint), mk_prod_fo("x", weight_sum));
        for (std::size_t i = m; i-- > 0;) core = mk_sum_so(out.set_vars[i], core);
    }

    TruthValue k_eps = behavior(a, {});
    if (k_eps != truth_zero()) {
        // nonzero exactly on the empty word
        MkPtr eps_part = mk_times(mk_bool(mso_forall("x", mso_not(mso_le("x", "x")))),
                                  mk_const(k_eps));
        core = mk_plus(core, eps_part);
    }
    out.sentence = core;
    return out;
}

} // namespace mkfa
