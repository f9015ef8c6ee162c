// langexpr.hpp -- brute-force oracle semantics for MK-fuzzy language
// operations: a closed expression tree evaluated pointwise, straight
// from the definitions.  Ground truth for every construction; cost is
// exponential in the word length and capped by maxlen at the CLI.

#ifndef MKFA_LANGEXPR_HPP
#define MKFA_LANGEXPR_HPP

#include "mkfa/constructs.hpp"

#include <functional>
#include <memory>

namespace mkfa {

struct LangExpr;
using LangExprPtr = std::shared_ptr<const LangExpr>;

struct LangExpr {
    enum class Kind {
        Behavior,
        Constant,
        CharOfDfa,
        WordIndicator,
        Disj,
        Conj,
        ScalarLeft,
        ScalarRight,
        Cauchy,
        HomImage,
        InvHomImage,
    };

    Kind kind;
    Alphabet alphabet; // the outer alphabet of this node
    TruthValue k;      // Constant, ScalarLeft, ScalarRight
    MkAutomaton automaton;
    Dfa dfa;
    Word word;            // WordIndicator
    LangExprPtr a, b;     // children
    StrictAlphabeticHom hom;
};

LangExprPtr le_behavior(MkAutomaton a);
LangExprPtr le_const(TruthValue k, Alphabet a);
LangExprPtr le_char(Dfa d);
LangExprPtr le_word(Word w, Alphabet a);
LangExprPtr le_disj(LangExprPtr a, LangExprPtr b);
LangExprPtr le_conj(LangExprPtr a, LangExprPtr b);
LangExprPtr le_scalar_left(TruthValue k, LangExprPtr e);
LangExprPtr le_scalar_right(LangExprPtr e, TruthValue k);
LangExprPtr le_cauchy(LangExprPtr a, LangExprPtr b);
/// e must be over h's source; the image is over h's target.
LangExprPtr le_hom(StrictAlphabeticHom h, LangExprPtr e);
/// e must be over h's target; the preimage is over h's source.
LangExprPtr le_invhom(StrictAlphabeticHom h, LangExprPtr e);

/// Literal recursive evaluation.  The Cauchy node folds the |w|+1 split
/// terms in split order; HomImage enumerates the preimages of w in
/// lexicographic source order and folds their values.
TruthValue eval(const LangExpr& x, const Word& w);

/// { w : |w| <= maxlen, t(eval(x,w)) != 0 }, in enumeration order.
std::vector<Word> stgsupp(const LangExpr& x, std::size_t maxlen);

/// Parses the CLI expression syntax: disj(e,e), conj(e,e), cauchy(e,e),
/// scalarL(<k>,e), scalarR(e,<k>), hom(a>b;c>d,e), invhom(map,e),
/// auto(file), char(file), const(<k>), word("...").  The loader resolves
/// auto/char file references.  Constants and word literals take their
/// alphabet from the surrounding expression (or the fallback argument).
struct LangExprLoader {
    std::function<MkAutomaton(const std::string&)> load_mk;
    std::function<Dfa(const std::string&)> load_classical;
};
LangExprPtr parse_lang_expr(const std::string& text, const LangExprLoader& loader,
                            const Alphabet* fallback_alphabet = nullptr);

} // namespace mkfa

#endif // MKFA_LANGEXPR_HPP
