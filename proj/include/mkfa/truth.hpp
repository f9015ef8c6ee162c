// truth.hpp -- exact arithmetic for the bimonoid K of truth quadruples.
//
// K = { (t,f,u,e) in [0,1]^4 | t+f+u+e = 1 } carries two associative,
// non-commutative operations: MK-disjunction and MK-conjunction, with
// units (0,1,0,0) and (1,0,0,0).  All arithmetic is exact rational.

#ifndef MKFA_TRUTH_HPP
#define MKFA_TRUTH_HPP

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace mkfa {

// Exact rational, always reduced, denominator > 0.
using Rational = mpq_class;

/// Parses "p", "p/q" or a finite decimal ("0.3" -> 3/10), exactly.
Rational parse_rational(const std::string& text);

/// Canonical rendering: reduced "p/q", or plain "p" when q = 1.
std::string rational_str(const Rational& r);

struct TruthValue {
    Rational t, f, u, e;

    TruthValue() : t(0), f(1), u(0), e(0) {}
    TruthValue(Rational t_, Rational f_, Rational u_, Rational e_)
        : t(std::move(t_)), f(std::move(f_)), u(std::move(u_)), e(std::move(e_)) {}

    bool operator==(const TruthValue& o) const = default;

    // Components in [0,1] and summing to 1, exactly.
    bool is_valid() const;

    /// Canonical form "<t,f,u,e>" with reduced fractions.
    std::string str() const;
    /// Decimal approximation "<0.300000,...>" for display only.
    std::string approx_str() const;
};

// Units: ZERO is the disjunction unit, ONE the conjunction unit.
const TruthValue& truth_zero();
const TruthValue& truth_one();

/// MK-disjunction: (t1+(f1+u1)t2, f1f2, f1u2+u1(f2+u2), e1+(f1+u1)e2).
TruthValue disj(const TruthValue& a, const TruthValue& b);

/// MK-conjunction: (t1t2, f1+(t1+u1)f2, t1u2+u1(t2+u2), e1+(t1+u1)e2).
TruthValue conj(const TruthValue& a, const TruthValue& b);

/// Left-to-right fold of disj; empty sequence yields ZERO.
TruthValue disj_fold(std::span<const TruthValue> values);

/// Left-to-right fold of conj; empty sequence yields ONE.
TruthValue conj_fold(std::span<const TruthValue> values);

/// Parses a literal "<c,c,c,c>" and checks the K invariants.
/// Throws std::invalid_argument on bad syntax, component out of [0,1],
/// or component sum != 1.
TruthValue parse_truth(const std::string& text);

// Total order on quadruples (lexicographic); used only for canonical
// sorting of weight multisets in tests and reports, not by the algebra.
bool truth_less(const TruthValue& a, const TruthValue& b);

} // namespace mkfa

#endif // MKFA_TRUTH_HPP
