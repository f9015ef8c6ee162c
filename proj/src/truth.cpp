#include "mkfa/truth.hpp"

#include <cstdio>
#include <stdexcept>

namespace mkfa {

namespace {

bool is_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = (s[0] == '-');
        s.erase(0, 1);
    }
    Rational out;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_digits(num) || !is_digits(den))
            throw std::invalid_argument("bad rational literal: " + text);
        mpz_class d(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + text);
        out = Rational(mpz_class(num), d);
        out.canonicalize();
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!is_digits(ip) || (!fp.empty() && !is_digits(fp)))
            throw std::invalid_argument("bad decimal literal: " + text);
        mpz_class scale = 1;
        for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
        mpz_class num = mpz_class(ip) * scale + (fp.empty() ? mpz_class(0) : mpz_class(fp));
        out = Rational(num, scale);
        out.canonicalize();
    } else {
        if (!is_digits(s)) throw std::invalid_argument("bad rational literal: " + text);
        out = Rational(mpz_class(s));
    }
    if (neg) out = -out;
    return out;
}

std::string rational_str(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool TruthValue::is_valid() const {
    const Rational* c[4] = {&t, &f, &u, &e};
    for (auto* r : c)
        if (*r < 0 || *r > 1) return false;
    return t + f + u + e == 1;
}

std::string TruthValue::str() const {
    return "<" + rational_str(t) + "," + rational_str(f) + "," + rational_str(u) + "," +
           rational_str(e) + ">";
}

std::string TruthValue::approx_str() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "<%.6f,%.6f,%.6f,%.6f>", t.get_d(), f.get_d(), u.get_d(),
                  e.get_d());
    return buf;
}

const TruthValue& truth_zero() {
    static const TruthValue z{Rational(0), Rational(1), Rational(0), Rational(0)};
    return z;
}

const TruthValue& truth_one() {
    static const TruthValue o{Rational(1), Rational(0), Rational(0), Rational(0)};
    return o;
}

TruthValue disj(const TruthValue& a, const TruthValue& b) {
    Rational fu = a.f + a.u;
    return {a.t + fu * b.t, a.f * b.f, a.f * b.u + a.u * (b.f + b.u), a.e + fu * b.e};
}

TruthValue conj(const TruthValue& a, const TruthValue& b) {
    Rational tu = a.t + a.u;
    return {a.t * b.t, a.f + tu * b.f, a.t * b.u + a.u * (b.t + b.u), a.e + tu * b.e};
}

TruthValue disj_fold(std::span<const TruthValue> values) {
    TruthValue acc = truth_zero();
    for (const auto& v : values) acc = disj(acc, v);
    return acc;
}

TruthValue conj_fold(std::span<const TruthValue> values) {
    TruthValue acc = truth_one();
    for (const auto& v : values) acc = conj(acc, v);
    return acc;
}

TruthValue parse_truth(const std::string& text) {
    std::string s = text;
    // trim
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(0, 1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    if (s.size() < 2 || s.front() != '<' || s.back() != '>')
        throw std::invalid_argument("truth literal must be <t,f,u,e>: " + text);
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            std::string p = s.substr(start, i - start);
            while (!p.empty() && p.front() == ' ') p.erase(0, 1);
            while (!p.empty() && p.back() == ' ') p.pop_back();
            parts.push_back(p);
            start = i + 1;
        }
    }
    if (parts.size() != 4)
        throw std::invalid_argument("truth literal needs 4 components: " + text);
    TruthValue v{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]),
                 parse_rational(parts[3])};
    const Rational* c[4] = {&v.t, &v.f, &v.u, &v.e};
    for (auto* r : c)
        if (*r < 0 || *r > 1)
            throw std::invalid_argument("truth component out of [0,1]: " + text);
    if (v.t + v.f + v.u + v.e != 1)
        throw std::invalid_argument("truth components must sum to 1: " + text);
    return v;
}

bool truth_less(const TruthValue& a, const TruthValue& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.f != b.f) return a.f < b.f;
    if (a.u != b.u) return a.u < b.u;
    return a.e < b.e;
}

} // namespace mkfa
