#pragma once

#include <string>
#include <vector>

#include "curvefrob/rational.hpp"

namespace curvefrob {

// Dense univariate polynomial, index = degree, no trailing zero coefficients.
using UniPoly = std::vector<Rational>;

inline void unipoly_trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int unipoly_degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

inline bool unipoly_is_zero(const UniPoly& p) { return p.empty(); }

inline void unipoly_add_term(UniPoly& p, int degree, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(p.size()) <= degree) p.resize(static_cast<std::size_t>(degree) + 1, Rational(0));
    p[static_cast<std::size_t>(degree)] += c;
    unipoly_trim(p);
}

inline UniPoly unipoly_scale(UniPoly p, const Rational& c) {
    if (c == 0) return {};
    for (auto& a : p) a *= c;
    return p;
}

inline UniPoly unipoly_sub(const UniPoly& a, const UniPoly& b) {
    UniPoly r = a;
    if (r.size() < b.size()) r.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    unipoly_trim(r);
    return r;
}

inline UniPoly unipoly_derivative(const UniPoly& p) {
    UniPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) unipoly_add_term(r, static_cast<int>(i) - 1, Rational(p[i] * static_cast<int>(i)));
    return r;
}

inline UniPoly unipoly_monic(UniPoly p) {
    unipoly_trim(p);
    if (p.empty()) return p;
    Rational inv = Rational(1) / p.back();
    for (auto& a : p) a *= inv;
    return p;
}

inline UniPoly unipoly_rem(UniPoly a, const UniPoly& b) {
    unipoly_trim(a);
    while (!a.empty() && a.size() >= b.size()) {
        Rational factor = Rational(a.back() / b.back());
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
        unipoly_trim(a);
    }
    return a;
}

inline UniPoly unipoly_gcd(UniPoly a, UniPoly b) {
    unipoly_trim(a);
    unipoly_trim(b);
    while (!b.empty()) {
        UniPoly r = unipoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return unipoly_monic(std::move(a));
}

inline bool unipoly_is_squarefree(const UniPoly& p) {
    if (unipoly_degree(p) <= 0) return false;
    return unipoly_degree(unipoly_gcd(p, unipoly_derivative(p))) == 0;
}

inline std::string unipoly_to_string(const UniPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::string s;
    for (int d = unipoly_degree(p); d >= 0; --d) {
        const Rational& c = p[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        Rational a = Rational(abs(c));
        std::string mono = d == 0 ? std::string() : (d == 1 ? var : var + "^" + std::to_string(d));
        std::string piece;
        if (mono.empty())
            piece = to_string(a);
        else if (a == 1)
            piece = mono;
        else
            piece = to_string(a) + "*" + mono;
        if (s.empty())
            s += (c < 0 ? "-" : "") + piece;
        else
            s += (c < 0 ? " - " : " + ") + piece;
    }
    return s;
}

}  // namespace curvefrob
