#pragma once

// Independent oracles used to freeze expected values. They deliberately avoid
// the library's data structures and algorithms where they are the thing under
// test: polynomial products are expanded over flat term lists, and expected
// spectra are enumerated directly from the known standard bases.

#include <algorithm>
#include <map>
#include <vector>

#include "curvefrob/frobenius.hpp"
#include "curvefrob/parser.hpp"
#include "curvefrob/seeded.hpp"

namespace testutil {

using curvefrob::CurveFunctionPair;
using curvefrob::Monomial;
using curvefrob::Poly;
using curvefrob::Rational;
using curvefrob::SeededRng;
using curvefrob::SpectrumTable;
using curvefrob::WeightSystem;

inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

struct RawTerm {
    int ex;
    int ey;
    Rational c;
};

// flat-list product with sort-and-merge combining; no term maps involved
inline std::vector<RawTerm> raw_mul(const std::vector<RawTerm>& a, const std::vector<RawTerm>& b) {
    std::vector<RawTerm> prod;
    for (const RawTerm& ta : a)
        for (const RawTerm& tb : b) prod.push_back({ta.ex + tb.ex, ta.ey + tb.ey, Rational(ta.c * tb.c)});
    std::sort(prod.begin(), prod.end(), [](const RawTerm& s, const RawTerm& t) {
        return s.ex != t.ex ? s.ex < t.ex : s.ey < t.ey;
    });
    std::vector<RawTerm> out;
    for (const RawTerm& t : prod) {
        if (!out.empty() && out.back().ex == t.ex && out.back().ey == t.ey)
            out.back().c += t.c;
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const RawTerm& t) { return t.c == 0; }),
              out.end());
    return out;
}

inline Poly to_poly(const std::vector<RawTerm>& terms) {
    Poly p;
    for (const RawTerm& t : terms) p.add_term({t.ex, t.ey}, t.c);
    return p;
}

// Expected spectrum for f = x^a + y^b on the curve family xy = t, by direct
// enumeration of the nu-values over the known monomial basis: the class of 1
// contributes 0, its f-image contributes 1, and the remaining basis monomials
// x^i, y^j contribute i/a and j/b.
inline SpectrumTable pab_spectrum_oracle(int a, int b) {
    std::map<Rational, int> agg;
    agg[Rational(0)] += 1;
    agg[Rational(1)] += 1;
    for (int i = 1; i < a; ++i) {
        Rational q(i, a);
        q.canonicalize();
        agg[q] += 1;
    }
    for (int j = 1; j < b; ++j) {
        Rational q(j, b);
        q.canonicalize();
        agg[q] += 1;
    }
    SpectrumTable t;
    for (const auto& [l, m] : agg) t.entries.emplace_back(l, m);
    return t;
}

inline CurveFunctionPair ak_pair(int k) {
    return curvefrob::validate_pair(Poly::var_x(), Poly::monomial({k, 0}) + Poly::monomial({0, 2}),
                                    WeightSystem(Rational(1), Rational(k, 2)));
}

inline CurveFunctionPair pab_pair(int a, int b) {
    Poly f = Poly::monomial({a, 0}) + Poly::monomial({0, b});
    return curvefrob::validate_pair(f, Poly::monomial({1, 1}),
                                    WeightSystem(Rational(1, a), Rational(1, b)));
}

inline CurveFunctionPair node_pair() { return pab_pair(1, 1); }

inline Poly random_poly(SeededRng& rng, int max_terms = 4, int max_exp = 4) {
    Poly p;
    int terms = rng.next_int(0, max_terms);
    for (int i = 0; i < terms; ++i) {
        Monomial m{rng.next_int(0, max_exp), rng.next_int(0, max_exp)};
        p.add_term(m, Rational(rng.next_int(-5, 5)));
    }
    return p;
}

inline Poly random_nonzero_poly(SeededRng& rng, int max_terms = 4, int max_exp = 4) {
    for (;;) {
        Poly p = random_poly(rng, max_terms, max_exp);
        if (!p.is_zero()) return p;
    }
}

// random quasi-homogeneous polynomial of total degree d for unit weights
inline Poly random_homogeneous_poly(SeededRng& rng, int d) {
    Poly p;
    int terms = rng.next_int(1, 3);
    for (int i = 0; i < terms; ++i) {
        int a = rng.next_int(0, d);
        p.add_term({a, d - a}, Rational(rng.next_int(-4, 4)));
    }
    return p;
}

}  // namespace testutil
