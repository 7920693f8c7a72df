#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvefrob/poly.hpp"
#include "curvefrob/qmatrix.hpp"

namespace curvefrob {

// Weighted-degree order with exact rational degree comparison, ties broken
// lexicographically with x > y. Positive weights make it a well-order, so
// Buchberger terminates on inhomogeneous input too.
struct MonomialOrder {
    WeightSystem weight;

    // <0 when a < b, 0 when equal, >0 when a > b
    int compare(const Monomial& a, const Monomial& b) const {
        if (a == b) return 0;
        Rational da = weight.degree(a);
        Rational db = weight.degree(b);
        if (da != db) return da < db ? -1 : 1;
        return a.ex < b.ex ? -1 : 1;
    }
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

inline std::pair<Monomial, Rational> leading_term(const Poly& p, const MonomialOrder& ord) {
    if (p.is_zero()) throw std::invalid_argument("leading term of the zero polynomial");
    auto it = p.terms().begin();
    std::pair<Monomial, Rational> best{it->first, it->second};
    for (++it; it != p.terms().end(); ++it)
        if (ord.greater(it->first, best.first)) best = {it->first, it->second};
    return best;
}

inline Monomial leading_monomial(const Poly& p, const MonomialOrder& ord) {
    return leading_term(p, ord).first;
}

class InfiniteDimensionalError : public std::runtime_error {
  public:
    explicit InfiniteDimensionalError(const std::string& what) : std::runtime_error(what) {}
};

// Reduced Groebner basis. Every generator is monic, no generator's leading
// monomial divides another's, and every tail is fully reduced. `lifts`
// expresses each generator in terms of `input`:
//   generators[i] == sum_j lifts[i][j] * input[j]
struct GroebnerBasis {
    std::vector<Poly> generators;
    MonomialOrder order;
    std::vector<Poly> input;
    std::vector<std::vector<Poly>> lifts;
};

// Full multivariate division by an ordered list of divisors. Returns the
// remainder (no term divisible by any divisor's leading monomial) and the
// quotient against each divisor. Divisor choice is always the first match,
// which keeps the result deterministic.
inline std::pair<Poly, std::vector<Poly>> divide(const Poly& p, const std::vector<Poly>& divisors,
                                                 const MonomialOrder& ord) {
    std::vector<std::pair<Monomial, Rational>> lead;
    lead.reserve(divisors.size());
    for (const Poly& d : divisors) lead.push_back(leading_term(d, ord));

    Poly remainder;
    std::vector<Poly> quotients(divisors.size());
    Poly work = p;
    while (!work.is_zero()) {
        auto [lm, lc] = leading_term(work, ord);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!lead[i].first.divides(lm)) continue;
            Monomial m = lm / lead[i].first;
            Rational c = Rational(lc / lead[i].second);
            work -= divisors[i].mul_term(m, c);
            quotients[i].add_term(m, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.add_term(lm, lc);
            work.add_term(lm, Rational(-lc));
        }
    }
    return {remainder, quotients};
}

inline Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
    return divide(p, gb.generators, gb.order).first;
}

// Remainder plus cofactors over the *original* generating set:
//   p == remainder + sum_j cof[j] * gb.input[j]
inline std::pair<Poly, std::vector<Poly>> normal_form_with_input_cofactors(const Poly& p,
                                                                           const GroebnerBasis& gb) {
    auto [rem, quot] = divide(p, gb.generators, gb.order);
    std::vector<Poly> cof(gb.input.size());
    for (std::size_t i = 0; i < gb.generators.size(); ++i) {
        if (quot[i].is_zero()) continue;
        for (std::size_t j = 0; j < gb.input.size(); ++j) cof[j] += quot[i] * gb.lifts[i][j];
    }
    return {rem, cof};
}

namespace detail {

struct SPairKey {
    Monomial lcm;
    std::size_t i;
    std::size_t j;
};

struct SPairLess {
    MonomialOrder order;
    bool operator()(const SPairKey& a, const SPairKey& b) const {
        int c = order.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

inline std::vector<Poly> lift_combination(const std::vector<Poly>& a, const std::vector<Poly>& b,
                                          const Monomial& ma, const Rational& ca,
                                          const Monomial& mb, const Rational& cb) {
    std::vector<Poly> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        out[k] = a[k].mul_term(ma, ca) - b[k].mul_term(mb, cb);
    return out;
}

}  // namespace detail

// Buchberger with normal pair selection (smallest lcm in the order) and full
// inter-reduction at the end. Cofactors over the input generators are carried
// through every step.
inline GroebnerBasis buchberger(const std::vector<Poly>& input_gens, const MonomialOrder& order) {
    std::vector<Poly> input;
    for (const Poly& p : input_gens)
        if (!p.is_zero()) input.push_back(p);
    if (input.empty()) throw std::invalid_argument("all generators are zero");

    std::vector<Poly> basis;
    std::vector<std::vector<Poly>> lifts;
    const std::size_t n_inputs = input_gens.size();
    for (std::size_t j = 0, kept = 0; j < input_gens.size(); ++j) {
        if (input_gens[j].is_zero()) continue;
        basis.push_back(input_gens[j]);
        std::vector<Poly> unit(n_inputs);
        unit[j] = Poly::constant(1);
        lifts.push_back(std::move(unit));
        ++kept;
    }

    std::set<detail::SPairKey, detail::SPairLess> pairs{detail::SPairLess{order}};
    auto push_pairs = [&](std::size_t upto) {
        Monomial lm_new = leading_monomial(basis[upto], order);
        for (std::size_t i = 0; i < upto; ++i)
            pairs.insert({Monomial::lcm(leading_monomial(basis[i], order), lm_new), i, upto});
    };
    for (std::size_t i = 1; i < basis.size(); ++i) push_pairs(i);

    while (!pairs.empty()) {
        detail::SPairKey key = *pairs.begin();
        pairs.erase(pairs.begin());
        auto [lmi, lci] = leading_term(basis[key.i], order);
        auto [lmj, lcj] = leading_term(basis[key.j], order);
        // coprime leading monomials: the S-polynomial reduces to zero
        if (Monomial::lcm(lmi, lmj) == lmi * lmj) continue;
        Monomial mi = key.lcm / lmi;
        Monomial mj = key.lcm / lmj;
        Rational ci = Rational(1) / lci;
        Rational cj = Rational(1) / lcj;
        Poly s = basis[key.i].mul_term(mi, ci) - basis[key.j].mul_term(mj, cj);
        std::vector<Poly> slift =
            detail::lift_combination(lifts[key.i], lifts[key.j], mi, ci, mj, cj);

        auto [rem, quot] = divide(s, basis, order);
        if (rem.is_zero()) continue;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (quot[k].is_zero()) continue;
            for (std::size_t t = 0; t < n_inputs; ++t) slift[t] -= quot[k] * lifts[k][t];
        }
        Rational lc = leading_term(rem, order).second;
        Rational inv = Rational(1) / lc;
        rem = rem * inv;
        for (Poly& l : slift) l = l * inv;
        basis.push_back(std::move(rem));
        lifts.push_back(std::move(slift));
        push_pairs(basis.size() - 1);
    }

    // minimalize: drop any generator whose leading monomial is divisible by
    // another's; processing in ascending leading-monomial order keeps this a
    // single pass
    std::vector<std::size_t> idx(basis.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return order.less(leading_monomial(basis[a], order), leading_monomial(basis[b], order));
    });
    std::vector<Poly> kept;
    std::vector<std::vector<Poly>> kept_lifts;
    std::vector<Monomial> kept_lm;
    for (std::size_t id : idx) {
        Monomial lm = leading_monomial(basis[id], order);
        bool divisible = false;
        for (const Monomial& m : kept_lm)
            if (m.divides(lm)) {
                divisible = true;
                break;
            }
        if (divisible) continue;
        Rational inv = Rational(1) / leading_term(basis[id], order).second;
        kept.push_back(basis[id] * inv);
        std::vector<Poly> l = lifts[id];
        for (Poly& q : l) q = q * inv;
        kept_lifts.push_back(std::move(l));
        kept_lm.push_back(lm);
    }

    // tail reduction until stable
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::vector<Poly> others;
            std::vector<std::size_t> omap;
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) {
                    others.push_back(kept[j]);
                    omap.push_back(j);
                }
            if (others.empty()) break;
            auto [rem, quot] = divide(kept[i], others, order);
            if (rem == kept[i]) continue;
            changed = true;
            std::vector<Poly> l = kept_lifts[i];
            for (std::size_t k = 0; k < others.size(); ++k) {
                if (quot[k].is_zero()) continue;
                for (std::size_t t = 0; t < n_inputs; ++t) l[t] -= quot[k] * kept_lifts[omap[k]][t];
            }
            kept[i] = std::move(rem);
            kept_lifts[i] = std::move(l);
        }
    }

    GroebnerBasis gb{std::move(kept), order, input_gens, std::move(kept_lifts)};
    return gb;
}

// Zero-dimensional quotient ring with its staircase of standard monomials,
// sorted by ascending weighted degree with ties broken by descending x
// exponent.
struct QuotientRing {
    GroebnerBasis gb;
    std::vector<Monomial> staircase;
    int dim = 0;
    std::map<Monomial, int> position;

    std::vector<Rational> nf_coords(const Poly& p) const {
        Poly r = normal_form(p, gb);
        std::vector<Rational> v(static_cast<std::size_t>(dim), Rational(0));
        for (const auto& [m, c] : r.terms()) v[static_cast<std::size_t>(position.at(m))] = c;
        return v;
    }

    Poly from_coords(const std::vector<Rational>& v) const {
        Poly p;
        for (int i = 0; i < dim && i < static_cast<int>(v.size()); ++i)
            p.add_term(staircase[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]);
        return p;
    }
};

// Throws InfiniteDimensionalError when the quotient is not a finite vector
// space; that is detected by the absence of a pure power of x or y among the
// leading monomials, not by enumeration.
inline QuotientRing staircase_basis(const GroebnerBasis& gb) {
    int bound_x = -1;
    int bound_y = -1;
    std::vector<Monomial> lead;
    for (const Poly& g : gb.generators) {
        Monomial lm = leading_monomial(g, gb.order);
        lead.push_back(lm);
        if (lm.ey == 0 && (bound_x < 0 || lm.ex < bound_x)) bound_x = lm.ex;
        if (lm.ex == 0 && (bound_y < 0 || lm.ey < bound_y)) bound_y = lm.ey;
    }
    if (bound_x < 0 || bound_y < 0)
        throw InfiniteDimensionalError("quotient ring is not finite dimensional");

    QuotientRing q;
    q.gb = gb;
    for (int a = 0; a < bound_x; ++a)
        for (int b = 0; b < bound_y; ++b) {
            Monomial m{a, b};
            bool standard = true;
            for (const Monomial& lm : lead)
                if (lm.divides(m)) {
                    standard = false;
                    break;
                }
            if (standard) q.staircase.push_back(m);
        }
    std::sort(q.staircase.begin(), q.staircase.end(), [&](const Monomial& a, const Monomial& b) {
        Rational da = gb.order.weight.degree(a);
        Rational db = gb.order.weight.degree(b);
        if (da != db) return da < db;
        return a.ex > b.ex;
    });
    q.dim = static_cast<int>(q.staircase.size());
    for (int i = 0; i < q.dim; ++i) q.position.emplace(q.staircase[static_cast<std::size_t>(i)], i);
    return q;
}

// Matrix of multiplication by h in the staircase basis; column j is the
// normal form of h * staircase[j].
inline QMatrix mult_matrix(const Poly& h, const QuotientRing& q) {
    QMatrix m(q.dim, q.dim);
    for (int j = 0; j < q.dim; ++j) {
        std::vector<Rational> col =
            q.nf_coords(h * Poly::monomial(q.staircase[static_cast<std::size_t>(j)]));
        for (int i = 0; i < q.dim; ++i) m.at(i, j) = col[static_cast<std::size_t>(i)];
    }
    return m;
}

inline int quotient_dim(const std::vector<Poly>& generators, const MonomialOrder& order) {
    return staircase_basis(buchberger(generators, order)).dim;
}

}  // namespace curvefrob
