#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvefrob/rational.hpp"

namespace curvefrob {

// A power product x^ex * y^ey.
struct Monomial {
    int ex = 0;
    int ey = 0;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    bool is_one() const { return ex == 0 && ey == 0; }
    bool divides(const Monomial& m) const { return ex <= m.ex && ey <= m.ey; }
    Monomial operator*(const Monomial& m) const { return {ex + m.ex, ey + m.ey}; }
    // caller guarantees m.divides(*this)
    Monomial operator/(const Monomial& m) const { return {ex - m.ex, ey - m.ey}; }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        return {a.ex > b.ex ? a.ex : b.ex, a.ey > b.ey ? a.ey : b.ey};
    }
};

// Strictly positive rational weights for x and y. Default is the unit
// weight system (ordinary total degree).
struct WeightSystem {
    Rational px;
    Rational py;

    WeightSystem() : px(1), py(1) {}
    WeightSystem(Rational x_weight, Rational y_weight)
        : px(std::move(x_weight)), py(std::move(y_weight)) {
        px.canonicalize();
        py.canonicalize();
        if (px <= 0 || py <= 0) throw std::invalid_argument("weights must be positive");
    }

    Rational p_total() const { return Rational(px + py); }
    Rational degree(const Monomial& m) const {
        return Rational(Rational(m.ex) * px + Rational(m.ey) * py);
    }
};

// Sparse bivariate polynomial with exact rational coefficients. The term map
// never stores a zero coefficient, so equality is map equality.
class Poly {
  public:
    using TermMap = std::map<Monomial, Rational>;

    Poly() = default;

    static Poly constant(const Rational& c) {
        Poly p;
        p.add_term({0, 0}, c);
        return p;
    }
    static Poly monomial(const Monomial& m, const Rational& c = Rational(1)) {
        Poly p;
        p.add_term(m, c);
        return p;
    }
    static Poly var_x() { return monomial({1, 0}); }
    static Poly var_y() { return monomial({0, 1}); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rational(-c));
        return r;
    }

    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, Rational(ca * cb));
        return r;
    }

    // p * c * x^m, used heavily by polynomial division
    Poly mul_term(const Monomial& m, const Rational& c) const {
        Poly r;
        if (c == 0) return r;
        for (const auto& [mp, cp] : terms_) r.terms_.emplace(mp * m, Rational(cp * c));
        return r;
    }

    Poly operator*(const Rational& c) const { return mul_term({0, 0}, c); }

    Poly pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative polynomial exponent");
        Poly r = constant(1);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const Poly&, const Poly&) = default;

  private:
    TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

enum class Var { x, y };

inline Poly partial_derivative(const Poly& p, Var v) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        if (v == Var::x) {
            if (m.ex > 0) r.add_term({m.ex - 1, m.ey}, Rational(c * m.ex));
        } else {
            if (m.ey > 0) r.add_term({m.ex, m.ey - 1}, Rational(c * m.ey));
        }
    }
    return r;
}

// det of the Jacobian of the map (a, b)
inline Poly jacobian_det(const Poly& a, const Poly& b) {
    return partial_derivative(a, Var::x) * partial_derivative(b, Var::y) -
           partial_derivative(a, Var::y) * partial_derivative(b, Var::x);
}

// Common weighted degree of all terms, or nullopt when the terms mix degrees.
// The zero polynomial has no degree.
inline std::optional<Rational> weighted_degree(const Poly& p, const WeightSystem& w) {
    if (p.is_zero()) throw std::invalid_argument("weighted degree of the zero polynomial");
    std::optional<Rational> deg;
    for (const auto& [m, c] : p.terms()) {
        Rational d = w.degree(m);
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

inline bool is_quasi_homogeneous(const Poly& p, const WeightSystem& w) {
    return p.is_zero() || weighted_degree(p, w).has_value();
}

inline Rational max_weighted_degree(const Poly& p, const WeightSystem& w) {
    if (p.is_zero()) throw std::invalid_argument("degree of the zero polynomial");
    Rational best(0);
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational d = w.degree(m);
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

// Terms in canonical print order: descending weighted degree, ties broken by
// descending x exponent.
inline std::vector<std::pair<Monomial, Rational>> sorted_terms(const Poly& p,
                                                               const WeightSystem& w) {
    std::vector<std::pair<Monomial, Rational>> out(p.terms().begin(), p.terms().end());
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        Rational da = w.degree(a.first);
        Rational db = w.degree(b.first);
        if (da != db) return da > db;
        return a.first.ex > b.first.ex;
    });
    return out;
}

inline std::string to_string(const Monomial& m) {
    if (m.is_one()) return "1";
    std::string s;
    if (m.ex > 0) {
        s += "x";
        if (m.ex > 1) s += "^" + std::to_string(m.ex);
    }
    if (m.ey > 0) {
        if (!s.empty()) s += "*";
        s += "y";
        if (m.ey > 1) s += "^" + std::to_string(m.ey);
    }
    return s;
}

// Canonical text form; re-parsing it reproduces the polynomial exactly.
inline std::string to_string(const Poly& p, const WeightSystem& w) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : sorted_terms(p, w)) {
        Rational a = Rational(abs(c));
        std::string mono = m.is_one() ? std::string() : to_string(m);
        std::string piece;
        if (mono.empty())
            piece = to_string(a);
        else if (a == 1)
            piece = mono;
        else
            piece = to_string(a) + "*" + mono;
        if (first) {
            s += (c < 0 ? "-" : "") + piece;
            first = false;
        } else {
            s += (c < 0 ? " - " : " + ") + piece;
        }
    }
    return s;
}

inline std::string to_string(const Poly& p) { return to_string(p, WeightSystem(1, 1)); }

}  // namespace curvefrob
