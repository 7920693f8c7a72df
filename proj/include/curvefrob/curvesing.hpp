#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvefrob/groebner.hpp"
#include "curvefrob/poly.hpp"
#include "curvefrob/seeded.hpp"

namespace curvefrob {

enum class ValidationCode { NotQuasiHomogeneous, SmoothCurve, NonIsolated, DegenerateF };

inline const char* to_string(ValidationCode c) {
    switch (c) {
        case ValidationCode::NotQuasiHomogeneous: return "NotQuasiHomogeneous";
        case ValidationCode::SmoothCurve: return "SmoothCurve";
        case ValidationCode::NonIsolated: return "NonIsolated";
        case ValidationCode::DegenerateF: return "DegenerateF";
    }
    return "Unknown";
}

class ValidationError : public std::runtime_error {
  public:
    ValidationError(ValidationCode code, std::string which, const std::string& message)
        : std::runtime_error(message), code_(code), which_(std::move(which)) {}
    ValidationCode code() const { return code_; }
    const std::string& which() const { return which_; }

  private:
    ValidationCode code_;
    std::string which_;
};

// A validated problem instance. Weights are normalized so that f has weighted
// degree exactly 1; e is the degree of g under the normalized weights and J
// the Jacobian determinant of the map (f, g). The Milnor ring O/(g, J) keeps
// its Groebner basis built from the generator list {g, J} in that order, so
// ideal-membership cofactors can be read back against (g, J).
struct CurveFunctionPair {
    Poly f;
    Poly g;
    WeightSystem weights;
    Rational e;
    Rational p_total;
    Poly J;
    Poly gx;
    Poly gy;
    MonomialOrder order;
    QuotientRing milnor_ring;

    int mu() const { return milnor_ring.dim; }
    // nu(h) = deg h + p_total - e for homogeneous h
    Rational nu_of_degree(const Rational& degree) const { return Rational(degree + p_total - e); }
};

struct MilnorReport {
    int mu = 0;
    int mu1 = 0;
    int mu2 = 0;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

inline CurveFunctionPair validate_pair(const Poly& f, const Poly& g, const WeightSystem& raw) {
    if (f.is_zero())
        throw ValidationError(ValidationCode::DegenerateF, "f", "f is the zero polynomial");
    if (g.is_zero())
        throw ValidationError(ValidationCode::NonIsolated, "g", "g is the zero polynomial");

    // C_0 must be singular at the origin: no constant and no linear term in g.
    // Checked before homogeneity so that an input smooth for structural
    // reasons reports SmoothCurve whatever the weights are.
    if (g.coefficient({0, 0}) != 0 || g.coefficient({1, 0}) != 0 || g.coefficient({0, 1}) != 0)
        throw ValidationError(ValidationCode::SmoothCurve, "g",
                              "g has a constant or linear term, so the curve g = 0 is smooth at "
                              "the origin (or misses it)");

    auto fdeg = weighted_degree(f, raw);
    if (!fdeg)
        throw ValidationError(ValidationCode::NotQuasiHomogeneous, "f",
                              "f is not quasi-homogeneous for the given weights");
    auto gdeg = weighted_degree(g, raw);
    if (!gdeg)
        throw ValidationError(ValidationCode::NotQuasiHomogeneous, "g",
                              "g is not quasi-homogeneous for the given weights");
    if (*fdeg <= 0)
        throw ValidationError(ValidationCode::DegenerateF, "f",
                              "f must have positive weighted degree");

    // rescale so that deg f == 1
    WeightSystem weights(Rational(raw.px / *fdeg), Rational(raw.py / *fdeg));
    Rational e = *weighted_degree(g, weights);

    MonomialOrder order{weights};
    Poly J = jacobian_det(f, g);
    Poly gx = partial_derivative(g, Var::x);
    Poly gy = partial_derivative(g, Var::y);

    QuotientRing milnor_ring;
    try {
        milnor_ring = staircase_basis(buchberger({g, J}, order));
    } catch (const InfiniteDimensionalError&) {
        throw ValidationError(ValidationCode::NonIsolated, "O/(g,J)",
                              "dim O/(g, J) is infinite: f is constant on a component of the "
                              "curve or the singularity is not isolated");
    }
    if (milnor_ring.dim == 0)
        throw ValidationError(ValidationCode::DegenerateF, "O/(g,J)",
                              "dim O/(g, J) = 0: f has no critical point on the curve");

    try {
        quotient_dim({f, g}, order);
    } catch (const InfiniteDimensionalError&) {
        throw ValidationError(ValidationCode::NonIsolated, "O/(f,g)",
                              "dim O/(f, g) is infinite: f and g share a component");
    }
    try {
        quotient_dim({gx, gy}, order);
    } catch (const InfiniteDimensionalError&) {
        throw ValidationError(ValidationCode::NonIsolated, "O/(g_x,g_y)",
                              "dim O/(g_x, g_y) is infinite: g is non-reduced or has a "
                              "non-isolated singularity");
    }

    return CurveFunctionPair{f, g, weights, e, weights.p_total(), J, gx, gy, order, milnor_ring};
}

// mu from the Milnor ring, mu1 of the curve, mu2 of the zero-dimensional
// intersection (f, g). mu = mu1 + mu2 and the second route
// mu2 = dim O/(f, g, J) are asserted, not assumed.
inline MilnorReport milnor_numbers(const CurveFunctionPair& pair) {
    MilnorReport r;
    r.mu = pair.milnor_ring.dim;
    r.mu1 = quotient_dim({pair.gx, pair.gy}, pair.order);
    r.mu2 = quotient_dim({pair.f, pair.g}, pair.order) - 1;
    int mu2_bis = quotient_dim({pair.f, pair.g, pair.J}, pair.order);
    if (r.mu != r.mu1 + r.mu2 || r.mu2 != mu2_bis) {
        std::ostringstream os;
        os << "milnor number inconsistency: mu=" << r.mu << " mu1=" << r.mu1 << " mu2=" << r.mu2
           << " dim O/(f,g,J)=" << mu2_bis;
        throw std::logic_error(os.str());
    }
    return r;
}

// The kernel of multiplication by f on O/(g, J), the image of the gradient
// ideal in O/(g, J) and dim O/(f, g, J) must all equal mu2.
inline CheckResult kernel_identity_check(const CurveFunctionPair& pair) {
    const QuotientRing& q = pair.milnor_ring;
    QMatrix mf = mult_matrix(pair.f, q);
    int k1 = q.dim - rank(mf);

    std::vector<std::vector<Rational>> span;
    for (const Monomial& m : q.staircase) {
        Poly mono = Poly::monomial(m);
        span.push_back(q.nf_coords(mono * pair.gx));
        span.push_back(q.nf_coords(mono * pair.gy));
    }
    QMatrix span_matrix = QMatrix::from_columns(span);
    int k2 = span.empty() ? 0 : rank(span_matrix);

    int k3 = quotient_dim({pair.f, pair.g, pair.J}, pair.order);
    int mu2 = quotient_dim({pair.f, pair.g}, pair.order) - 1;

    std::ostringstream os;
    os << "dim ker(f.)=" << k1 << ", dim ((g_x,g_y)+(g))/((g)+(J))=" << k2
       << ", dim O/(f,g,J)=" << k3 << ", mu2=" << mu2;
    return CheckResult{"kernel_identity", k1 == mu2 && k2 == mu2 && k3 == mu2, os.str()};
}

// Weighted Euler relations tying x*J and y*J to f times the gradient of g
// modulo (g):  p_x*x*J = f*g_y  and  p_y*y*J = -f*g_x.
inline CheckResult euler_identity_check(const CurveFunctionPair& pair) {
    GroebnerBasis gb_g = buchberger({pair.g}, pair.order);
    Poly lhs_x = Poly::var_x() * pair.J * pair.weights.px - pair.f * pair.gy;
    Poly lhs_y = Poly::var_y() * pair.J * pair.weights.py + pair.f * pair.gx;
    bool ok_x = normal_form(lhs_x, gb_g).is_zero();
    bool ok_y = normal_form(lhs_y, gb_g).is_zero();
    std::ostringstream os;
    os << "p_x*x*J - f*g_y " << (ok_x ? "=" : "!=") << " 0 mod (g); p_y*y*J + f*g_x "
       << (ok_y ? "=" : "!=") << " 0 mod (g)";
    return CheckResult{"euler_identity", ok_x && ok_y, os.str()};
}

// nu must be positive on the gradient ideal; checked on its generators.
inline CheckResult nu_positivity_check(const CurveFunctionPair& pair) {
    bool ok = true;
    std::ostringstream os;
    for (const auto& [name, p] : {std::pair<const char*, const Poly*>{"g_x", &pair.gx},
                                  {"g_y", &pair.gy}}) {
        if (p->is_zero()) {
            ok = false;
            os << name << " = 0; ";
            continue;
        }
        auto deg = weighted_degree(*p, pair.weights);
        if (!deg) {
            ok = false;
            os << name << " not homogeneous; ";
            continue;
        }
        Rational nu = pair.nu_of_degree(*deg);
        ok = ok && nu > 0;
        os << "nu(" << name << ")=" << to_string(nu) << " ";
    }
    return CheckResult{"nu_positivity", ok, os.str()};
}

// dim O/(g - t0, J) must stay equal to mu for every sample; t0 = 0 is always
// included.
inline CheckResult mu_constancy_probe(const CurveFunctionPair& pair,
                                      const std::vector<Rational>& t_samples) {
    int mu = pair.milnor_ring.dim;
    bool ok = true;
    std::ostringstream os;
    std::vector<Rational> all{Rational(0)};
    all.insert(all.end(), t_samples.begin(), t_samples.end());
    for (const Rational& t0 : all) {
        Poly shifted = pair.g - Poly::constant(t0);
        int d = -1;
        try {
            d = quotient_dim({shifted, pair.J}, pair.order);
        } catch (const InfiniteDimensionalError&) {
            d = -1;
        }
        if (d != mu) ok = false;
        os << "t0=" << to_string(t0) << ": dim=" << (d < 0 ? std::string("inf") : std::to_string(d))
           << " ";
    }
    os << "(mu=" << mu << ")";
    return CheckResult{"mu_constancy", ok, os.str()};
}

// {1, 2, -1} plus two seeded rationals with numerator and denominator in
// [1, 7].
inline std::vector<Rational> default_t_samples(std::uint64_t seed) {
    std::vector<Rational> out{Rational(1), Rational(2), Rational(-1)};
    SeededRng rng(seed);
    for (int i = 0; i < 2; ++i) {
        int num = rng.next_int(1, 7);
        int den = rng.next_int(1, 7);
        Rational q(num, den);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

}  // namespace curvefrob
