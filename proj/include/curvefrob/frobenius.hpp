#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvefrob/gaussmanin.hpp"

namespace curvefrob {

class ResidueError : public std::runtime_error {
  public:
    explicit ResidueError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// monomial in (x, y, u, v); the second pair of variables carries the
// diagonal copy used by the Bezoutian
struct Mono4 {
    int ax = 0, ay = 0, au = 0, av = 0;
    friend auto operator<=>(const Mono4&, const Mono4&) = default;
};

using Poly4 = std::map<Mono4, Rational>;

inline void add_term4(Poly4& p, const Mono4& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline Poly4 mul4(const Poly4& a, const Poly4& b) {
    Poly4 r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b)
            add_term4(r, Mono4{ma.ax + mb.ax, ma.ay + mb.ay, ma.au + mb.au, ma.av + mb.av},
                      Rational(ca * cb));
    return r;
}

inline Poly4 sub4(Poly4 a, const Poly4& b) {
    for (const auto& [m, c] : b) add_term4(a, m, Rational(-c));
    return a;
}

// (p(x, y) - p(u, y)) / (x - u)
inline Poly4 diff_quotient_x(const Poly& p) {
    Poly4 r;
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < m.ex; ++i) add_term4(r, Mono4{i, m.ey, m.ex - 1 - i, 0}, c);
    return r;
}

// (p(u, y) - p(u, v)) / (y - v)
inline Poly4 diff_quotient_y(const Poly& p) {
    Poly4 r;
    for (const auto& [m, c] : p.terms())
        for (int j = 0; j < m.ey; ++j) add_term4(r, Mono4{0, j, m.ex, m.ey - 1 - j}, c);
    return r;
}

}  // namespace detail

// The residue functional on O/(g, J), solved from the Bezoutian of (g, J).
// Conventions are fixed: Bezoutian rows ordered (g, J), difference quotients
// taken in x first and then in y; `dual_coeffs` holds the Bezoutian
// coefficient matrix C with Delta = sum C[i][j] e_i(x,y) e_j(u,v) over the
// staircase, so C * Gram = identity.
struct ResidueFunctional {
    std::vector<Rational> values;  // Res on each staircase monomial
    Rational socle_degree;
    QMatrix dual_coeffs;
    std::string convention = "bezoutian rows (g, J); difference quotients x then y";
};

inline ResidueFunctional bezoutian_dual_basis(const CurveFunctionPair& pair) {
    const QuotientRing& q = pair.milnor_ring;
    const int n = q.dim;

    detail::Poly4 bez = detail::sub4(
        detail::mul4(detail::diff_quotient_x(pair.g), detail::diff_quotient_y(pair.J)),
        detail::mul4(detail::diff_quotient_y(pair.g), detail::diff_quotient_x(pair.J)));

    std::map<Monomial, std::vector<Rational>> nf_cache;
    auto reduced = [&](const Monomial& m) -> const std::vector<Rational>& {
        auto it = nf_cache.find(m);
        if (it == nf_cache.end())
            it = nf_cache.emplace(m, q.nf_coords(Poly::monomial(m))).first;
        return it->second;
    };

    QMatrix c(n, n);
    for (const auto& [m4, coeff] : bez) {
        const auto& left = reduced(Monomial{m4.ax, m4.ay});
        const auto& right = reduced(Monomial{m4.au, m4.av});
        for (int i = 0; i < n; ++i) {
            if (left[static_cast<std::size_t>(i)] == 0) continue;
            Rational ci = Rational(coeff * left[static_cast<std::size_t>(i)]);
            for (int j = 0; j < n; ++j)
                if (right[static_cast<std::size_t>(j)] != 0)
                    c.at(i, j) += ci * right[static_cast<std::size_t>(j)];
        }
    }

    auto one = q.position.find(Monomial{0, 0});
    if (one == q.position.end()) throw ResidueError("1 is not a standard monomial");
    std::vector<Rational> rhs(static_cast<std::size_t>(n), Rational(0));
    rhs[static_cast<std::size_t>(one->second)] = 1;
    auto solved = solve(c, rhs);
    if (!solved) throw ResidueError("degenerate Bezoutian coefficient matrix");

    ResidueFunctional rf;
    rf.values = *solved;
    rf.socle_degree = Rational(pair.e + *weighted_degree(pair.J, pair.weights) - pair.p_total);
    rf.dual_coeffs = std::move(c);
    return rf;
}

inline Rational residue_of(const Poly& h, const CurveFunctionPair& pair,
                           const ResidueFunctional& rf) {
    std::vector<Rational> coords = pair.milnor_ring.nf_coords(h);
    Rational r(0);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) r += coords[i] * rf.values[i];
    return r;
}

// staircase index of the unique standard monomial of socle degree
inline int socle_index(const CurveFunctionPair& pair, const ResidueFunctional& rf) {
    int found = -1;
    for (int i = 0; i < pair.milnor_ring.dim; ++i) {
        if (pair.weights.degree(pair.milnor_ring.staircase[static_cast<std::size_t>(i)]) !=
            rf.socle_degree)
            continue;
        if (found >= 0) throw ResidueError("socle degree carries more than one standard monomial");
        found = i;
    }
    if (found < 0) throw ResidueError("no standard monomial of socle degree");
    return found;
}

// Res(e_i f_j) = delta_ij, i.e. C * Gram = identity.
inline CheckResult bezoutian_duality_check(const CurveFunctionPair& pair,
                                           const ResidueFunctional& rf) {
    const QuotientRing& q = pair.milnor_ring;
    const int n = q.dim;
    QMatrix gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Poly prod = Poly::monomial(q.staircase[static_cast<std::size_t>(i)]) *
                        Poly::monomial(q.staircase[static_cast<std::size_t>(j)]);
            Rational r = residue_of(prod, pair, rf);
            gram.at(i, j) = r;
            gram.at(j, i) = r;
        }
    bool ok = rf.dual_coeffs * gram == QMatrix::identity(n);
    return CheckResult{"bezoutian_duality", ok,
                       ok ? "Res(e_i f_j) = delta_ij on the staircase basis"
                          : "dual basis property violated"};
}

// Res(Jac(g, J)) must equal mu; this pins the residue orientation.
inline CheckResult euler_jacobi_check(const CurveFunctionPair& pair, const ResidueFunctional& rf) {
    Rational r = residue_of(jacobian_det(pair.g, pair.J), pair, rf);
    bool ok = r == pair.milnor_ring.dim;
    std::ostringstream os;
    os << "Res(Jac(g, J)) = " << to_string(r) << ", mu = " << pair.milnor_ring.dim;
    return CheckResult{"euler_jacobi", ok, os.str()};
}

// Res vanishes on every standard monomial away from the socle degree.
inline CheckResult residue_grading_check(const CurveFunctionPair& pair,
                                         const ResidueFunctional& rf) {
    bool ok = true;
    std::ostringstream os;
    for (int i = 0; i < pair.milnor_ring.dim; ++i) {
        Rational deg = pair.weights.degree(pair.milnor_ring.staircase[static_cast<std::size_t>(i)]);
        if (deg != rf.socle_degree && rf.values[static_cast<std::size_t>(i)] != 0) {
            ok = false;
            os << "Res(" << to_string(pair.milnor_ring.staircase[static_cast<std::size_t>(i)])
               << ") != 0 off the socle degree; ";
        }
    }
    if (ok) os << "Res supported on socle degree " << to_string(rf.socle_degree);
    return CheckResult{"residue_grading", ok, os.str()};
}

// The Frobenius algebra at the origin over the chain-representative basis
// (each representative rescaled to leading staircase coefficient 1).
struct FrobeniusData {
    std::vector<Poly> basis;
    std::vector<std::pair<int, int>> labels;
    std::vector<Rational> nus;
    int unit_index = -1;
    int socle_staircase_index = -1;
    QMatrix metric_raw;
    QMatrix metric_normalized;
    std::vector<std::vector<std::vector<Rational>>> structure;  // C[a][b][c]
    ResidueFunctional residue;
};

inline std::pair<QMatrix, QMatrix> metric_matrix(const CurveFunctionPair& pair,
                                                 const ResidueFunctional& rf,
                                                 const std::vector<Poly>& basis) {
    const int n = static_cast<int>(basis.size());
    QMatrix raw(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Rational r = residue_of(basis[static_cast<std::size_t>(a)] *
                                        basis[static_cast<std::size_t>(b)],
                                    pair, rf);
            raw.at(a, b) = r;
            raw.at(b, a) = r;
        }
    int socle = socle_index(pair, rf);
    Rational scale = rf.values[static_cast<std::size_t>(socle)];
    if (scale == 0) throw ResidueError("residue vanishes on the socle monomial");
    QMatrix normalized(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) normalized.at(a, b) = Rational(raw.at(a, b) / scale);
    return {raw, normalized};
}

inline FrobeniusData multiplication_table(const CurveFunctionPair& pair,
                                          const JordanChainSet& chains) {
    const QuotientRing& q = pair.milnor_ring;
    const int n = chains.total();

    FrobeniusData data;
    data.labels = chains.labels;
    for (int k = 0; k < n; ++k) {
        const ChainVector& v = chains.at(k);
        // rescale to leading staircase coefficient 1
        Rational lead(0);
        for (const auto& c : v.coords)
            if (c != 0) {
                lead = c;
                break;
            }
        data.basis.push_back(v.rep * Rational(Rational(1) / lead));
        data.nus.push_back(v.nu);
    }

    std::vector<std::vector<Rational>> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (const Poly& b : data.basis) cols.push_back(q.nf_coords(b));
    QMatrix basis_matrix = QMatrix::from_columns(cols);
    auto basis_inv = inverse(basis_matrix);
    if (!basis_inv) throw std::logic_error("frobenius basis is singular");

    data.structure.assign(static_cast<std::size_t>(n),
                          std::vector<std::vector<Rational>>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<Rational> prod = q.nf_coords(data.basis[static_cast<std::size_t>(a)] *
                                                     data.basis[static_cast<std::size_t>(b)]);
            data.structure[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                *basis_inv * prod;
        }

    Poly unit = Poly::constant(1);
    for (int k = 0; k < n; ++k)
        if (data.basis[static_cast<std::size_t>(k)] == unit) data.unit_index = k;
    if (data.unit_index < 0) throw std::logic_error("no basis element represents 1");

    data.residue = bezoutian_dual_basis(pair);
    auto [raw, normalized] = metric_matrix(pair, data.residue, data.basis);
    data.metric_raw = std::move(raw);
    data.metric_normalized = std::move(normalized);
    data.socle_staircase_index = socle_index(pair, data.residue);
    return data;
}

inline FrobeniusData multiplication_table(const CurveFunctionPair& pair) {
    return multiplication_table(pair, homogeneous_jordan_chains(pair));
}

// All checks are exact: commutativity and associativity of the structure
// constants, the unit law, multiplication invariance of the metric, symmetry
// and nondegeneracy, and the pairing grading nu(a) + nu(b) = 1 on nonzero
// metric entries.
inline std::vector<CheckResult> frobenius_axiom_check(const FrobeniusData& data) {
    const int n = static_cast<int>(data.basis.size());
    auto c = [&](int a, int b, int k) -> const Rational& {
        return data.structure[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                             [static_cast<std::size_t>(k)];
    };
    std::vector<CheckResult> out;

    bool comm = true;
    for (int a = 0; a < n && comm; ++a)
        for (int b = 0; b < n && comm; ++b)
            for (int k = 0; k < n; ++k)
                if (c(a, b, k) != c(b, a, k)) {
                    comm = false;
                    break;
                }
    out.push_back({"frobenius_commutativity", comm, comm ? "C_ab = C_ba" : "violated"});

    bool assoc = true;
    for (int a = 0; a < n && assoc; ++a)
        for (int b = 0; b < n && assoc; ++b)
            for (int d = 0; d < n && assoc; ++d)
                for (int k = 0; k < n && assoc; ++k) {
                    Rational lhs(0), rhs(0);
                    for (int e = 0; e < n; ++e) {
                        lhs += c(a, b, e) * c(e, d, k);
                        rhs += c(b, d, e) * c(a, e, k);
                    }
                    if (lhs != rhs) assoc = false;
                }
    out.push_back({"frobenius_associativity", assoc, assoc ? "(a*b)*c = a*(b*c)" : "violated"});

    bool unit = data.unit_index >= 0;
    for (int b = 0; b < n && unit; ++b)
        for (int k = 0; k < n; ++k)
            if (c(data.unit_index, b, k) != (k == b ? 1 : 0)) {
                unit = false;
                break;
            }
    out.push_back({"frobenius_unit", unit, unit ? "1 * b = b" : "violated"});

    bool inv = true;
    for (int a = 0; a < n && inv; ++a)
        for (int b = 0; b < n && inv; ++b)
            for (int d = 0; d < n && inv; ++d) {
                Rational lhs(0), rhs(0);
                for (int e = 0; e < n; ++e) {
                    lhs += c(a, b, e) * data.metric_raw.at(e, d);
                    rhs += c(b, d, e) * data.metric_raw.at(a, e);
                }
                if (lhs != rhs) {
                    inv = false;
                    break;
                }
            }
    out.push_back({"frobenius_invariance", inv, inv ? "<a*b, c> = <a, b*c>" : "violated"});

    bool sym = data.metric_raw == data.metric_raw.transpose();
    out.push_back({"frobenius_metric_symmetry", sym, sym ? "metric symmetric" : "violated"});

    bool nondeg = rank(data.metric_raw) == n;
    out.push_back({"frobenius_nondegeneracy", nondeg,
                   nondeg ? "metric invertible" : "metric singular"});

    bool grading = true;
    std::ostringstream os;
    for (int a = 0; a < n && grading; ++a)
        for (int b = 0; b < n; ++b)
            if (data.metric_raw.at(a, b) != 0 &&
                Rational(data.nus[static_cast<std::size_t>(a)] +
                         data.nus[static_cast<std::size_t>(b)]) != 1) {
                grading = false;
                os << "<h_" << a << ", h_" << b << "> != 0 with nu sum "
                   << to_string(Rational(data.nus[static_cast<std::size_t>(a)] +
                                         data.nus[static_cast<std::size_t>(b)]));
                break;
            }
    out.push_back({"frobenius_pairing_grading", grading,
                   grading ? "<a,b> != 0 implies nu(a)+nu(b) = 1" : os.str()});
    return out;
}

// The class of 1 is the primitive element: it must appear among the chain
// vectors, its nu is p_total - e, the period map on the chain basis is the
// identity by the choice of unfolding coordinates, and its residue eigenvalue
// (the diagonal entry of Ainf) is -lambda(nu(1)).
inline CheckResult primitivity_check(const CurveFunctionPair& pair, const JordanChainSet& chains,
                                     const ConnectionPair& connection) {
    const QuotientRing& q = pair.milnor_ring;
    auto it = q.position.find(Monomial{0, 0});
    if (it == q.position.end())
        return CheckResult{"primitivity", false, "1 is not a standard monomial"};
    int one_pos = it->second;

    int unit_flat = -1;
    for (int k = 0; k < chains.total(); ++k) {
        const auto& coords = chains.at(k).coords;
        bool is_unit = true;
        for (int i = 0; i < q.dim; ++i)
            if (coords[static_cast<std::size_t>(i)] != (i == one_pos ? 1 : 0)) {
                is_unit = false;
                break;
            }
        if (is_unit) {
            unit_flat = k;
            break;
        }
    }
    if (unit_flat < 0)
        return CheckResult{"primitivity", false, "class of 1 is not a chain vector"};

    Rational expected_nu = Rational(pair.p_total - pair.e);
    bool nu_ok = chains.at(unit_flat).nu == expected_nu;
    Rational eigen = connection.Ainf.at(unit_flat, unit_flat);
    Rational expected_eigen = Rational(-lambda_clamp(expected_nu));
    bool eigen_ok = eigen == expected_eigen;
    bool head_ok = chains.labels[static_cast<std::size_t>(unit_flat)].second == 0;

    std::ostringstream os;
    os << "unit at basis index " << unit_flat << ", nu = " << to_string(chains.at(unit_flat).nu)
       << ", residue eigenvalue = " << to_string(eigen)
       << "; period map is the identity on the chain basis by construction";
    return CheckResult{"primitivity", nu_ok && eigen_ok && head_ok, os.str()};
}

// Every non-unit basis element multiplies nilpotently at the origin.
inline CheckResult nilpotency_probe(const CurveFunctionPair& pair, const FrobeniusData& data) {
    bool ok = true;
    std::ostringstream os;
    const int mu = pair.milnor_ring.dim;
    for (int a = 0; a < static_cast<int>(data.basis.size()); ++a) {
        if (a == data.unit_index) continue;
        QMatrix m = mult_matrix(data.basis[static_cast<std::size_t>(a)], pair.milnor_ring);
        int index = -1;
        QMatrix p = QMatrix::identity(mu);
        for (int k = 1; k <= mu; ++k) {
            p = p * m;
            if (p.is_zero()) {
                index = k;
                break;
            }
        }
        if (index < 0) {
            ok = false;
            os << "(" << to_string(data.basis[static_cast<std::size_t>(a)], pair.weights)
               << ") not nilpotent; ";
        } else {
            os << "(" << to_string(data.basis[static_cast<std::size_t>(a)], pair.weights)
               << ")^" << index << " = 0; ";
        }
    }
    return CheckResult{"nilpotency", ok, os.str()};
}

struct FibreProbeReport {
    Rational t0;
    std::vector<Rational> u;
    int dim = -1;
    bool dim_ok = false;
    bool semisimple = false;
    bool inconclusive = false;
    std::string note;
};

// Unfolds f by u over the frobenius basis, restricts to the smooth fibre
// g = t0, and certifies semisimplicity by a seeded random element whose
// minimal polynomial is squarefree of degree mu. Up to 5 candidates are tried
// before giving up as inconclusive.
inline FibreProbeReport fibre_semisimplicity_probe(const CurveFunctionPair& pair,
                                                   const FrobeniusData& data, const Rational& t0,
                                                   const std::vector<Rational>& u,
                                                   std::uint64_t seed) {
    if (t0 == 0) throw std::invalid_argument("fibre probe needs t0 != 0");
    const int mu = pair.milnor_ring.dim;
    if (!u.empty() && static_cast<int>(u.size()) != mu)
        throw std::invalid_argument("unfolding vector must have length mu");

    FibreProbeReport report;
    report.t0 = t0;
    report.u = u;

    Poly F = pair.f;
    for (std::size_t a = 0; a < u.size(); ++a) F += data.basis[a] * u[a];
    Poly JF = jacobian_det(F, pair.g);
    Poly shifted = pair.g - Poly::constant(t0);

    QuotientRing fibre;
    try {
        fibre = staircase_basis(buchberger({shifted, JF}, pair.order));
    } catch (const InfiniteDimensionalError&) {
        report.note = "fibre algebra is infinite dimensional";
        return report;
    }
    report.dim = fibre.dim;
    report.dim_ok = fibre.dim == mu;
    if (!report.dim_ok) {
        std::ostringstream os;
        os << "dimension mismatch: dim = " << fibre.dim << ", mu = " << mu;
        report.note = os.str();
        return report;
    }

    SeededRng rng(seed);
    for (int attempt = 0; attempt < 5; ++attempt) {
        Poly z;
        for (const Monomial& m : fibre.staircase) z.add_term(m, Rational(rng.next_int(-3, 3)));
        if (z.is_zero()) continue;
        QMatrix m = mult_matrix(z, fibre);

        // Krylov sequence of powers applied to 1
        std::vector<std::vector<Rational>> krylov{fibre.nf_coords(Poly::constant(1))};
        UniPoly minpoly;
        for (int d = 1; d <= mu + 1; ++d) {
            std::vector<Rational> next = m * krylov.back();
            QMatrix cols = QMatrix::from_columns(krylov);
            auto dep = solve(cols, next);
            if (dep) {
                minpoly.assign(static_cast<std::size_t>(d) + 1, Rational(0));
                minpoly[static_cast<std::size_t>(d)] = 1;
                for (int i = 0; i < d; ++i)
                    minpoly[static_cast<std::size_t>(i)] = Rational(-(*dep)[static_cast<std::size_t>(i)]);
                unipoly_trim(minpoly);
                break;
            }
            krylov.push_back(std::move(next));
        }
        if (unipoly_degree(minpoly) == mu && unipoly_is_squarefree(minpoly)) {
            report.semisimple = true;
            std::ostringstream os;
            os << "z = " << to_string(z, pair.weights)
               << " has squarefree minimal polynomial " << unipoly_to_string(minpoly, "z")
               << " of degree " << mu;
            report.note = os.str();
            return report;
        }
    }
    report.inconclusive = true;
    report.note = "no separable generating element found in 5 seeded attempts";
    return report;
}

// Semisimplicity holds on smooth fibres only for generic unfolding
// parameters; u = 0 can sit over a non-reduced critical scheme. The check
// therefore requires the dimension to be mu at u = 0 and then accepts a
// certificate at u = 0 or at one of two seeded small perturbations.
inline CheckResult generic_semisimplicity_check(const CurveFunctionPair& pair,
                                                const FrobeniusData& data, const Rational& t0,
                                                std::uint64_t seed) {
    FibreProbeReport base = fibre_semisimplicity_probe(pair, data, t0, {}, seed);
    std::ostringstream os;
    os << "t0=" << to_string(t0) << " dim=" << base.dim << " at u=0";
    if (!base.dim_ok) {
        os << ": " << base.note;
        return CheckResult{"fibre_semisimplicity", false, os.str()};
    }
    if (base.semisimple) {
        os << ": " << base.note;
        return CheckResult{"fibre_semisimplicity", true, os.str()};
    }
    os << ": u=0 inconclusive (non-generic)";
    // Perturb only along basis elements of weighted degree strictly below 1:
    // they leave the leading forms of (g, J_F) alone, so the critical count
    // stays mu, while a generic member of that linear system is Morse.
    SeededRng rng(seed + 1);
    const int mu = pair.milnor_ring.dim;
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<Rational> u(static_cast<std::size_t>(mu), Rational(0));
        for (int i = 0; i < mu; ++i) {
            const Rational& nu = data.nus[static_cast<std::size_t>(i)];
            Rational deg = Rational(nu - pair.p_total + pair.e);
            if (deg <= 0 || deg >= 1) continue;
            u[static_cast<std::size_t>(i)] = rng.next_rational(-2, 2);
        }
        FibreProbeReport r = fibre_semisimplicity_probe(pair, data, t0, u, seed);
        if (r.dim_ok && r.semisimple) {
            os << "; certified at seeded low-degree u (attempt " << attempt + 1 << "): " << r.note;
            return CheckResult{"fibre_semisimplicity", true, os.str()};
        }
    }
    os << "; no certificate at u=0 or two seeded low-degree u";
    return CheckResult{"fibre_semisimplicity", false, os.str()};
}

}  // namespace curvefrob
