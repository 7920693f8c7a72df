#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvefrob/curvesing.hpp"
#include "curvefrob/qmatrix.hpp"
#include "curvefrob/unipoly.hpp"

namespace curvefrob {

inline Rational nu_value(const Rational& degree, const CurveFunctionPair& pair) {
    return pair.nu_of_degree(degree);
}

// clamp of nu to [0, 1]: 1 above, 0 below, identity inside
inline Rational lambda_clamp(const Rational& nu) {
    if (nu > 1) return Rational(1);
    if (nu < 0) return Rational(0);
    return nu;
}

// Matrix of multiplication by -f on the Milnor ring. Nilpotent, and it shifts
// weighted degree by exactly +1.
inline QMatrix minus_f_operator(const CurveFunctionPair& pair) {
    QMatrix m = mult_matrix(-pair.f, pair.milnor_ring);
    if (!m.power(pair.milnor_ring.dim).is_zero())
        throw std::logic_error("multiplication by -f is not nilpotent");
    return m;
}

struct ChainVector {
    std::vector<Rational> coords;  // over the staircase of O/(g, J)
    Poly rep;                      // homogeneous polynomial representative
    Rational degree;
    Rational nu;
};

struct JordanChain {
    std::vector<ChainVector> steps;  // steps[j+1] = mult(-f) . steps[j]
};

struct JordanChainSet {
    std::vector<JordanChain> chains;
    std::vector<std::pair<int, int>> labels;  // flattened (chain, step)

    int total() const { return static_cast<int>(labels.size()); }
    const ChainVector& at(int flat) const {
        auto [i, j] = labels[static_cast<std::size_t>(flat)];
        return chains[static_cast<std::size_t>(i)].steps[static_cast<std::size_t>(j)];
    }
    int flat_index(int chain, int step) const {
        for (int k = 0; k < total(); ++k)
            if (labels[static_cast<std::size_t>(k)] == std::make_pair(chain, step)) return k;
        throw std::out_of_range("chain label");
    }
    // columns are the chain vectors in flattened order
    QMatrix basis_matrix() const {
        std::vector<std::vector<Rational>> cols;
        cols.reserve(labels.size());
        for (int k = 0; k < total(); ++k) cols.push_back(at(k).coords);
        return QMatrix::from_columns(cols);
    }
};

namespace detail {

struct HomVec {
    std::vector<Rational> coords;
    Rational degree;
};

// Row echelon set with unit pivots, used both for membership tests and to
// pick deterministic complements: pivots follow the staircase order.
class EchelonSet {
  public:
    // fully reduces v against the stored rows
    std::vector<Rational> reduce(std::vector<Rational> v) const {
        for (const auto& [p, w] : rows_) {
            if (v[static_cast<std::size_t>(p)] == 0) continue;
            Rational c = v[static_cast<std::size_t>(p)];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * w[i];
        }
        return v;
    }

    // returns false when v reduces to zero; otherwise stores the normalized
    // residue
    bool insert(std::vector<Rational> v) {
        v = reduce(std::move(v));
        int pivot = -1;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                pivot = static_cast<int>(i);
                break;
            }
        if (pivot < 0) return false;
        Rational inv = Rational(1) / v[static_cast<std::size_t>(pivot)];
        for (auto& c : v) c *= inv;
        rows_.emplace_back(pivot, std::move(v));
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return true;
    }

  private:
    std::vector<std::pair<int, std::vector<Rational>>> rows_;
};

inline std::vector<Rational> reduce_and_normalize(const EchelonSet& ech, std::vector<Rational> v) {
    v = ech.reduce(std::move(v));
    int pivot = -1;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
            pivot = static_cast<int>(i);
            break;
        }
    if (pivot >= 0) {
        Rational inv = Rational(1) / v[static_cast<std::size_t>(pivot)];
        for (auto& c : v) c *= inv;
    }
    return v;
}

// Homogeneous kernel basis of a degree-shifting operator power: the kernel is
// graded, so it is assembled degree by degree from the column restriction.
inline std::vector<HomVec> homogeneous_kernel(const QMatrix& op,
                                              const std::vector<Rational>& col_degrees) {
    std::map<Rational, std::vector<int>> buckets;
    for (std::size_t i = 0; i < col_degrees.size(); ++i)
        buckets[col_degrees[i]].push_back(static_cast<int>(i));
    std::vector<HomVec> out;
    for (const auto& [deg, cols] : buckets) {
        QMatrix sub(op.rows(), static_cast<int>(cols.size()));
        for (int j = 0; j < static_cast<int>(cols.size()); ++j)
            for (int i = 0; i < op.rows(); ++i)
                sub.at(i, j) = op.at(i, cols[static_cast<std::size_t>(j)]);
        for (const auto& k : kernel_basis(sub)) {
            std::vector<Rational> full(col_degrees.size(), Rational(0));
            for (std::size_t j = 0; j < cols.size(); ++j) full[static_cast<std::size_t>(cols[j])] = k[j];
            out.push_back(HomVec{std::move(full), deg});
        }
    }
    return out;
}

}  // namespace detail

// Homogeneous Jordan chains of multiplication by -f on O/(g, J).
//
// For m = nilpotency index down to 1, chain heads of length m are chosen as a
// homogeneous complement of ker(N^{m-1}) + N(ker(N^{m+1})) inside ker(N^m),
// degree by degree, with reduced-row-echelon pivoting along the staircase
// order. That makes the output reproducible and every vector homogeneous;
// because N shifts degree by exactly +1, nu increases by exactly 1 per step.
inline JordanChainSet homogeneous_jordan_chains(const CurveFunctionPair& pair) {
    const QuotientRing& q = pair.milnor_ring;
    const int n = q.dim;
    QMatrix N = minus_f_operator(pair);

    std::vector<Rational> degs;
    degs.reserve(static_cast<std::size_t>(n));
    for (const Monomial& m : q.staircase) degs.push_back(pair.weights.degree(m));

    // powers until N^s == 0
    std::vector<QMatrix> powers{QMatrix::identity(n)};
    while (!powers.back().is_zero()) powers.push_back(N * powers.back());
    const int s = static_cast<int>(powers.size()) - 1;

    // homogeneous kernel bases of N^m for m = 0..s; index s+1 stands for the
    // whole space, represented by the staircase unit vectors
    std::vector<std::vector<detail::HomVec>> kernels(static_cast<std::size_t>(s) + 2);
    for (int m = 1; m <= s; ++m)
        kernels[static_cast<std::size_t>(m)] =
            detail::homogeneous_kernel(powers[static_cast<std::size_t>(m)], degs);
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> e(static_cast<std::size_t>(n), Rational(0));
        e[static_cast<std::size_t>(i)] = 1;
        kernels[static_cast<std::size_t>(s) + 1].push_back(
            detail::HomVec{std::move(e), degs[static_cast<std::size_t>(i)]});
    }

    std::vector<std::vector<std::vector<Rational>>> raw_chains;
    for (int m = s; m >= 1; --m) {
        const auto& candidates = kernels[static_cast<std::size_t>(m)];
        // T = ker(N^{m-1}) + N(ker(N^{m+1})), grouped by degree
        std::map<Rational, std::vector<std::vector<Rational>>> span_by_degree;
        for (const auto& v : kernels[static_cast<std::size_t>(m - 1)])
            span_by_degree[v.degree].push_back(v.coords);
        for (const auto& v : kernels[static_cast<std::size_t>(m) + 1]) {
            std::vector<Rational> img = N * v.coords;
            bool zero = true;
            for (const auto& c : img)
                if (c != 0) {
                    zero = false;
                    break;
                }
            if (!zero) span_by_degree[Rational(v.degree + 1)].push_back(std::move(img));
        }

        std::map<Rational, std::vector<const detail::HomVec*>> cand_by_degree;
        for (const auto& v : candidates) cand_by_degree[v.degree].push_back(&v);

        for (const auto& [deg, cands] : cand_by_degree) {
            detail::EchelonSet ech;
            auto it = span_by_degree.find(deg);
            if (it != span_by_degree.end())
                for (const auto& w : it->second) ech.insert(w);
            for (const detail::HomVec* v : cands) {
                std::vector<Rational> head = detail::reduce_and_normalize(ech, v->coords);
                bool zero = true;
                for (const auto& c : head)
                    if (c != 0) {
                        zero = false;
                        break;
                    }
                if (zero) continue;
                ech.insert(head);
                std::vector<std::vector<Rational>> chain{head};
                for (int j = 1; j < m; ++j) chain.push_back(N * chain.back());
                raw_chains.push_back(std::move(chain));
            }
        }
    }

    // sort: length descending, head degree (equivalently head nu) ascending,
    // then head coordinates lexicographically
    std::sort(raw_chains.begin(), raw_chains.end(), [&](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        auto head_degree = [&](const std::vector<Rational>& v) {
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0) return degs[i];
            return Rational(0);
        };
        Rational da = head_degree(a.front());
        Rational db = head_degree(b.front());
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.front().size(); ++i)
            if (a.front()[i] != b.front()[i]) return a.front()[i] < b.front()[i];
        return false;
    });

    JordanChainSet set;
    int total = 0;
    for (std::size_t ci = 0; ci < raw_chains.size(); ++ci) {
        JordanChain chain;
        for (std::size_t j = 0; j < raw_chains[ci].size(); ++j) {
            ChainVector cv;
            cv.coords = raw_chains[ci][j];
            cv.rep = q.from_coords(cv.coords);
            auto d = weighted_degree(cv.rep, pair.weights);
            if (!d) throw std::logic_error("jordan chain vector is not homogeneous");
            cv.degree = *d;
            cv.nu = pair.nu_of_degree(cv.degree);
            chain.steps.push_back(std::move(cv));
            set.labels.emplace_back(static_cast<int>(ci), static_cast<int>(j));
            ++total;
        }
        set.chains.push_back(std::move(chain));
    }

    if (total != n) throw std::logic_error("jordan chains do not exhaust the Milnor ring");
    if (rank(set.basis_matrix()) != n)
        throw std::logic_error("jordan chain vectors are not a basis");
    int kernel_dim = n - rank(N);
    if (static_cast<int>(set.chains.size()) != kernel_dim)
        throw std::logic_error("chain count disagrees with the kernel dimension");
    return set;
}

struct SpectrumTable {
    std::vector<std::pair<Rational, int>> entries;  // sorted by lambda ascending

    friend bool operator==(const SpectrumTable&, const SpectrumTable&) = default;

    int total_multiplicity() const {
        int t = 0;
        for (const auto& [l, m] : entries) t += m;
        return t;
    }
};

inline SpectrumTable spectrum_from_chains(const JordanChainSet& chains) {
    std::map<Rational, int> agg;
    for (const auto& chain : chains.chains)
        for (const auto& v : chain.steps) agg[lambda_clamp(v.nu)] += 1;
    SpectrumTable t;
    for (const auto& [l, m] : agg) t.entries.emplace_back(l, m);
    return t;
}

inline SpectrumTable spectrum(const CurveFunctionPair& pair) {
    return spectrum_from_chains(homogeneous_jordan_chains(pair));
}

// Closed form for f = x on g = x^k + y^2: {(0, k/2), (1, k/2)} for even k and
// {(0, (k-1)/2), (1/2, 1), (1, (k-1)/2)} for odd k.
inline SpectrumTable ak_spectrum_oracle(int k) {
    if (k < 2) throw std::invalid_argument("ak_spectrum_oracle needs k >= 2");
    SpectrumTable t;
    if (k % 2 == 0) {
        t.entries.emplace_back(Rational(0), k / 2);
        t.entries.emplace_back(Rational(1), k / 2);
    } else {
        t.entries.emplace_back(Rational(0), (k - 1) / 2);
        t.entries.emplace_back(Rational(1, 2), 1);
        t.entries.emplace_back(Rational(1), (k - 1) / 2);
    }
    return t;
}

// Head nu of every chain is at most 1; a chain tail lying in the ideal
// (g_x, g_y) + (g) must have positive nu.
inline CheckResult nu_bound_check(const JordanChainSet& chains, const CurveFunctionPair& pair) {
    bool ok = true;
    std::ostringstream os;
    GroebnerBasis grad = buchberger({pair.g, pair.gx, pair.gy}, pair.order);
    for (std::size_t i = 0; i < chains.chains.size(); ++i) {
        const auto& chain = chains.chains[i];
        const Rational& head_nu = chain.steps.front().nu;
        if (head_nu > 1) {
            ok = false;
            os << "chain " << i << " head nu=" << to_string(head_nu) << " > 1; ";
        }
        const ChainVector& tail = chain.steps.back();
        if (normal_form(tail.rep, grad).is_zero() && !(tail.nu > 0)) {
            ok = false;
            os << "chain " << i << " tail in (g_x,g_y)+(g) but nu=" << to_string(tail.nu)
               << " <= 0; ";
        }
    }
    if (ok) os << "all chain heads have nu <= 1";
    return CheckResult{"nu_bounds", ok, os.str()};
}

// tau^{-k} levels of an element of the Brieskorn lattice in the chain basis;
// each coefficient is an exact polynomial in the family parameter t.
struct BrieskornElement {
    int basis_size = 0;
    std::map<int, std::vector<UniPoly>> levels;

    explicit BrieskornElement(int size = 0) : basis_size(size) {}

    void add(int tau_level, int basis_index, int t_degree, const Rational& c) {
        if (c == 0) return;
        auto& vec = levels[tau_level];
        if (vec.empty()) vec.resize(static_cast<std::size_t>(basis_size));
        unipoly_add_term(vec[static_cast<std::size_t>(basis_index)], t_degree, c);
        prune(tau_level);
    }

    void prune(int tau_level) {
        auto it = levels.find(tau_level);
        if (it == levels.end()) return;
        for (const auto& p : it->second)
            if (!unipoly_is_zero(p)) return;
        levels.erase(it);
    }

    bool is_zero() const { return levels.empty(); }

    // specialization at t = 0
    std::map<int, std::vector<Rational>> at_t0() const {
        std::map<int, std::vector<Rational>> out;
        for (const auto& [k, vec] : levels) {
            std::vector<Rational> v(vec.size(), Rational(0));
            bool nonzero = false;
            for (std::size_t i = 0; i < vec.size(); ++i)
                if (!vec[i].empty() && vec[i][0] != 0) {
                    v[i] = vec[i][0];
                    nonzero = true;
                }
            if (nonzero) out.emplace(k, std::move(v));
        }
        return out;
    }
};

// The adapted basis: omega-tilde = omega + (nu - 1) tau^{-1} omega_prev when
// nu > 1, and omega itself otherwise. The head bound nu <= 1 guarantees the
// previous chain step exists whenever a correction is needed.
inline std::vector<BrieskornElement> tilde_basis(const JordanChainSet& chains,
                                                 const CurveFunctionPair& pair) {
    (void)pair;
    std::vector<BrieskornElement> out;
    const int n = chains.total();
    for (int flat = 0; flat < n; ++flat) {
        auto [i, j] = chains.labels[static_cast<std::size_t>(flat)];
        const ChainVector& v = chains.at(flat);
        BrieskornElement e(n);
        e.add(0, flat, 0, Rational(1));
        if (v.nu > 1) {
            if (j == 0) throw std::logic_error("chain head with nu > 1");
            e.add(1, chains.flat_index(i, j - 1), 0, Rational(v.nu - 1));
        }
        out.push_back(std::move(e));
    }
    return out;
}

// Connection data in the tilde basis: d/dtau acts as A0 + Ainf tau^{-1} with
// A0 the 0/1 chain shift and Ainf = diag(-lambda). Column convention:
// d/dtau (basis_b) = sum_a A0[a][b] basis_a + tau^{-1} sum_a Ainf[a][b] basis_a.
struct ConnectionPair {
    std::vector<std::pair<int, int>> basis_labels;
    std::vector<Rational> nus;
    std::vector<Rational> lambdas;
    QMatrix A0;
    QMatrix Ainf;
};

inline ConnectionPair connection_matrices(const CurveFunctionPair& pair,
                                          const JordanChainSet& chains) {
    (void)pair;
    const int n = chains.total();
    ConnectionPair c;
    c.basis_labels = chains.labels;
    c.A0 = QMatrix(n, n);
    c.Ainf = QMatrix(n, n);
    for (int flat = 0; flat < n; ++flat) {
        auto [i, j] = chains.labels[static_cast<std::size_t>(flat)];
        const ChainVector& v = chains.at(flat);
        Rational lambda = lambda_clamp(v.nu);
        c.nus.push_back(v.nu);
        c.lambdas.push_back(lambda);
        c.Ainf.at(flat, flat) = Rational(-lambda);
        const auto& chain = chains.chains[static_cast<std::size_t>(i)];
        if (j + 1 < static_cast<int>(chain.steps.size()))
            c.A0.at(chains.flat_index(i, j + 1), flat) = 1;
    }
    return c;
}

inline ConnectionPair connection_matrices(const CurveFunctionPair& pair) {
    return connection_matrices(pair, homogeneous_jordan_chains(pair));
}

// Expresses the class of h*alpha over the chain basis with tau^{-1} and t
// coefficients by iterating the division step of the lattice-freeness proof:
// split off the chain-basis component, write the rest as u*g + q*J, and trade
// q*J for tau^{-1} times the restriction of dq to the curve (coefficient
// Jac(q, g) against alpha), and g for t. The weighted degree strictly drops,
// so the loop terminates.
inline BrieskornElement brieskorn_reduce(const Poly& h, const CurveFunctionPair& pair,
                                         const JordanChainSet& chains) {
    const QuotientRing& q = pair.milnor_ring;
    const int n = chains.total();
    QMatrix basis = chains.basis_matrix();
    auto basis_inv = inverse(basis);
    if (!basis_inv) throw std::logic_error("chain basis is singular");

    BrieskornElement out(n);
    struct Item {
        int tau_level;
        int t_degree;
        Poly poly;
    };
    std::deque<Item> work{{0, 0, h}};
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 100000) throw std::logic_error("brieskorn reduction did not terminate");
        Item item = std::move(work.front());
        work.pop_front();
        if (item.poly.is_zero()) continue;

        std::vector<Rational> coords = q.nf_coords(item.poly);
        std::vector<Rational> c = *basis_inv * coords;
        Poly residual = item.poly;
        for (int i = 0; i < n; ++i) {
            if (c[static_cast<std::size_t>(i)] == 0) continue;
            out.add(item.tau_level, i, item.t_degree, c[static_cast<std::size_t>(i)]);
            residual -= chains.at(i).rep * c[static_cast<std::size_t>(i)];
        }
        if (residual.is_zero()) continue;

        auto [rem, cof] = normal_form_with_input_cofactors(residual, q.gb);
        if (!rem.is_zero()) throw std::logic_error("residual escaped the ideal (g, J)");
        const Poly& u = cof[0];
        const Poly& qq = cof[1];
        if (!u.is_zero()) work.push_back({item.tau_level, item.t_degree + 1, u});
        Poly dq_alpha = jacobian_det(qq, pair.g);
        if (!dq_alpha.is_zero()) work.push_back({item.tau_level + 1, item.t_degree, dq_alpha});
    }
    return out;
}

}  // namespace curvefrob
