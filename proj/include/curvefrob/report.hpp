#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curvefrob/frobenius.hpp"
#include "curvefrob/parser.hpp"

namespace curvefrob {

using Json = nlohmann::json;

// Input document before validation: everything still text.
struct ProblemSpec {
    std::string f_text;
    std::string g_text;
    std::string wx_text;
    std::string wy_text;
    std::uint64_t seed = 0;
    std::optional<std::vector<std::string>> t_samples_text;
    std::vector<std::vector<std::string>> u_samples_text;
};

// malformed JSON or schema violations in the problem document
class InputError : public std::runtime_error {
  public:
    InputError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

inline ProblemSpec problem_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("SchemaViolation", "problem document must be an object");
    for (const char* key : {"weights", "f", "g"})
        if (!j.contains(key))
            throw InputError("SchemaViolation", std::string("missing required key \"") + key + "\"");
    if (!j["f"].is_string() || !j["g"].is_string())
        throw InputError("SchemaViolation", "\"f\" and \"g\" must be strings");
    const Json& w = j["weights"];
    if (!w.is_object() || !w.contains("x") || !w.contains("y") || !w["x"].is_string() ||
        !w["y"].is_string())
        throw InputError("SchemaViolation",
                         "\"weights\" must be an object with rational strings \"x\" and \"y\"");

    ProblemSpec spec;
    spec.f_text = j["f"].get<std::string>();
    spec.g_text = j["g"].get<std::string>();
    spec.wx_text = w["x"].get<std::string>();
    spec.wy_text = w["y"].get<std::string>();
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw InputError("SchemaViolation", "\"seed\" must be a non-negative integer");
        if (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() < 0)
            throw InputError("SchemaViolation", "\"seed\" must be a non-negative integer");
        spec.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("t_samples")) {
        if (!j["t_samples"].is_array())
            throw InputError("SchemaViolation", "\"t_samples\" must be an array of rational strings");
        std::vector<std::string> samples;
        for (const Json& s : j["t_samples"]) {
            if (!s.is_string())
                throw InputError("SchemaViolation", "\"t_samples\" entries must be strings");
            samples.push_back(s.get<std::string>());
        }
        spec.t_samples_text = std::move(samples);
    }
    if (j.contains("u_samples")) {
        if (!j["u_samples"].is_array())
            throw InputError("SchemaViolation", "\"u_samples\" must be an array of vectors");
        for (const Json& vec : j["u_samples"]) {
            if (!vec.is_array())
                throw InputError("SchemaViolation", "\"u_samples\" entries must be arrays");
            std::vector<std::string> v;
            for (const Json& s : vec) {
                if (!s.is_string())
                    throw InputError("SchemaViolation", "\"u_samples\" entries must hold strings");
                v.push_back(s.get<std::string>());
            }
            spec.u_samples_text.push_back(std::move(v));
        }
    }
    return spec;
}

struct AnalysisOptions {
    std::uint64_t seed = 0;
    std::vector<Rational> t_samples;
    std::vector<std::vector<Rational>> u_samples;
};

// Everything the report layer needs, computed once.
struct Analysis {
    CurveFunctionPair pair;
    MilnorReport milnor;
    JordanChainSet chains;
    SpectrumTable spec;
    ConnectionPair connection;
    FrobeniusData frob;
    AnalysisOptions options;
    std::string f_text;
    std::string g_text;
    std::string wx_text;
    std::string wy_text;
};

inline Analysis analyze_pair(CurveFunctionPair pair, AnalysisOptions options) {
    Analysis a{std::move(pair), {}, {}, {}, {}, {}, std::move(options), {}, {}, {}, {}};
    a.milnor = milnor_numbers(a.pair);
    a.chains = homogeneous_jordan_chains(a.pair);
    a.spec = spectrum_from_chains(a.chains);
    a.connection = connection_matrices(a.pair, a.chains);
    a.frob = multiplication_table(a.pair, a.chains);
    return a;
}

// resolves the ProblemSpec into a validated pair + options; all errors are
// thrown as InputError / ParseError / ValidationError
inline Analysis load_problem(const ProblemSpec& spec, std::optional<std::uint64_t> seed_override,
                             std::optional<std::vector<std::string>> t_samples_override) {
    Rational wx, wy;
    try {
        wx = parse_rational(spec.wx_text);
        wy = parse_rational(spec.wy_text);
    } catch (const std::invalid_argument& e) {
        throw InputError("SchemaViolation", std::string("bad weight: ") + e.what());
    }
    if (wx <= 0 || wy <= 0) throw InputError("SchemaViolation", "weights must be positive");

    Poly f = parse_polynomial(spec.f_text);
    Poly g = parse_polynomial(spec.g_text);

    AnalysisOptions options;
    options.seed = seed_override.value_or(spec.seed);
    const auto& samples_text =
        t_samples_override ? t_samples_override : spec.t_samples_text;
    if (samples_text) {
        for (const std::string& s : *samples_text) {
            Rational t;
            try {
                t = parse_rational(s);
            } catch (const std::invalid_argument& e) {
                throw InputError("SchemaViolation", std::string("bad t sample: ") + e.what());
            }
            if (t == 0) throw InputError("SchemaViolation", "t samples must be nonzero");
            options.t_samples.push_back(t);
        }
    } else {
        options.t_samples = default_t_samples(options.seed);
    }

    CurveFunctionPair pair = validate_pair(f, g, WeightSystem(wx, wy));

    for (const auto& vec : spec.u_samples_text) {
        if (static_cast<int>(vec.size()) != pair.milnor_ring.dim) {
            std::ostringstream os;
            os << "u sample has length " << vec.size() << " but mu = " << pair.milnor_ring.dim;
            throw InputError("SchemaViolation", os.str());
        }
        std::vector<Rational> u;
        for (const std::string& s : vec) {
            try {
                u.push_back(parse_rational(s));
            } catch (const std::invalid_argument& e) {
                throw InputError("SchemaViolation", std::string("bad u sample: ") + e.what());
            }
        }
        options.u_samples.push_back(std::move(u));
    }

    Analysis a = analyze_pair(std::move(pair), std::move(options));
    a.f_text = spec.f_text;
    a.g_text = spec.g_text;
    a.wx_text = spec.wx_text;
    a.wy_text = spec.wy_text;
    return a;
}

// ---- checks -------------------------------------------------------------

inline CheckResult milnor_additivity_check(const Analysis& a) {
    try {
        MilnorReport r = milnor_numbers(a.pair);
        std::ostringstream os;
        os << "mu=" << r.mu << " mu1=" << r.mu1 << " mu2=" << r.mu2
           << "; cross-check dim O/(f,g,J) = mu2 holds";
        return CheckResult{"milnor_additivity", true, os.str()};
    } catch (const std::logic_error& e) {
        return CheckResult{"milnor_additivity", false, e.what()};
    }
}

inline CheckResult jordan_basis_check(const Analysis& a) {
    bool ok = true;
    std::ostringstream os;
    int total = 0;
    for (const auto& chain : a.chains.chains) {
        total += static_cast<int>(chain.steps.size());
        for (std::size_t j = 0; j + 1 < chain.steps.size(); ++j)
            if (Rational(chain.steps[j + 1].nu - chain.steps[j].nu) != 1) {
                ok = false;
                os << "nu does not step by 1 inside a chain; ";
            }
    }
    if (total != a.milnor.mu) {
        ok = false;
        os << "chain vectors " << total << " != mu " << a.milnor.mu << "; ";
    }
    if (static_cast<int>(a.chains.chains.size()) != a.milnor.mu2) {
        ok = false;
        os << "chain count " << a.chains.chains.size() << " != mu2 " << a.milnor.mu2 << "; ";
    }
    if (rank(a.chains.basis_matrix()) != a.milnor.mu) {
        ok = false;
        os << "chain vectors are not a basis; ";
    }
    if (ok)
        os << a.chains.chains.size() << " chains, " << total
           << " homogeneous vectors forming a basis";
    return CheckResult{"jordan_basis", ok, os.str()};
}

inline CheckResult spectrum_total_check(const Analysis& a) {
    bool ok = a.spec.total_multiplicity() == a.milnor.mu;
    for (const auto& [l, m] : a.spec.entries)
        if (l < 0 || l > 1) ok = false;
    std::ostringstream os;
    os << "sum of multiplicities = " << a.spec.total_multiplicity() << ", mu = " << a.milnor.mu
       << ", all lambda in [0,1]";
    return CheckResult{"spectrum_total", ok, os.str()};
}

inline CheckResult connection_shape_check(const Analysis& a) {
    const ConnectionPair& c = a.connection;
    const int n = c.A0.rows();
    bool ok = true;
    std::ostringstream os;

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && c.Ainf.at(i, j) != 0) ok = false;
            if (i == j && c.Ainf.at(i, j) != Rational(-c.lambdas[static_cast<std::size_t>(i)]))
                ok = false;
        }
    if (!ok) os << "Ainf is not diag(-lambda); ";

    int ones = 0;
    bool zero_one = true;
    bool shift_shape = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational& v = c.A0.at(i, j);
            if (v == 0) continue;
            if (v != 1) zero_one = false;
            ++ones;
            auto [ci, cj] = c.basis_labels[static_cast<std::size_t>(j)];
            auto [ri, rj] = c.basis_labels[static_cast<std::size_t>(i)];
            if (ri != ci || rj != cj + 1) shift_shape = false;
        }
    if (!zero_one || !shift_shape) {
        ok = false;
        os << "A0 is not the 0/1 chain shift; ";
    }
    if (ones != a.milnor.mu - a.milnor.mu2) {
        ok = false;
        os << "A0 has " << ones << " ones, expected mu - mu2 = " << a.milnor.mu - a.milnor.mu2
           << "; ";
    }
    int max_len = 0;
    for (const auto& chain : a.chains.chains)
        max_len = std::max<int>(max_len, static_cast<int>(chain.steps.size()));
    if (!c.A0.power(max_len).is_zero()) {
        ok = false;
        os << "A0 not nilpotent at the chain length bound; ";
    }
    if (ok)
        os << "Ainf = diag(-lambda); A0 is a 0/1 chain shift with " << ones
           << " ones and A0^" << max_len << " = 0";
    return CheckResult{"connection_shape", ok, os.str()};
}

inline CheckResult brieskorn_reduction_check(const Analysis& a) {
    bool ok = true;
    std::ostringstream os;
    for (int k = 0; k < a.chains.total(); ++k) {
        BrieskornElement e = brieskorn_reduce(a.chains.at(k).rep, a.pair, a.chains);
        bool this_ok = e.levels.size() == 1 && e.levels.count(0) == 1;
        if (this_ok) {
            const auto& vec = e.levels.at(0);
            for (int i = 0; i < a.chains.total(); ++i) {
                const UniPoly& p = vec[static_cast<std::size_t>(i)];
                if (i == k ? (unipoly_degree(p) != 0 || p[0] != 1) : !unipoly_is_zero(p))
                    this_ok = false;
            }
        }
        if (!this_ok) {
            ok = false;
            os << "representative " << k << " does not round-trip; ";
        }
    }
    BrieskornElement ej = brieskorn_reduce(a.pair.J, a.pair, a.chains);
    if (!ej.is_zero()) {
        ok = false;
        os << "class of J is not zero; ";
    }
    if (ok) os << "chain representatives round-trip at tau^0 and [J alpha] = 0";
    return CheckResult{"brieskorn_reduction", ok, os.str()};
}

inline CheckResult socle_uniqueness_check(const Analysis& a) {
    try {
        int idx = socle_index(a.pair, a.frob.residue);
        std::ostringstream os;
        os << "socle monomial "
           << to_string(a.pair.milnor_ring.staircase[static_cast<std::size_t>(idx)])
           << " at degree " << to_string(a.frob.residue.socle_degree);
        return CheckResult{"socle_uniqueness", true, os.str()};
    } catch (const ResidueError& e) {
        return CheckResult{"socle_uniqueness", false, e.what()};
    }
}

inline std::vector<CheckResult> run_all_checks(const Analysis& a) {
    std::vector<CheckResult> checks;
    checks.push_back(milnor_additivity_check(a));
    checks.push_back(kernel_identity_check(a.pair));
    checks.push_back(euler_identity_check(a.pair));
    checks.push_back(nu_positivity_check(a.pair));
    checks.push_back(mu_constancy_probe(a.pair, a.options.t_samples));
    checks.push_back(jordan_basis_check(a));
    checks.push_back(nu_bound_check(a.chains, a.pair));
    checks.push_back(spectrum_total_check(a));
    checks.push_back(connection_shape_check(a));
    checks.push_back(brieskorn_reduction_check(a));
    checks.push_back(bezoutian_duality_check(a.pair, a.frob.residue));
    checks.push_back(euler_jacobi_check(a.pair, a.frob.residue));
    checks.push_back(residue_grading_check(a.pair, a.frob.residue));
    checks.push_back(socle_uniqueness_check(a));
    for (CheckResult& c : frobenius_axiom_check(a.frob)) checks.push_back(std::move(c));
    checks.push_back(primitivity_check(a.pair, a.chains, a.connection));
    checks.push_back(nilpotency_probe(a.pair, a.frob));

    Rational t0(1);
    for (const Rational& t : a.options.t_samples)
        if (t != 0) {
            t0 = t;
            break;
        }
    auto probe_to_check = [&](const FibreProbeReport& r, const std::string& name) {
        std::ostringstream os;
        os << "t0=" << to_string(r.t0) << " dim=" << r.dim << ": " << r.note;
        return CheckResult{name, r.dim_ok && r.semisimple, os.str()};
    };
    checks.push_back(generic_semisimplicity_check(a.pair, a.frob, t0, a.options.seed));
    for (std::size_t i = 0; i < a.options.u_samples.size(); ++i) {
        FibreProbeReport r = fibre_semisimplicity_probe(a.pair, a.frob, t0,
                                                        a.options.u_samples[i], a.options.seed);
        checks.push_back(probe_to_check(r, "fibre_semisimplicity_u" + std::to_string(i + 1)));
    }
    return checks;
}

// ---- JSON serialization --------------------------------------------------

inline Json json_rational(const Rational& q) { return Json(to_string(q)); }

inline Json json_matrix(const QMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json json_spectrum(const SpectrumTable& t) {
    Json arr = Json::array();
    for (const auto& [l, m] : t.entries)
        arr.push_back(Json::array({to_string(l), std::to_string(m)}));
    return arr;
}

inline Json json_input_echo(const Analysis& a) {
    Json in;
    in["f"] = a.f_text.empty() ? to_string(a.pair.f, a.pair.weights) : a.f_text;
    in["g"] = a.g_text.empty() ? to_string(a.pair.g, a.pair.weights) : a.g_text;
    in["weights"] = Json{{"x", a.wx_text.empty() ? to_string(a.pair.weights.px) : a.wx_text},
                         {"y", a.wy_text.empty() ? to_string(a.pair.weights.py) : a.wy_text}};
    in["normalized_weights"] =
        Json{{"x", to_string(a.pair.weights.px)}, {"y", to_string(a.pair.weights.py)}};
    in["e"] = to_string(a.pair.e);
    in["p_total"] = to_string(a.pair.p_total);
    in["J"] = to_string(a.pair.J, a.pair.weights);
    in["mu"] = std::to_string(a.milnor.mu);
    in["seed"] = std::to_string(a.options.seed);
    Json ts = Json::array();
    for (const Rational& t : a.options.t_samples) ts.push_back(to_string(t));
    in["t_samples"] = std::move(ts);
    return in;
}

inline Json json_milnor(const MilnorReport& r) {
    return Json{{"mu", std::to_string(r.mu)},
                {"mu1", std::to_string(r.mu1)},
                {"mu2", std::to_string(r.mu2)}};
}

inline Json json_connection(const Analysis& a) {
    Json basis = Json::array();
    for (int k = 0; k < a.chains.total(); ++k) {
        auto [i, j] = a.chains.labels[static_cast<std::size_t>(k)];
        const ChainVector& v = a.chains.at(k);
        basis.push_back(Json{{"chain", std::to_string(i)},
                             {"step", std::to_string(j)},
                             {"nu", to_string(v.nu)},
                             {"lambda", to_string(lambda_clamp(v.nu))},
                             {"rep", to_string(v.rep, a.pair.weights)}});
    }
    return Json{{"basis", std::move(basis)},
                {"A0", json_matrix(a.connection.A0)},
                {"Ainf", json_matrix(a.connection.Ainf)}};
}

inline Json json_frobenius(const Analysis& a) {
    Json basis = Json::array();
    for (const Poly& b : a.frob.basis) basis.push_back(to_string(b, a.pair.weights));
    Json structure = Json::array();
    for (const auto& row : a.frob.structure) {
        Json jrow = Json::array();
        for (const auto& fiber : row) {
            Json jfib = Json::array();
            for (const Rational& c : fiber) jfib.push_back(to_string(c));
            jrow.push_back(std::move(jfib));
        }
        structure.push_back(std::move(jrow));
    }
    Json staircase = Json::array();
    Json values = Json::array();
    for (int i = 0; i < a.pair.milnor_ring.dim; ++i) {
        staircase.push_back(to_string(a.pair.milnor_ring.staircase[static_cast<std::size_t>(i)]));
        values.push_back(to_string(a.frob.residue.values[static_cast<std::size_t>(i)]));
    }
    Json residue{{"convention", a.frob.residue.convention},
                 {"socle_degree", to_string(a.frob.residue.socle_degree)},
                 {"socle_monomial",
                  to_string(a.pair.milnor_ring.staircase[static_cast<std::size_t>(
                      a.frob.socle_staircase_index)])},
                 {"staircase", std::move(staircase)},
                 {"values", std::move(values)}};
    return Json{{"basis", std::move(basis)},
                {"unit", std::to_string(a.frob.unit_index)},
                {"metric_raw", json_matrix(a.frob.metric_raw)},
                {"metric_normalized", json_matrix(a.frob.metric_normalized)},
                {"structure_constants", std::move(structure)},
                {"residue", std::move(residue)}};
}

inline Json json_checks(const std::vector<CheckResult>& checks) {
    Json arr = Json::array();
    for (const CheckResult& c : checks)
        arr.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
    return arr;
}

// multiset difference d(lambda) - d(1 - lambda), empty when the spectrum is
// symmetric about 1/2; reported as a diagnostic, never asserted
inline Json json_symmetry_defect(const SpectrumTable& t) {
    std::map<Rational, int> mult;
    for (const auto& [l, m] : t.entries) mult[l] = m;
    Json arr = Json::array();
    std::map<Rational, int> defect;
    for (const auto& [l, m] : mult) {
        Rational mirror = Rational(1 - l);
        auto it = mult.find(mirror);
        int diff = m - (it == mult.end() ? 0 : it->second);
        if (diff != 0) defect[l] = diff;
    }
    for (const auto& [l, d] : defect)
        arr.push_back(Json::array({to_string(l), std::to_string(d)}));
    return arr;
}

inline Json full_report(const Analysis& a, const std::vector<CheckResult>& checks) {
    Json notes{{"spectrum_t_independence",
                "the spectrum computed at t = 0 is valid on every fibre g = t (plane curve case)"},
               {"spectrum_symmetry_defect", json_symmetry_defect(a.spec)}};
    return Json{{"input", json_input_echo(a)},
                {"milnor", json_milnor(a.milnor)},
                {"spectrum", json_spectrum(a.spec)},
                {"connection", json_connection(a)},
                {"frobenius", json_frobenius(a)},
                {"notes", std::move(notes)},
                {"checks", json_checks(checks)}};
}

inline Json verify_report(const Analysis& a, const std::vector<CheckResult>& checks) {
    int passed = 0;
    for (const CheckResult& c : checks) passed += c.pass ? 1 : 0;
    Json summary{{"total", std::to_string(checks.size())},
                 {"passed", std::to_string(passed)},
                 {"failed", std::to_string(checks.size() - static_cast<std::size_t>(passed))}};
    return Json{{"input", json_input_echo(a)},
                {"checks", json_checks(checks)},
                {"summary", std::move(summary)}};
}

inline Json error_report(const std::string& code, const std::string& which,
                         const std::string& message) {
    Json err{{"code", code}, {"message", message}};
    if (!which.empty()) err["which"] = which;
    return Json{{"error", std::move(err)}};
}

}  // namespace curvefrob
