#pragma once

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curvefrob/report.hpp"

namespace curvefrob {

// Exit codes: 0 success, 1 check failure, 2 usage error, 3 invalid input.
struct CliResult {
    int exit_code = 0;
    std::string out;  // report bytes (empty when written to --output)
    std::string err;  // diagnostics for stderr
};

namespace detail {

struct CliArgs {
    std::string subcommand;
    std::optional<std::string> input_path;
    std::optional<std::string> output_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<std::string>> t_samples;
    bool pretty = false;
    std::optional<int> ak_k;
};

inline const char* usage_text() {
    return "usage: curvefrob <analyze|spectrum|connection|frobenius|verify> [input.json]\n"
           "                 [--output PATH] [--seed N] [--pretty] [--t-samples CSV]\n"
           "       curvefrob ak <k> [--output PATH] [--pretty]\n"
           "\n"
           "Reads the problem from input.json, or from stdin when no path is given.\n"
           "Exit codes: 0 success, 1 check failure, 2 usage error, 3 invalid input.\n";
}

inline std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(csv);
    while (std::getline(is, item, ',')) out.push_back(item);
    return out;
}

// returns nullopt and fills err on a usage error
inline std::optional<CliArgs> parse_args(const std::vector<std::string>& args, std::string& err) {
    if (args.empty()) {
        err = usage_text();
        return std::nullopt;
    }
    CliArgs a;
    a.subcommand = args[0];
    const bool known = a.subcommand == "analyze" || a.subcommand == "spectrum" ||
                       a.subcommand == "connection" || a.subcommand == "frobenius" ||
                       a.subcommand == "verify" || a.subcommand == "ak";
    if (!known) {
        err = "unknown subcommand \"" + a.subcommand + "\"\n" + usage_text();
        return std::nullopt;
    }
    std::size_t i = 1;
    if (a.subcommand == "ak") {
        if (i >= args.size()) {
            err = std::string("ak needs an integer argument k >= 2\n") + usage_text();
            return std::nullopt;
        }
        try {
            std::size_t used = 0;
            int k = std::stoi(args[i], &used);
            if (used != args[i].size() || k < 2) throw std::invalid_argument("k");
            a.ak_k = k;
        } catch (const std::exception&) {
            err = "ak needs an integer argument k >= 2, got \"" + args[i] + "\"\n";
            return std::nullopt;
        }
        ++i;
    }
    for (; i < args.size(); ++i) {
        const std::string& arg = args[i];
        auto value = [&](const char* flag) -> std::optional<std::string> {
            if (i + 1 >= args.size()) {
                err = std::string(flag) + " needs a value\n";
                return std::nullopt;
            }
            return args[++i];
        };
        if (arg == "--output") {
            auto v = value("--output");
            if (!v) return std::nullopt;
            a.output_path = *v;
        } else if (arg == "--seed") {
            auto v = value("--seed");
            if (!v) return std::nullopt;
            try {
                std::size_t used = 0;
                if (v->empty() || (*v)[0] == '-') throw std::invalid_argument("seed");
                unsigned long long s = std::stoull(*v, &used);
                if (used != v->size()) throw std::invalid_argument("seed");
                a.seed = s;
            } catch (const std::exception&) {
                err = "--seed needs a non-negative integer, got \"" + *v + "\"\n";
                return std::nullopt;
            }
        } else if (arg == "--t-samples") {
            auto v = value("--t-samples");
            if (!v) return std::nullopt;
            a.t_samples = split_csv(*v);
        } else if (arg == "--pretty") {
            a.pretty = true;
        } else if (!arg.empty() && arg[0] == '-') {
            err = "unknown option \"" + arg + "\"\n" + usage_text();
            return std::nullopt;
        } else if (!a.input_path) {
            a.input_path = arg;
        } else {
            err = "unexpected extra argument \"" + arg + "\"\n" + usage_text();
            return std::nullopt;
        }
    }
    return a;
}

inline std::string dump(const Json& j, bool pretty) {
    return (pretty ? j.dump(2) : j.dump()) + "\n";
}

}  // namespace detail

// The process entry point as a library function so tests can drive it
// directly. `read_stdin` is only invoked when the subcommand needs a problem
// document and no input path was given.
inline CliResult run_cli(const std::vector<std::string>& args,
                         const std::function<std::string()>& read_stdin) {
    std::string usage_err;
    auto parsed = detail::parse_args(args, usage_err);
    if (!parsed) return CliResult{2, "", usage_err};
    const detail::CliArgs& a = *parsed;

    auto emit = [&](const Json& j, int code) -> CliResult {
        std::string bytes = detail::dump(j, a.pretty);
        if (a.output_path) {
            std::ofstream out(*a.output_path, std::ios::binary);
            if (!out) return CliResult{2, "", "cannot write to \"" + *a.output_path + "\"\n"};
            out << bytes;
            if (!out.good())
                return CliResult{2, "", "cannot write to \"" + *a.output_path + "\"\n"};
            return CliResult{code, "", ""};
        }
        return CliResult{code, bytes, ""};
    };

    if (a.subcommand == "ak") {
        int k = *a.ak_k;
        Poly g = Poly::monomial({k, 0}) + Poly::monomial({0, 2});
        CurveFunctionPair pair =
            validate_pair(Poly::var_x(), g, WeightSystem(Rational(1), Rational(k, 2)));
        SpectrumTable pipeline = spectrum(pair);
        SpectrumTable oracle = ak_spectrum_oracle(k);

        std::map<Rational, std::pair<int, int>> merged;
        for (const auto& [l, m] : oracle.entries) merged[l].first = m;
        for (const auto& [l, m] : pipeline.entries) merged[l].second = m;
        Json diff = Json::array();
        for (const auto& [l, pairm] : merged)
            if (pairm.first != pairm.second)
                diff.push_back(Json{{"lambda", to_string(l)},
                                    {"oracle", std::to_string(pairm.first)},
                                    {"pipeline", std::to_string(pairm.second)}});
        bool match = diff.empty();
        Json report{{"k", std::to_string(k)},
                    {"oracle", json_spectrum(oracle)},
                    {"pipeline", json_spectrum(pipeline)},
                    {"diff", std::move(diff)},
                    {"match", match}};
        return emit(report, match ? 0 : 1);
    }

    // remaining subcommands need a problem document
    std::string document;
    if (a.input_path) {
        std::ifstream in(*a.input_path, std::ios::binary);
        if (!in)
            return CliResult{3, detail::dump(error_report("ReadError", *a.input_path,
                                                          "cannot read input file"),
                                             a.pretty),
                             ""};
        std::ostringstream buffer;
        buffer << in.rdbuf();
        document = buffer.str();
    } else {
        document = read_stdin();
    }

    Analysis analysis;
    try {
        Json j = Json::parse(document);
        ProblemSpec spec = problem_from_json(j);
        analysis = load_problem(spec, a.seed, a.t_samples);
    } catch (const Json::parse_error& e) {
        return CliResult{3, detail::dump(error_report("MalformedJson", "", e.what()), a.pretty), ""};
    } catch (const InputError& e) {
        return CliResult{3, detail::dump(error_report(e.code(), "", e.what()), a.pretty), ""};
    } catch (const ParseError& e) {
        return CliResult{3, detail::dump(error_report("ParseError", "", e.what()), a.pretty), ""};
    } catch (const ValidationError& e) {
        return CliResult{
            3, detail::dump(error_report(to_string(e.code()), e.which(), e.what()), a.pretty), ""};
    }

    if (a.subcommand == "spectrum") return emit(json_spectrum(analysis.spec), 0);
    if (a.subcommand == "connection") return emit(json_connection(analysis), 0);
    if (a.subcommand == "frobenius") return emit(json_frobenius(analysis), 0);

    std::vector<CheckResult> checks = run_all_checks(analysis);
    bool all_pass = true;
    for (const CheckResult& c : checks) all_pass = all_pass && c.pass;
    if (a.subcommand == "verify")
        return emit(verify_report(analysis, checks), all_pass ? 0 : 1);
    return emit(full_report(analysis, checks), all_pass ? 0 : 1);  // analyze
}

}  // namespace curvefrob
