#ifndef JACOBI_MV_CLI_HPP
#define JACOBI_MV_CLI_HPP

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <jacobi_mv/closed_forms.hpp>
#include <jacobi_mv/jacobi_sequences.hpp>
#include <jacobi_mv/serialization.hpp>

namespace jacobi_mv::cli
{

enum exit_code : int { ok = 0, mismatch = 1, input_error = 2 };

struct RunConfig {
    std::string command;
    std::string family;
    std::optional<std::size_t> d;
    std::string alpha;
    std::string a;
    std::string b;
    std::string lambda;
    std::string measure;
    std::string table;
    std::optional<int> max_level;
    std::string convention = "normalized";
    std::string format = "json";
    std::string output;
    std::string beta;
};

inline const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names{"decompose", "cap", "omega", "alpha", "verify", "atoms", "reconstruct"};
    return names;
}

inline std::string description(const std::string& command)
{
    static const std::map<std::string, std::string> text{
        {"decompose", "graded orthogonal basis up to --max-degree"},
        {"cap", "creation, preservation and annihilation blocks up to --max-level"},
        {"omega", "Omega_n for n = 0..--max-level"},
        {"alpha", "alpha_{e_j|n} for n = 0..--max-level"},
        {"verify", "compare a classical family against its closed forms"},
        {"atoms", "first vanishing Omega level and the atom bound"},
        {"reconstruct", "moment --beta recomputed from the Jacobi sequences"},
    };
    return text.at(command);
}

/// Registers one subcommand per operation; all share the same flags.
inline void configure(CLI::App& app, RunConfig& cfg)
{
    app.require_subcommand(1);
    for (const auto& name : commands()) {
        auto* sub = app.add_subcommand(name, description(name));
        sub->callback([&cfg, name] { cfg.command = name; });
        sub->add_option("--family", cfg.family, "hermite|laguerre|jacobi|gegenbauer|chebyshev1|chebyshev2|legendre");
        sub->add_option("--d", cfg.d, "dimension");
        sub->add_option("--alpha", cfg.alpha, "Laguerre parameters, comma separated rationals");
        sub->add_option("--a", cfg.a, "Jacobi parameters a");
        sub->add_option("--b", cfg.b, "Jacobi parameters b");
        sub->add_option("--lambda", cfg.lambda, "Gegenbauer parameters");
        sub->add_option("--measure", cfg.measure, "atomic measure JSON file");
        sub->add_option("--table", cfg.table, "moment table JSON file");
        sub->add_option("--max-level,--max-degree", cfg.max_level, "highest level (or degree) to compute");
        sub->add_option("--convention", cfg.convention, "normalized|paper")
            ->check(CLI::IsMember({"normalized", "paper"}));
        sub->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output,-o", cfg.output, "write here instead of stdout");
        sub->add_option("--beta", cfg.beta, "moment index for reconstruct, e.g. 2,1");
    }
}

namespace detail
{

inline std::vector<Rational> parse_list(const std::string& s, const char* flag)
{
    std::vector<Rational> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(parse_rational(item));
        } catch (const error&) {
            throw error(errc::unsupported_parameter, std::string(flag) + ": '" + item + "' is not an exact rational");
        }
    }
    return out;
}

/// Scalar lists may be given once and broadcast to all d coordinates.
inline std::vector<Rational> sized(std::vector<Rational> v, std::optional<std::size_t> d, const char* flag)
{
    if (v.empty()) {
        throw error(errc::invalid_input, std::string("missing ") + flag);
    }
    if (d && v.size() == 1 && *d > 1) {
        v.assign(*d, v.front());
    }
    if (d && v.size() != *d) {
        throw error(errc::dimension_mismatch, std::string(flag) + " has " + std::to_string(v.size()) +
                                                  " values but --d is " + std::to_string(*d));
    }
    return v;
}

inline FamilySpec family_spec(const RunConfig& cfg)
{
    const family kind = family_from_string(cfg.family);
    switch (kind) {
    case family::laguerre:
        return FamilySpec::laguerre(sized(parse_list(cfg.alpha, "--alpha"), cfg.d, "--alpha"));
    case family::jacobi:
        return FamilySpec::jacobi(sized(parse_list(cfg.a, "--a"), cfg.d, "--a"),
                                  sized(parse_list(cfg.b, "--b"), cfg.d, "--b"));
    case family::gegenbauer:
        return FamilySpec::gegenbauer(sized(parse_list(cfg.lambda, "--lambda"), cfg.d, "--lambda"));
    default:
        break;
    }
    if (!cfg.d) {
        throw error(errc::invalid_input, "--d is required for " + cfg.family);
    }
    switch (kind) {
    case family::hermite:
        return FamilySpec::hermite(*cfg.d);
    case family::chebyshev1:
        return FamilySpec::chebyshev1(*cfg.d);
    case family::chebyshev2:
        return FamilySpec::chebyshev2(*cfg.d);
    default:
        return FamilySpec::legendre(*cfg.d);
    }
}

struct Source {
    MomentFunctional functional;
    std::optional<FamilySpec> spec;
};

inline Source source(const RunConfig& cfg)
{
    const int given = !cfg.family.empty() + !cfg.measure.empty() + !cfg.table.empty();
    if (given != 1) {
        throw error(errc::invalid_input, "give exactly one of --family, --measure, --table");
    }
    if (!cfg.family.empty()) {
        auto spec = family_spec(cfg);
        return {spec.functional(), spec};
    }
    auto f = json::parse_functional(json::read_file(!cfg.measure.empty() ? cfg.measure : cfg.table));
    if (cfg.d && *cfg.d != f.dim()) {
        throw error(errc::dimension_mismatch, "--d disagrees with the file's d");
    }
    return {std::move(f), std::nullopt};
}

inline int level(const RunConfig& cfg, int fallback)
{
    const int l = cfg.max_level.value_or(fallback);
    if (l < 0) {
        throw error(errc::invalid_index, "--max-level must be non-negative");
    }
    return l;
}

inline std::string class_label(const MultiIndex& m)
{
    std::string s;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        s += (i ? ":" : "") + std::to_string(m[i]);
    }
    return s;
}

struct Emitted {
    json::document doc;
    std::optional<std::string> csv;
    int status = ok;
};

inline Emitted run_command(const RunConfig& cfg, std::ostream& err)
{
    Emitted out;
    const bool want_csv = cfg.format == "csv";
    const auto conv = cfg.convention == "paper" ? json::convention::paper : json::convention::normalized;

    if (cfg.command == "verify") {
        if (cfg.family.empty()) {
            throw error(errc::invalid_input, "verify needs --family");
        }
        const auto spec = family_spec(cfg);
        const auto report = verify_family(spec, level(cfg, 3));
        out.doc = json::family_report(report);
        out.status = report.passed ? ok : mismatch;
        if (want_csv) {
            std::ostringstream csv;
            csv << "n,class,pipeline_omega,closed_form_omega,omega_match,alpha_match,specialized_status\n";
            for (const auto& e : report.entries) {
                csv << e.n << ',' << class_label(e.nbar) << ',' << e.pipeline_omega.get_str() << ','
                    << e.closed_omega.get_str() << ',' << e.omega_match << ',' << e.alpha_match << ','
                    << e.specialized_status << '\n';
            }
            out.csv = csv.str();
        }
        for (const auto& d : report.specialized_discrepancies) {
            err << "note: " << d << '\n';
        }
        return out;
    }

    const auto src = source(cfg);
    const auto& f = src.functional;
    const std::optional<SymbolicReal> mass = f.has_mass_factor() ? std::optional(f.mass_factor()) : std::nullopt;

    if (cfg.command == "decompose") {
        out.doc = json::basis(decompose<Rational>(f, level(cfg, 2)));
    } else if (cfg.command == "cap") {
        const auto ops = build_cap_operators(decompose<Rational>(f, level(cfg, 2) + 1));
        out.doc = json::cap_operators(ops);
        out.doc["quantum_decomposition"] = json::report(verify_quantum_decomposition(ops));
        out.doc["adjoints"] = json::report(verify_adjoints(ops));
    } else if (cfg.command == "omega" || cfg.command == "alpha") {
        const bool omega_only = cfg.command == "omega";
        const int l = level(cfg, 2);
        const auto ops = build_cap_operators(decompose<Rational>(f, omega_only ? std::max(l, 1) : l + 1));
        const auto seq = omega_only ? compute_omega(ops, l) : compute(ops, l);
        json::document levels = json::document::array();
        bool diagonal = true;
        for (int n = 0; n <= l; ++n) {
            levels.push_back(omega_only ? json::omega_level(seq, n, conv, mass) : json::alpha_level(seq, n));
            diagonal = diagonal && (omega_only ? seq.omega(n).is_diagonal() : [&] {
                for (std::size_t j = 0; j < seq.dim(); ++j) {
                    if (!seq.alpha(j, n).is_diagonal()) {
                        return false;
                    }
                }
                return true;
            }());
        }
        out.doc["d"] = f.dim();
        out.doc["source"] = f.describe();
        out.doc["levels"] = std::move(levels);
        if (want_csv && !diagonal) {
            err << "note: matrices are not diagonal; CSV covers diagonal output only, writing JSON\n";
        } else if (want_csv) {
            std::ostringstream csv;
            if (omega_only) {
                csv << "n,class,omega\n";
            } else {
                csv << "n,class,j,alpha\n";
            }
            for (int n = 0; n <= l; ++n) {
                const auto classes = seq.classes(n);
                for (std::size_t i = 0; i < classes.size(); ++i) {
                    if (omega_only) {
                        const Rational& v = seq.omega(n)(i, i);
                        csv << n << ',' << class_label(classes[i]) << ','
                            << (conv == json::convention::paper && mass ? (SymbolicReal(v) * *mass).str() : v.get_str())
                            << '\n';
                    } else {
                        for (std::size_t j = 0; j < seq.dim(); ++j) {
                            csv << n << ',' << class_label(classes[i]) << ',' << j + 1 << ','
                                << seq.alpha(j, n)(i, i).get_str() << '\n';
                        }
                    }
                }
            }
            out.csv = csv.str();
        }
    } else if (cfg.command == "atoms") {
        const int l = std::max(level(cfg, 4), 1);
        const auto found = detect_atoms(f, l);
        out.doc = json::atom_detection(found);
        const auto seq = compute_omega(build_cap_operators(decompose<Rational>(f, l)), l);
        out.doc["rank_profile"] = json::rank_profile(rank_profile(seq));
        if (want_csv) {
            out.csv = "n0,atom_bound\n" + (found.n0 ? std::to_string(*found.n0) : std::string()) + ',' +
                      (found.atom_bound ? found.atom_bound->get_str() : std::string()) + '\n';
        }
    } else if (cfg.command == "reconstruct") {
        if (cfg.beta.empty()) {
            throw error(errc::invalid_input, "reconstruct needs --beta");
        }
        std::vector<int> entries;
        for (const auto& q : parse_list(cfg.beta, "--beta")) {
            if (!is_integer(q) || q < 0) {
                throw error(errc::invalid_index, "--beta entries must be non-negative integers");
            }
            entries.push_back(static_cast<int>(q.get_num().get_si()));
        }
        const MultiIndex beta(entries);
        if (beta.dim() != f.dim()) {
            throw error(errc::dimension_mismatch, "--beta has " + std::to_string(beta.dim()) + " entries, d is " +
                                                      std::to_string(f.dim()));
        }
        const int l = level(cfg, beta.degree() / 2);
        const int alpha_top = std::min(beta.degree() > 0 ? (beta.degree() - 1) / 2 : 0, l);
        const auto seq = compute(build_cap_operators(decompose<Rational>(f, std::max(l, alpha_top + 1))), l, alpha_top);
        const Rational value = reconstruct_moment(seq, beta);
        const Rational direct = f.moment(beta);
        out.doc["beta"] = json::multi_index(beta);
        out.doc["value"] = json::rational(value);
        out.doc["moment"] = json::rational(direct);
        out.doc["match"] = value == direct;
        out.status = value == direct ? ok : mismatch;
        if (want_csv) {
            out.csv = "beta,value,moment,match\n" + class_label(beta) + ',' + value.get_str() + ',' +
                      direct.get_str() + ',' + (value == direct ? "1" : "0") + '\n';
        }
    } else {
        throw error(errc::invalid_input, "unknown command '" + cfg.command + "'");
    }
    if (want_csv && !out.csv && cfg.command != "omega" && cfg.command != "alpha") {
        err << "note: " << cfg.command << " has no CSV form, writing JSON\n";
    }
    return out;
}

} // namespace detail

/// Runs one command; writes the document to cfg.output or out. Errors go to
/// err as "error: <code>: message".
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    detail::Emitted result;
    try {
        result = detail::run_command(cfg, err);
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: invalid-input: " << e.what() << '\n';
        return input_error;
    }
    const std::string text = result.csv ? *result.csv : result.doc.dump(2) + '\n';
    if (cfg.output.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.output);
        if (!file) {
            err << "error: invalid-input: cannot write '" << cfg.output << "'\n";
            return input_error;
        }
        file << text;
    }
    return result.status;
}

/// Parses argv and runs; usable from tests as well as main().
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Jacobi sequences of multivariate moment functionals"};
    RunConfig cfg;
    configure(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : input_error;
    }
    return run(cfg, out, err);
}

} // namespace jacobi_mv::cli

#endif
