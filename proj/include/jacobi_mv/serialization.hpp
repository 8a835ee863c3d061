#ifndef JACOBI_MV_SERIALIZATION_HPP
#define JACOBI_MV_SERIALIZATION_HPP

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <jacobi_mv/cap_operators.hpp>
#include <jacobi_mv/closed_forms.hpp>
#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/jacobi_sequences.hpp>
#include <jacobi_mv/moments.hpp>
#include <jacobi_mv/orthodecomp.hpp>
#include <jacobi_mv/symbolic.hpp>

// JSON documents use insertion-ordered objects so output is byte-stable.
// Rationals are strings in lowest terms ("p/q", or "p" for integers).

namespace jacobi_mv::json
{

using document = nlohmann::ordered_json;

inline document rational(const Rational& q) { return q.get_str(); }

/// Accepts "p/q", exact decimals, or JSON integers.
inline Rational parse_rational(const document& j, const std::string& where)
{
    if (j.is_string()) {
        return jacobi_mv::parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    throw error(errc::invalid_input, where + ": expected a rational string such as \"1/2\"");
}

inline document multi_index(const MultiIndex& m) { return m.entries(); }

inline MultiIndex parse_multi_index(const document& j, const std::string& where)
{
    if (!j.is_array()) {
        throw error(errc::invalid_input, where + ": expected an array of non-negative integers");
    }
    std::vector<int> v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) {
            throw error(errc::invalid_input, where + ": expected an array of non-negative integers");
        }
        v.push_back(x.get<int>());
    }
    return MultiIndex(std::move(v));
}

inline document matrix(const Matrix<Rational>& m)
{
    document rows = document::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        document row = document::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            row.push_back(rational(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Structured form: value = rational * pi^pi_pow * 2^two_pow * prod Gamma(c)^e.
inline document symbolic(const SymbolicReal& s)
{
    document g = document::array();
    for (const auto& [core, e] : s.gamma_cores()) {
        g.push_back(document::array({core.get_str(), e}));
    }
    document out;
    out["rational"] = rational(s.coefficient());
    out["pi_pow"] = rational(s.pi_exponent());
    out["two_pow"] = rational(s.two_exponent());
    out["gamma"] = std::move(g);
    return out;
}

inline document classes(const ClassBasis& basis)
{
    document out = document::array();
    for (const auto& c : basis.classes()) {
        out.push_back(multi_index(c));
    }
    return out;
}

inline document polynomial(const Polynomial<Rational>& p)
{
    document terms = document::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        document t;
        t["beta"] = multi_index(it->first);
        t["c"] = rational(it->second);
        terms.push_back(std::move(t));
    }
    document out;
    out["d"] = p.dim();
    out["terms"] = std::move(terms);
    return out;
}

inline Polynomial<Rational> parse_polynomial(const document& j)
{
    if (!j.is_object() || !j.contains("d") || !j.contains("terms")) {
        throw error(errc::invalid_input, "polynomial JSON needs \"d\" and \"terms\"");
    }
    Polynomial<Rational> p(j.at("d").get<std::size_t>());
    for (const auto& t : j.at("terms")) {
        p.add_term(parse_multi_index(t.at("beta"), "term beta"), parse_rational(t.at("c"), "term coefficient"));
    }
    return p;
}

/// Atomic measure ({"d","atoms":[{"x":[..],"w":..}]}) or moment table
/// ({"d","max_degree","moments":[{"beta":[..],"value":..}]}).
inline MomentFunctional parse_functional(const document& j)
{
    if (!j.is_object() || !j.contains("d")) {
        throw error(errc::invalid_input, "functional JSON needs a \"d\" field");
    }
    const auto& dj = j.at("d");
    if (!dj.is_number_integer() || dj.get<long>() < 1) {
        throw error(errc::invalid_dimension, "\"d\" must be a positive integer");
    }
    const auto d = dj.get<std::size_t>();
    if (j.contains("atoms")) {
        std::vector<Atom> atoms;
        for (const auto& a : j.at("atoms")) {
            Atom atom;
            for (const auto& x : a.at("x")) {
                atom.x.push_back(parse_rational(x, "atom coordinate"));
            }
            atom.w = parse_rational(a.at("w"), "atom weight");
            atoms.push_back(std::move(atom));
        }
        return MomentFunctional::atomic(d, std::move(atoms));
    }
    if (j.contains("moments")) {
        MomentTable t;
        if (!j.contains("max_degree") || !j.at("max_degree").is_number_integer()) {
            throw error(errc::invalid_input, "moment table needs an integer \"max_degree\"");
        }
        t.max_degree = j.at("max_degree").get<int>();
        for (const auto& m : j.at("moments")) {
            const auto beta = parse_multi_index(m.at("beta"), "moment beta");
            if (!t.values.emplace(beta, parse_rational(m.at("value"), "moment value")).second) {
                throw error(errc::invalid_input, "moment " + beta.str() + " listed twice");
            }
        }
        return MomentFunctional::table(d, std::move(t));
    }
    throw error(errc::invalid_input, "functional JSON needs \"atoms\" or \"moments\"");
}

inline document read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw error(errc::invalid_input, "cannot open file '" + path + "'");
    }
    try {
        return document::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::invalid_input, "malformed JSON in '" + path + "': " + e.what());
    }
}

inline document basis(const GradedOrthogonalBasis<Rational>& b)
{
    document degrees = document::array();
    for (int n = 0; n <= b.max_degree(); ++n) {
        document level;
        level["n"] = n;
        document labels = document::array();
        document polys = document::array();
        for (std::size_t i = 0; i < b.size(n); ++i) {
            labels.push_back(multi_index(b.label(n, i)));
            polys.push_back(polynomial(b.polynomial(n, i)));
        }
        level["labels"] = std::move(labels);
        level["polynomials"] = std::move(polys);
        level["gram"] = matrix(b.gram(n));
        level["rank"] = b.rank(n);
        level["null_mask"] = b.null_mask(n);
        degrees.push_back(std::move(level));
    }
    document out;
    out["d"] = b.dim();
    out["max_degree"] = b.max_degree();
    out["source"] = b.source();
    out["degrees"] = std::move(degrees);
    return out;
}

inline document cap_operators(const CapOperatorSet<Rational>& ops)
{
    const auto& b = ops.basis();
    document levels = document::array();
    for (int n = 0; n <= ops.top_level(); ++n) {
        for (std::size_t j = 0; j < ops.dim(); ++j) {
            document blk;
            blk["n"] = n;
            blk["j"] = j + 1;
            blk["columns"] = classes(ClassBasis(b.dim(), n));
            blk["plus_rows"] = classes(ClassBasis(b.dim(), n + 1));
            blk["plus"] = matrix(ops.plus(j, n));
            blk["zero"] = matrix(ops.zero(j, n));
            blk["minus_rows"] = n > 0 ? classes(ClassBasis(b.dim(), n - 1)) : document::array();
            blk["minus"] = n > 0 ? matrix(ops.minus(j, n)) : document::array();
            levels.push_back(std::move(blk));
        }
    }
    document out;
    out["d"] = ops.dim();
    out["basis_degree"] = b.max_degree();
    out["jacobi_relation_exact"] = ops.jacobi_relation_exact();
    out["levels"] = std::move(levels);
    return out;
}

enum class convention { normalized, paper };

inline document omega_level(const JacobiSequencePair<Rational>& seq, int n, convention conv,
                            const std::optional<SymbolicReal>& mass)
{
    document out;
    out["n"] = n;
    out["classes"] = classes(seq.classes(n));
    const auto& om = seq.omega(n);
    if (conv == convention::paper) {
        if (!mass) {
            throw error(errc::no_mass_factor, "--convention paper needs a weight family with a known mass");
        }
        document rows = document::array();
        for (std::size_t i = 0; i < om.rows(); ++i) {
            document row = document::array();
            for (std::size_t k = 0; k < om.cols(); ++k) {
                row.push_back((SymbolicReal(om(i, k)) * *mass).str());
            }
            rows.push_back(std::move(row));
        }
        out["omega"] = std::move(rows);
    } else {
        out["omega"] = matrix(om);
    }
    out["convention"] = conv == convention::paper ? "paper" : "normalized";
    if (mass) {
        out["mass_factor"] = mass->str();
        out["mass_factor_parts"] = symbolic(*mass);
    } else {
        out["mass_factor"] = nullptr;
    }
    return out;
}

inline document alpha_level(const JacobiSequencePair<Rational>& seq, int n)
{
    document out;
    out["n"] = n;
    out["classes"] = classes(seq.classes(n));
    document per_j = document::array();
    for (std::size_t j = 0; j < seq.dim(); ++j) {
        per_j.push_back(matrix(seq.alpha(j, n)));
    }
    out["alpha"] = std::move(per_j);
    return out;
}

inline document rank_profile(const RankProfile& p)
{
    document levels = document::array();
    for (const auto& e : p.levels) {
        document l;
        l["n"] = e.n;
        l["rank"] = e.rank;
        l["dim"] = e.dim;
        levels.push_back(std::move(l));
    }
    document out;
    out["levels"] = std::move(levels);
    out["first_deficient"] = p.first_deficient ? document(*p.first_deficient) : document(nullptr);
    out["propagation_holds"] = p.propagation_holds;
    return out;
}

inline document atom_detection(const AtomDetection& a)
{
    document out;
    out["n0"] = a.n0 ? document(*a.n0) : document(nullptr);
    out["atom_bound"] = a.atom_bound ? document(a.atom_bound->get_str()) : document(nullptr);
    if (a.atom_bound && a.atom_bound->fits_slong_p()) {
        out["atom_bound"] = a.atom_bound->get_si();
    }
    out["conclusive"] = a.conclusive();
    out["searched_to"] = a.searched_to;
    return out;
}

inline document report(const CheckReport& r)
{
    document out;
    out["passed"] = r.passed;
    out["checks"] = r.checks;
    out["witness"] = r.witness;
    return out;
}

inline document family_report(const FamilyReport& r)
{
    document entries = document::array();
    for (const auto& e : r.entries) {
        document x;
        x["n"] = e.n;
        x["class"] = multi_index(e.nbar);
        x["pipeline_omega"] = rational(e.pipeline_omega);
        x["closed_form_omega"] = rational(e.closed_omega);
        x["omega_match"] = e.omega_match;
        document pa = document::array();
        document ca = document::array();
        for (std::size_t l = 0; l < e.pipeline_alpha.size(); ++l) {
            pa.push_back(rational(e.pipeline_alpha[l]));
            ca.push_back(rational(e.closed_alpha[l]));
        }
        x["pipeline_alpha"] = std::move(pa);
        x["closed_form_alpha"] = std::move(ca);
        x["alpha_match"] = e.alpha_match;
        if (e.specialized_status != "n/a") {
            x["specialized_formula"] = e.specialized_omega ? rational(*e.specialized_omega) : document(nullptr);
            x["specialized_status"] = e.specialized_status;
        }
        entries.push_back(std::move(x));
    }
    document creation = document::array();
    for (const auto& c : r.creation) {
        document x;
        x["coordinate"] = c.coordinate + 1;
        x["base"] = multi_index(c.base);
        x["power"] = c.power;
        x["expected"] = rational(c.expected);
        x["observed"] = c.observed ? rational(*c.observed) : document(nullptr);
        x["match"] = c.match;
        creation.push_back(std::move(x));
    }
    document out;
    out["family"] = to_string(r.spec.kind);
    out["spec"] = r.spec.describe();
    out["max_level"] = r.max_level;
    out["passed"] = r.passed;
    out["diagonal"] = r.diagonal;
    out["witness"] = r.witness;
    out["mass_factor"] = r.spec.mass_factor().str();
    out["entries"] = std::move(entries);
    out["creation_power"] = std::move(creation);
    out["specialized_discrepancies"] = r.specialized_discrepancies;
    return out;
}

} // namespace jacobi_mv::json

#endif
