#pragma once

#include "coverkit/building_data.hpp"
#include "coverkit/deformations.hpp"
#include "coverkit/polynomial.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace coverkit {

enum class Flavor { Plain, Singular, Macaulay2 };

inline Flavor parse_flavor(const std::string& s)
{
    if (s == "plain") return Flavor::Plain;
    if (s == "singular") return Flavor::Singular;
    if (s == "m2" || s == "macaulay2") return Flavor::Macaulay2;
    throw std::invalid_argument("unknown flavor '" + s + "' (plain, singular, m2)");
}

/// A ring variable and the character giving its G^*-degree.
struct RingVariable {
    std::string name;
    bool is_parameter = false;
    std::size_t character_index = 0;   ///< z_k: k; s_{i,chi}: index of chi
    std::size_t branch = 0;            ///< parameters only, 0-based
    std::size_t degree_index = 0;      ///< index of the grading character (chi for z, chi^{-1} for s)
};

struct Relation {
    std::size_t first = 0;    ///< character indices, 1 <= first <= second
    std::size_t second = 0;
    poly::Polynomial lhs;     ///< z_first z_second
    poly::Polynomial rhs;     ///< z_{first second} prod_i tau_i^eps
    poly::Polynomial value;   ///< lhs - rhs
};

/// "lhs - rhs", with the right-hand side parenthesised when it has several terms.
inline std::string relation_text(const Relation& r, const std::vector<std::string>& names)
{
    auto lhs = poly::to_text(r.lhs, names);
    if (r.rhs.is_zero()) return lhs;
    if (r.rhs.terms().size() == 1 && r.rhs.terms().begin()->second == 1) return lhs + " - " + poly::to_text(r.rhs, names);
    return lhs + " - (" + poly::to_text(r.rhs, names) + ")";
}

/// z_chi z_chi' - z_{chi chi'} prod_i tau_i^{eps^i_{chi,chi'}}, tau_i = sum_{(i,chi) in S} s_{i,chi} z_chi.
///
/// z of the trivial character is the constant 1. Variables: z1 .. z(#G-1) by character index, then
/// parameters s<i>c<k> (branch i 1-based, character index k).
struct RelationSystem {
    FinAbGroup group;
    std::vector<InertiaDatum> inertia;
    bool galois = false;
    std::vector<RingVariable> variables;
    std::vector<Relation> relations;

    std::vector<std::string> names() const
    {
        std::vector<std::string> out;
        for (const auto& v : variables) out.push_back(v.name);
        return out;
    }
    std::size_t coordinate_count() const { return group.order() - 1; }
};

inline std::string parameter_name(std::size_t branch, std::size_t character_index)
{
    return "s" + std::to_string(branch + 1) + "c" + std::to_string(character_index);
}

inline RelationSystem build_relation_system(const FinAbGroup& group, const std::vector<InertiaDatum>& inertia, bool galois)
{
    RelationSystem sys{group, inertia, galois, {}, {}};
    const auto chars = group.characters();
    const auto N = chars.size();
    for (std::size_t k = 1; k < N; ++k) sys.variables.push_back({"z" + std::to_string(k), false, k, 0, k});
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> param_slot;
    for (const auto& e : compute_S(group, inertia)) {
        const auto k = group.index_of(e.chi);
        if (galois && k != 0) continue;
        param_slot[{e.i, k}] = sys.variables.size();
        sys.variables.push_back({parameter_name(e.i, k), true, k, e.i, group.index_of(group.inverse(e.chi))});
    }
    const auto nvars = sys.variables.size();

    auto z = [&](std::size_t k) {
        return k == 0 ? poly::Polynomial::constant(nvars, 1) : poly::Polynomial::variable(nvars, k - 1);
    };
    std::vector<poly::Polynomial> tau;
    for (std::size_t i = 0; i < inertia.size(); ++i) {
        poly::Polynomial t(nvars);
        for (const auto& [key, slot] : param_slot)
            if (key.first == i) t += poly::Polynomial::variable(nvars, slot) * z(key.second);
        tau.push_back(std::move(t));
    }
    for (std::size_t a = 1; a < N; ++a)
        for (std::size_t b = a; b < N; ++b) {
            const auto ab = group.index_of(group.multiply(chars[a], chars[b]));
            auto rhs = z(ab);
            for (std::size_t i = 0; i < inertia.size(); ++i) rhs = rhs * tau[i].pow(static_cast<int>(eps_coeff(group, inertia[i], chars[a], chars[b])));
            auto lhs = z(a) * z(b);
            auto value = lhs - rhs;
            sys.relations.push_back({a, b, std::move(lhs), std::move(rhs), std::move(value)});
        }
    return sys;
}

inline RelationSystem build_relation_system(const CoverData& cd, bool galois)
{
    return build_relation_system(cd.group, cd.inertia, galois);
}

inline std::vector<std::string> system_header(const RelationSystem& sys)
{
    std::vector<std::string> lines;
    lines.push_back("coverkit relation system");
    lines.push_back("group: " + describe_group(sys.group.invariant_factors()));
    lines.push_back(std::string("system: ") + (sys.galois ? "galois" : "natural"));
    lines.push_back("convention: the coordinate of the trivial character is the constant 1");
    for (const auto& v : sys.variables) {
        if (v.is_parameter)
            lines.push_back(v.name + ": branch " + std::to_string(v.branch + 1) + " " +
                            to_string(sys.inertia[v.branch].generator.coords) + ", character " +
                            to_string(sys.group.characters()[v.character_index].exponents));
        else
            lines.push_back(v.name + ": character " + to_string(sys.group.characters()[v.character_index].exponents));
    }
    return lines;
}

/// Deterministic text for a CAS; relations ordered by (first, second) character index.
inline std::string emit(const RelationSystem& sys, Flavor flavor)
{
    const auto names = sys.names();
    std::vector<std::string> polys;
    for (const auto& r : sys.relations) polys.push_back(relation_text(r, names));
    std::string out;
    const std::string comment = flavor == Flavor::Plain ? "# " : flavor == Flavor::Singular ? "// " : "-- ";
    for (const auto& line : system_header(sys)) out += comment + line + "\n";

    std::string ring_vars;
    for (std::size_t k = 0; k < names.size(); ++k) ring_vars += (k ? ", " : "") + names[k];
    if (ring_vars.empty()) ring_vars = "u";   // empty rings are not accepted by the CAS front ends

    switch (flavor) {
    case Flavor::Plain:
        for (const auto& p : polys) out += p + "\n";
        break;
    case Flavor::Singular:
        out += "ring R = 0, (" + ring_vars + "), dp;\n";
        out += "ideal I =";
        if (polys.empty()) out += " 0";
        for (std::size_t k = 0; k < polys.size(); ++k) out += std::string(k ? ",\n  " : "\n  ") + polys[k];
        out += ";\n";
        break;
    case Flavor::Macaulay2:
        out += "R = QQ[" + ring_vars + "];\n";
        out += "I = ideal(";
        if (polys.empty()) out += "0_R";
        for (std::size_t k = 0; k < polys.size(); ++k) out += std::string(k ? ",\n  " : "\n  ") + polys[k];
        out += polys.empty() ? ");\n" : "\n);\n";
        break;
    }
    return out;
}

inline std::string emit(const CoverData& cd, Flavor flavor, bool galois = false)
{
    return emit(build_relation_system(cd, galois), flavor);
}

struct FlatnessReport {
    std::int64_t expected = 0;   ///< #G
    bool zero_dimensional = false;
    std::size_t with_multiplicity = 0;
    std::size_t distinct = 0;
};

/// Fibre of the relation system over numeric parameter values: solution counts in the z coordinates.
inline FlatnessReport flatness_smoke_test(const RelationSystem& sys, const std::map<std::string, Rational>& values,
                                          std::int64_t max_group_order = 8)
{
    if (sys.group.order() > max_group_order)
        throw poly::SizeBoundError("flatness test is limited to #G <= " + std::to_string(max_group_order));
    std::map<std::size_t, Rational> substitution;
    for (std::size_t k = 0; k < sys.variables.size(); ++k) {
        if (!sys.variables[k].is_parameter) continue;
        auto it = values.find(sys.variables[k].name);
        if (it == values.end()) throw std::invalid_argument("no value for parameter " + sys.variables[k].name);
        substitution[k] = it->second;
    }
    for (const auto& [name, value] : values) {
        bool known = false;
        for (const auto& v : sys.variables) known = known || (v.is_parameter && v.name == name);
        if (!known) throw std::invalid_argument("unknown parameter " + name);
    }
    const std::size_t nz = sys.coordinate_count();
    std::vector<poly::Polynomial> fibre;
    for (const auto& r : sys.relations) {
        auto evaluated = r.value.evaluate(substitution);
        poly::Polynomial restricted(nz);
        for (const auto& [m, c] : evaluated.terms()) restricted.add_term(poly::Monomial(m.begin(), m.begin() + nz), c);
        fibre.push_back(std::move(restricted));
    }
    FlatnessReport report;
    report.expected = sys.group.order();
    if (nz == 0) {
        report.zero_dimensional = true;
        report.with_multiplicity = report.distinct = 1;
        return report;
    }
    auto count = poly::count_solutions(fibre, nz);
    report.zero_dimensional = count.zero_dimensional;
    report.with_multiplicity = count.with_multiplicity;
    report.distinct = count.distinct;
    return report;
}

}  // namespace coverkit
