#pragma once

#include "coverkit/building_data.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coverkit {

/// (i, chi) with chi restricted to H_i different from psi_i^{-1}; i indexes the inertia list.
struct SEntry {
    std::size_t i = 0;
    Character chi;

    auto operator<=>(const SEntry&) const = default;
};

/// S = {(i, chi) : r^i_chi != m_i - 1}, ordered by i, then by character enumeration index.
inline std::vector<SEntry> compute_S(const FinAbGroup& group, const std::vector<InertiaDatum>& inertia)
{
    std::vector<SEntry> out;
    const auto chars = group.characters();
    for (std::size_t i = 0; i < inertia.size(); ++i)
        for (const auto& chi : chars)
            if (r_coeff(group, inertia[i], chi) != inertia[i].order - 1) out.push_back({i, chi});
    return out;
}

inline bool in_S(const FinAbGroup& group, const InertiaDatum& datum, const Character& chi)
{
    return r_coeff(group, datum, chi) != datum.order - 1;
}

/// One summand H^0(O(D_i) x L_chi^{-1}) of the chi-part of the natural deformations.
struct TangentSummand {
    std::size_t i = 0;
    NSClass cls;             ///< xi_i - eta_chi
    Pic0Marker marker;
    std::optional<std::int64_t> h0;
    std::optional<std::int64_t> h1;
};

struct CharacterRow {
    Character chi;
    NSClass eta;
    Pic0Marker eta_marker;
    std::vector<TangentSummand> summands;   ///< one per i in S_chi
    std::optional<std::int64_t> tangent;    ///< sum of h0; nullopt if some summand is undecided
    std::optional<std::int64_t> obstruction_lower_bound;  ///< sum of h1 over the same summands
    bool eta_ample = false;
};

/// User-supplied dimensions of H^1 and H^2 of T_Y(-log sum D_i); no general algorithm exists here.
struct InvariantPartDims {
    std::optional<std::int64_t> h1;
    std::optional<std::int64_t> h2;
};

struct DeformationReport {
    std::vector<SEntry> S;
    std::vector<CharacterRow> rows;   ///< rows[0] is the trivial character
    InvariantPartDims invariant_part;
    bool completeness_verdict = false;
    std::vector<std::string> assumptions;
    std::vector<std::string> unknowns;
    /// Sum of h^0(xi_i - eta_chi) over all of S, trivial character included: the natural
    /// deformation parameters over a fixed base.
    std::optional<std::int64_t> fixed_base_parameter_count;
    /// invariant h^1 plus the non-Galois tangent dimensions.
    std::optional<std::int64_t> natural_deformation_dim;
};

inline DeformationReport tangent_table(const CoverData& cd, const InvariantPartDims& invariant = {})
{
    DeformationReport report;
    report.S = compute_S(cd.group, cd.inertia);
    report.invariant_part = invariant;

    bool all_known = true;
    bool all_ample = true;
    std::int64_t fixed_base = 0;
    std::int64_t non_galois = 0;
    for (const auto& chi : cd.group.characters()) {
        CharacterRow row;
        row.chi = chi;
        row.eta = derive_L_chi(cd, chi);
        row.eta_marker = derive_L_chi_marker(cd, chi);
        std::int64_t t1 = 0;
        std::int64_t t2 = 0;
        bool t1_known = true;
        bool t2_known = true;
        for (std::size_t i = 0; i < cd.inertia.size(); ++i) {
            if (!in_S(cd.group, cd.inertia[i], chi)) continue;
            TangentSummand s;
            s.i = i;
            s.cls = cd.branch[i] - row.eta;
            s.marker = cd.branch_marker(i) - row.eta_marker;
            s.h0 = riemann_roch_h0(cd.base, s.cls, s.marker);
            s.h1 = h1_if_known(cd.base, s.cls, s.marker);
            if (s.h0) t1 += *s.h0;
            else t1_known = false;
            if (s.h1) t2 += *s.h1;
            else t2_known = false;
            row.summands.push_back(std::move(s));
        }
        if (t1_known) row.tangent = t1;
        if (t2_known) row.obstruction_lower_bound = t2;
        if (!chi.is_trivial()) {
            row.eta_ample = is_sufficiently_ample(cd.base, row.eta);
            all_ample = all_ample && row.eta_ample;
            if (t1_known) non_galois += t1;
            else {
                all_known = false;
                report.unknowns.push_back("T1 for character " + to_string(chi.exponents));
            }
            if (!t2_known) report.unknowns.push_back("T2 lower bound for character " + to_string(chi.exponents));
        }
        if (t1_known) fixed_base += t1;
        else if (chi.is_trivial()) report.unknowns.push_back("h0 sum for the trivial character");
        report.rows.push_back(std::move(row));
    }

    report.assumptions.push_back("Omega^1_Y x L_chi is ample for every nontrivial chi (not checked)");
    report.assumptions.push_back("T2 entries are lower bounds from the injection of the H^1 summands");
    report.completeness_verdict = all_ample && cd.base.dim >= 2;
    if (all_known && report.rows[0].tangent) report.fixed_base_parameter_count = fixed_base;
    if (all_known && invariant.h1) report.natural_deformation_dim = *invariant.h1 + non_galois;
    if (!invariant.h1) report.unknowns.push_back("h1 of T_Y(-log D) (user supplied)");
    return report;
}

class UnknownDimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The subgroup of G acting trivially on every nonzero non-Galois tangent summand: the elements
/// that extend to a generic natural deformation. This does not claim equality with Aut(X).
struct AutomorphismPrediction {
    std::vector<Character> active_characters;   ///< chi != 1 with T1_chi > 0
    std::vector<GroupElement> elements;
    std::vector<std::int64_t> invariant_factors;
    std::int64_t order = 1;
    std::string note = "subgroup of G extending to generic natural deformations; Aut(X) may be larger for special data";
};

inline AutomorphismPrediction predict_generic_automorphisms(const FinAbGroup& group, const DeformationReport& report)
{
    AutomorphismPrediction out;
    for (const auto& row : report.rows) {
        if (row.chi.is_trivial()) continue;
        if (!row.tangent) throw UnknownDimensionError("T1 is undecided for character " + to_string(row.chi.exponents));
        if (*row.tangent > 0) out.active_characters.push_back(row.chi);
    }
    out.elements = common_kernel(group, out.active_characters);
    out.invariant_factors = invariant_factors_of(group, out.elements);
    out.order = static_cast<std::int64_t>(out.elements.size());
    return out;
}

inline AutomorphismPrediction predict_generic_automorphisms(const CoverData& cd)
{
    return predict_generic_automorphisms(cd.group, tangent_table(cd));
}

/// Exponents delta_ij m_i - r^i_chi of the (C*)^{#I} action on s_{j,chi}.
struct CstarWeight {
    SEntry entry;
    std::vector<std::int64_t> exponents;
};

inline std::vector<CstarWeight> cstar_weights(const FinAbGroup& group, const std::vector<InertiaDatum>& inertia)
{
    std::vector<CstarWeight> out;
    for (const auto& entry : compute_S(group, inertia)) {
        CstarWeight w{entry, {}};
        for (std::size_t i = 0; i < inertia.size(); ++i)
            w.exponents.push_back((i == entry.i ? inertia[i].order : 0) - r_coeff(group, inertia[i], entry.chi));
        out.push_back(std::move(w));
    }
    return out;
}

inline std::vector<CstarWeight> cstar_weights(const CoverData& cd) { return cstar_weights(cd.group, cd.inertia); }

struct ModuliDimension {
    std::optional<std::int64_t> value;
    std::optional<std::int64_t> before_quotient;
    std::string reason;   ///< why value is unknown, if it is
};

/// q #I + sum_i (h^0(xi_i) - 1), minus dim Aut(Y) when supplied.
inline ModuliDimension moduli_dimension(const CoverData& cd, std::optional<std::int64_t> dim_aut_Y = std::nullopt)
{
    ModuliDimension out;
    std::int64_t total = cd.base.irregularity * static_cast<std::int64_t>(cd.inertia.size());
    for (std::size_t i = 0; i < cd.inertia.size(); ++i) {
        if (!is_sufficiently_ample(cd.base, cd.branch[i], cd.base.canonical)) {
            out.reason = "xi_" + std::to_string(i + 1) + " - K_Y is not sufficiently ample";
            return out;
        }
        auto h0 = riemann_roch_h0(cd.base, cd.branch[i], cd.branch_marker(i));
        if (!h0) {
            out.reason = "h0 of xi_" + std::to_string(i + 1) + " is undecided";
            return out;
        }
        total += *h0 - 1;
    }
    out.before_quotient = total;
    out.value = dim_aut_Y ? total - *dim_aut_Y : total;
    return out;
}

}  // namespace coverkit
