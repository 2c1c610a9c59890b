#pragma once

#include "coverkit/building_data.hpp"
#include "coverkit/chain_family.hpp"
#include "coverkit/deformations.hpp"
#include "coverkit/invariants.hpp"
#include "coverkit/resolution.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

namespace coverkit::io {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GenerationInput {
    NSClass hyperplane;
    std::int64_t N = 0;
    std::size_t distinguished = 0;   ///< 0-based
};

/// Everything a cover description file may carry besides the building data.
struct CoverConfig {
    CoverData cover;
    InvariantPartDims invariant_dims;
    std::optional<std::int64_t> dim_aut_Y;
    std::optional<GenerationInput> generation_check;
    EulerInputs euler;
};

namespace detail {

inline void require_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

inline std::int64_t as_int(const Json& v, const std::string& what)
{
    if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
    return v.get<std::int64_t>();
}

inline std::vector<std::int64_t> as_int_vector(const Json& v, const std::string& what)
{
    if (!v.is_array()) throw ConfigError(what + " must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& x : v) out.push_back(as_int(x, what));
    return out;
}

inline std::vector<std::vector<std::int64_t>> as_int_matrix(const Json& v, const std::string& what)
{
    if (!v.is_array()) throw ConfigError(what + " must be an array of arrays");
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& row : v) out.push_back(as_int_vector(row, what));
    return out;
}

inline std::vector<NSClass> as_classes(const Json& v, const std::string& what)
{
    std::vector<NSClass> out;
    for (auto& row : as_int_matrix(v, what)) out.emplace_back(std::move(row));
    return out;
}

inline std::vector<Pic0Marker> as_markers(const Json& v, const std::string& what)
{
    std::vector<Pic0Marker> out;
    for (auto& row : as_int_matrix(v, what)) out.push_back(Pic0Marker{std::move(row)});
    return out;
}

}  // namespace detail

inline NumericalBase preset_by_name(const std::string& name, std::optional<std::int64_t> genus = std::nullopt)
{
    if (name == "P2") return presets::projective_plane();
    if (name == "P1xP1") return presets::quadric_surface();
    if (name == "abelian_pp") return presets::principally_polarized_abelian_surface();
    if (name == "curve_product") return presets::curve_product(genus.value_or(2));
    if (name == "curve") {
        if (!genus) throw ConfigError("preset 'curve' needs a genus");
        return presets::curve(*genus);
    }
    throw ConfigError("unknown base preset '" + name + "' (P2, P1xP1, abelian_pp, curve_product, curve)");
}

inline NumericalBase parse_base(const Json& j)
{
    if (j.is_string()) return preset_by_name(j.get<std::string>());
    detail::require_keys(j, {"preset", "genus", "name", "dim", "form", "K", "q", "chi_O", "e", "ample_tests"}, "base");
    if (j.contains("preset")) {
        for (const auto& key : {"name", "dim", "form", "K", "q", "chi_O", "e", "ample_tests"})
            if (j.contains(key)) throw ConfigError(std::string("base: '") + key + "' cannot be combined with a preset");
        if (!j.at("preset").is_string()) throw ConfigError("base.preset must be a string");
        std::optional<std::int64_t> genus;
        if (j.contains("genus")) genus = detail::as_int(j.at("genus"), "base.genus");
        return preset_by_name(j.at("preset").get<std::string>(), genus);
    }
    for (const auto& key : {"dim", "form", "K", "q", "chi_O", "e", "ample_tests"})
        if (!j.contains(key)) throw ConfigError(std::string("inline base is missing '") + key + "'");
    NumericalBase b;
    b.name = j.contains("name") ? j.at("name").get<std::string>() : "inline";
    b.dim = static_cast<int>(detail::as_int(j.at("dim"), "base.dim"));
    auto rows = detail::as_int_matrix(j.at("form"), "base.form");
    std::vector<std::int64_t> flat;
    for (const auto& r : rows) {
        if (r.size() != rows.size()) throw ConfigError("base.form must be square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    b.form = IntMatrix(rows.size(), rows.size(), flat);
    b.canonical = NSClass(detail::as_int_vector(j.at("K"), "base.K"));
    b.irregularity = detail::as_int(j.at("q"), "base.q");
    b.chi_O = detail::as_int(j.at("chi_O"), "base.chi_O");
    b.euler_number = detail::as_int(j.at("e"), "base.e");
    b.ample_tests = detail::as_classes(j.at("ample_tests"), "base.ample_tests");
    return b;
}

/// Parses and validates a cover description; throws ConfigError or CoverError.
inline CoverConfig parse_cover(const Json& j)
{
    detail::require_keys(j,
                         {"schema", "group", "inertia", "base", "branch_classes", "reduced_classes", "markers",
                          "intersection_pattern", "invariant_dims", "dim_aut_Y", "generation_check", "euler"},
                         "cover description");
    if (!j.contains("schema")) throw ConfigError("missing 'schema'");
    if (detail::as_int(j.at("schema"), "schema") != schema_version)
        throw ConfigError("unsupported schema version (expected " + std::to_string(schema_version) + ")");
    for (const auto& key : {"group", "inertia", "base", "branch_classes"})
        if (!j.contains(key)) throw ConfigError(std::string("missing '") + key + "'");

    FinAbGroup group(detail::as_int_vector(j.at("group"), "group"));
    std::vector<InertiaDatum> inertia;
    for (auto& coords : detail::as_int_matrix(j.at("inertia"), "inertia")) {
        if (coords.size() != group.rank()) throw ConfigError("inertia generator has the wrong number of coordinates");
        for (std::size_t k = 0; k < coords.size(); ++k)
            if (coords[k] < 0 || coords[k] >= group.invariant_factors()[k])
                throw ConfigError("inertia coordinates must be reduced");
        inertia.push_back(make_inertia(group, group.element(coords)));
    }
    auto base = parse_base(j.at("base"));
    auto branch = detail::as_classes(j.at("branch_classes"), "branch_classes");
    std::vector<NSClass> reduced;
    if (j.contains("reduced_classes")) reduced = detail::as_classes(j.at("reduced_classes"), "reduced_classes");
    std::vector<Pic0Marker> bm, rm;
    if (j.contains("markers")) {
        const auto& m = j.at("markers");
        detail::require_keys(m, {"branch", "reduced"}, "markers");
        if (!m.contains("branch") || !m.contains("reduced")) throw ConfigError("markers need 'branch' and 'reduced'");
        bm = detail::as_markers(m.at("branch"), "markers.branch");
        rm = detail::as_markers(m.at("reduced"), "markers.reduced");
    }
    std::optional<std::vector<std::vector<std::size_t>>> pattern;
    if (j.contains("intersection_pattern")) {
        pattern.emplace();
        for (const auto& subset : detail::as_int_matrix(j.at("intersection_pattern"), "intersection_pattern")) {
            std::vector<std::size_t> s;
            for (auto i : subset) {
                if (i < 1 || static_cast<std::size_t>(i) > inertia.size())
                    throw ConfigError("intersection_pattern uses 1-based branch indices in range");
                s.push_back(static_cast<std::size_t>(i - 1));
            }
            pattern->push_back(std::move(s));
        }
    }

    CoverConfig cfg{make_cover(group, inertia, base, branch, reduced, bm, rm, pattern), {}, {}, {}, {}};

    if (j.contains("invariant_dims")) {
        const auto& d = j.at("invariant_dims");
        detail::require_keys(d, {"h1", "h2"}, "invariant_dims");
        if (d.contains("h1")) cfg.invariant_dims.h1 = detail::as_int(d.at("h1"), "invariant_dims.h1");
        if (d.contains("h2")) cfg.invariant_dims.h2 = detail::as_int(d.at("h2"), "invariant_dims.h2");
    }
    if (j.contains("dim_aut_Y")) cfg.dim_aut_Y = detail::as_int(j.at("dim_aut_Y"), "dim_aut_Y");
    if (j.contains("generation_check")) {
        const auto& t = j.at("generation_check");
        detail::require_keys(t, {"hyperplane", "N", "distinguished"}, "generation_check");
        for (const auto& key : {"hyperplane", "N", "distinguished"})
            if (!t.contains(key)) throw ConfigError(std::string("generation_check is missing '") + key + "'");
        auto d = detail::as_int(t.at("distinguished"), "generation_check.distinguished");
        if (d < 1 || static_cast<std::size_t>(d) > inertia.size()) throw ConfigError("generation_check.distinguished out of range");
        cfg.generation_check = GenerationInput{NSClass(detail::as_int_vector(t.at("hyperplane"), "generation_check.hyperplane")),
                                       detail::as_int(t.at("N"), "generation_check.N"), static_cast<std::size_t>(d - 1)};
    }
    if (j.contains("euler")) {
        const auto& e = j.at("euler");
        detail::require_keys(e, {"branch", "pairs"}, "euler");
        if (e.contains("branch")) {
            auto values = detail::as_int_vector(e.at("branch"), "euler.branch");
            if (values.size() != inertia.size()) throw ConfigError("euler.branch needs one entry per branch divisor");
            for (std::size_t i = 0; i < values.size(); ++i) cfg.euler.branch_euler[i] = values[i];
        }
        if (e.contains("pairs")) {
            for (const auto& row : detail::as_int_matrix(e.at("pairs"), "euler.pairs")) {
                if (row.size() != 3) throw ConfigError("euler.pairs entries are [i, j, count]");
                auto a = row[0], b = row[1];
                if (a < 1 || b < 1 || a == b || static_cast<std::size_t>(std::max(a, b)) > inertia.size())
                    throw ConfigError("euler.pairs uses distinct 1-based branch indices");
                cfg.euler.pair_points[{static_cast<std::size_t>(std::min(a, b) - 1), static_cast<std::size_t>(std::max(a, b) - 1)}] = row[2];
            }
        }
    }
    return cfg;
}

// ---- serialisation -------------------------------------------------------

inline Json rational_json(const Rational& r) { return to_string(r); }

template <typename Scalar>
Json class_json(const DivisorClass<Scalar>& c)
{
    Json out = Json::array();
    for (const auto& x : c.coords) {
        if constexpr (std::is_same_v<Scalar, Rational>) out.push_back(rational_json(x));
        else out.push_back(x);
    }
    return out;
}

inline Json optional_json(const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json("unknown"); }

inline Json base_json(const NumericalBase& b)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < b.ns_rank(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < b.ns_rank(); ++c) row.push_back(b.form(r, c));
        rows.push_back(row);
    }
    Json tests = Json::array();
    for (const auto& t : b.ample_tests) tests.push_back(class_json(t));
    return Json{{"name", b.name}, {"dim", b.dim},       {"form", rows}, {"K", class_json(b.canonical)},
                {"q", b.irregularity}, {"chi_O", b.chi_O}, {"e", b.euler_number}, {"ample_tests", tests}};
}

/// Same layout as the input schema, so the output parses back to the same cover.
inline Json cover_json(const CoverData& cd)
{
    Json inertia = Json::array();
    for (const auto& i : cd.inertia) inertia.push_back(i.generator.coords);
    Json branch = Json::array(), reduced = Json::array();
    for (const auto& c : cd.branch) branch.push_back(class_json(c));
    for (const auto& c : cd.reduced) reduced.push_back(class_json(c));
    Json pattern = Json::array();
    for (const auto& s : cd.intersection_pattern) {
        Json row = Json::array();
        for (auto i : s) row.push_back(i + 1);
        pattern.push_back(row);
    }
    Json out{{"schema", schema_version}, {"group", cd.group.invariant_factors()}, {"inertia", inertia}, {"base", base_json(cd.base)},
             {"branch_classes", branch}, {"reduced_classes", reduced}, {"intersection_pattern", pattern}};
    if (cd.has_markers()) {
        Json bm = Json::array(), rm = Json::array();
        for (const auto& m : cd.branch_markers) bm.push_back(m.coords);
        for (const auto& m : cd.reduced_markers) rm.push_back(m.coords);
        out["markers"] = Json{{"branch", bm}, {"reduced", rm}};
    }
    return out;
}

/// cover_json plus the optional inputs, so a whole description survives a round trip.
inline Json config_json(const CoverConfig& cfg)
{
    Json out = cover_json(cfg.cover);
    Json dims = Json::object();
    if (cfg.invariant_dims.h1) dims["h1"] = *cfg.invariant_dims.h1;
    if (cfg.invariant_dims.h2) dims["h2"] = *cfg.invariant_dims.h2;
    if (!dims.empty()) out["invariant_dims"] = dims;
    if (cfg.dim_aut_Y) out["dim_aut_Y"] = *cfg.dim_aut_Y;
    if (const auto& t = cfg.generation_check)
        out["generation_check"] = Json{{"hyperplane", class_json(t->hyperplane)}, {"N", t->N}, {"distinguished", t->distinguished + 1}};
    Json euler = Json::object();
    if (!cfg.euler.branch_euler.empty()) {
        Json values = Json::array();
        for (std::size_t i = 0; i < cfg.cover.inertia.size(); ++i) {
            auto it = cfg.euler.branch_euler.find(i);
            if (it == cfg.euler.branch_euler.end()) throw ConfigError("euler.branch must cover every branch divisor");
            values.push_back(it->second);
        }
        euler["branch"] = values;
    }
    if (!cfg.euler.pair_points.empty()) {
        Json pairs = Json::array();
        for (const auto& [ij, count] : cfg.euler.pair_points) pairs.push_back({ij.first + 1, ij.second + 1, count});
        euler["pairs"] = pairs;
    }
    if (!euler.empty()) out["euler"] = euler;
    return out;
}

inline Json smoothness_json(const SmoothnessReport& r)
{
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json subset = Json::array();
        for (auto i : e.subset) subset.push_back(i + 1);
        entries.push_back(Json{{"subset", subset},
                               {"product_of_orders", e.product_of_orders},
                               {"generated_order", e.generated_order},
                               {"injective", e.injective}});
    }
    return Json{{"entries", entries},
                {"all_injective", r.all_injective},
                {"max_simultaneous", r.max_simultaneous},
                {"caveat", r.caveat}};
}

inline Json invariants_json(const CoverInvariants& inv)
{
    Json out{{"KX_pullback_class", class_json(inv.canonical.pullback_class)},
             {"KX_class_times_order", class_json(inv.canonical.class_times_order)},
             {"KX_squared", inv.canonical.K_squared ? rational_json(*inv.canonical.K_squared) : Json("n/a")},
             {"general_type", inv.general_type}};
    if (inv.euler) {
        Json strata = Json::array();
        for (const auto& s : inv.euler->strata)
            strata.push_back(Json{{"stratum", s.label}, {"euler", rational_json(s.euler)}, {"preimages", s.preimage_count}});
        out["strata"] = strata;
        out["euler_number"] = rational_json(inv.euler->euler_number);
    }
    if (inv.chi_OX) out["chi_OX"] = rational_json(*inv.chi_OX);
    if (inv.chi_OX_eigensheaves) out["chi_OX_eigensheaves"] = rational_json(*inv.chi_OX_eigensheaves);
    if (inv.genus) out["genus"] = *inv.genus;
    return out;
}

inline Json prediction_json(const AutomorphismPrediction& p)
{
    Json active = Json::array();
    for (const auto& c : p.active_characters) active.push_back(c.exponents);
    return Json{{"order", p.order},
                {"invariant_factors", p.invariant_factors},
                {"group", describe_group(p.invariant_factors)},
                {"active_characters", active},
                {"note", p.note}};
}

inline Json deformation_json(const CoverData& cd, const DeformationReport& r)
{
    Json S = Json::array();
    for (const auto& e : r.S) S.push_back(Json{{"branch", e.i + 1}, {"character", e.chi.exponents}});
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json summands = Json::array();
        for (const auto& s : row.summands)
            summands.push_back(Json{{"branch", s.i + 1},
                                    {"class", class_json(s.cls)},
                                    {"marker", s.marker.coords},
                                    {"h0", optional_json(s.h0)},
                                    {"h1", optional_json(s.h1)}});
        rows.push_back(Json{{"character", row.chi.exponents},
                            {"eta", class_json(row.eta)},
                            {"eta_marker", row.eta_marker.coords},
                            {"T1", optional_json(row.tangent)},
                            {"T2_lower_bound", optional_json(row.obstruction_lower_bound)},
                            {"eta_ample", row.eta_ample},
                            {"summands", summands}});
    }
    Json weights = Json::array();
    for (const auto& w : cstar_weights(cd))
        weights.push_back(Json{{"branch", w.entry.i + 1}, {"character", w.entry.chi.exponents}, {"exponents", w.exponents}});
    Json out{{"S", S},
             {"rows", rows},
             {"invariant_part", Json{{"h1", optional_json(r.invariant_part.h1)}, {"h2", optional_json(r.invariant_part.h2)}}},
             {"fixed_base_parameter_count", optional_json(r.fixed_base_parameter_count)},
             {"natural_deformation_dim", optional_json(r.natural_deformation_dim)},
             {"completeness_verdict", r.completeness_verdict},
             {"assumptions", r.assumptions},
             {"unknowns", r.unknowns},
             {"cstar_weights", weights}};
    try {
        out["predicted_automorphisms"] = prediction_json(predict_generic_automorphisms(cd.group, r));
    } catch (const UnknownDimensionError& e) {
        out["predicted_automorphisms"] = Json{{"error", e.what()}};
    }
    return out;
}

inline Json moduli_json(const ModuliDimension& m)
{
    Json out{{"dimension", optional_json(m.value)}, {"before_quotient", optional_json(m.before_quotient)}};
    if (!m.reason.empty()) out["reason"] = m.reason;
    return out;
}

inline Json components_json(const ChainParams& p, const std::vector<ComponentClass>& cls)
{
    Json rows = Json::array();
    for (const auto& c : cls) {
        Json row{{"k", c.k},
                 {"locus", c.locus},
                 {"predicted", prediction_json(c.predicted)},
                 {"expected_factors", c.expected_factors}};
        if (c.fallback)
            row["fallback"] = Json{{"character", c.fallback->chi.exponents},
                                   {"N", c.fallback->N},
                                   {"zero_index_in_S", c.fallback->zero_index_in_S},
                                   {"marker", c.fallback->marker.coords},
                                   {"marker_zero", c.fallback->marker_zero},
                                   {"T1", optional_json(c.fallback->tangent)}};
        rows.push_back(row);
    }
    return Json{{"chain", p.chain()}, {"components", rows}};
}

inline Json group_bound_json(const GroupBoundReport& r)
{
    return Json{{"n", r.n},
                {"predicted_order", r.predicted_order},
                {"predicted_group", describe_group(r.predicted_factors)},
                {"K2_printed", rational_json(r.K2_printed)},
                {"K2_pullback", rational_json(r.K2_pullback)},
                {"K2_quoted", rational_json(r.K2_quoted)},
                {"bound_printed", r.bound_printed},
                {"bound_pullback", r.bound_pullback},
                {"bound_quoted", r.bound_quoted}};
}

inline Json trace_json(const resolution::BlowupTrace& t)
{
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        Json center = Json::array();
        for (auto c : s.center) center.push_back(resolution::coord_names[c]);
        Json ledger = Json::array();
        for (const auto& l : s.ledger) ledger.push_back(Json{{"divisor", l.divisor}, {"coefficient", l.coefficient}});
        steps.push_back(Json{{"divisor", s.divisor},
                             {"center", center},
                             {"chart", resolution::coord_names[s.chart]},
                             {"equation", resolution::equation_text(s.equation)},
                             {"multiplicity", s.multiplicity},
                             {"ledger", ledger},
                             {"ledger_text", resolution::ledger_text(s.ledger)},
                             {"r", s.verdict.r},
                             {"value", rational_json(s.verdict.value)},
                             {"kind", resolution::verdict_text(s.verdict.kind)},
                             {"negative", s.verdict.negative}});
    }
    return Json{{"n", t.n},
                {"case", resolution::case_name(t.local_case)},
                {"start", resolution::equation_text(t.start)},
                {"steps", steps}};
}

}  // namespace coverkit::io
