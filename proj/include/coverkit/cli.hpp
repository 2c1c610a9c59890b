#pragma once

#include "coverkit/emitter.hpp"
#include "coverkit/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace coverkit::cli {

/// 1 also covers runtime failures such as exceeded enumeration bounds.
enum ExitCode : int { ok = 0, usage = 1, invalid = 2, unknown_result = 3 };

using io::Json;

namespace detail {

inline std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    auto line = [](const std::vector<std::string>& cells) {
        std::string out = "|";
        for (const auto& c : cells) out += " " + c + " |";
        return out + "\n";
    };
    std::string out = line(header);
    out += "|";
    for (std::size_t k = 0; k < header.size(); ++k) out += "---|";
    out += "\n";
    for (const auto& r : rows) out += line(r);
    return out;
}

inline std::string cell(const Json& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline std::string opt(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "unknown"; }

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::vector<std::int64_t> parse_list(const std::string& text, const std::string& what)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw io::ConfigError(what + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw io::ConfigError(what + " is empty");
    return out;
}

struct Options {
    std::string format = "markdown";
    bool strict = false;
    std::string input;
    std::string inline_json;
};

inline Json load_json(const Options& o)
{
    std::string text;
    if (!o.inline_json.empty()) {
        text = o.inline_json;
    } else if (o.input.empty()) {
        throw io::ConfigError("a cover description is required (file path or --json)");
    } else if (o.input == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(o.input);
        if (!f) throw io::ConfigError("cannot read '" + o.input + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw io::ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

inline void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// ---- subcommand bodies --------------------------------------------------

inline int run_group(const std::vector<std::int64_t>& factors, bool with_aut, const Options& o, std::ostream& out)
{
    FinAbGroup g(factors);
    auto I = enumerate_IG(g);
    Json rows = Json::array();
    for (const auto& d : I) {
        std::vector<std::int64_t> r;
        for (std::size_t j = 0; j < g.rank(); ++j) r.push_back(r_coeff(g, d, g.dual_basis_character(j)));
        rows.push_back(Json{{"generator", d.generator.coords}, {"order", d.order}, {"r", r}});
    }
    Json j{{"group", describe_group(factors)}, {"order", g.order()}, {"exponent", g.exponent()}, {"I_G_size", I.size()},
           {"I_G", rows}};
    if (with_aut) j["aut_order"] = aut_I(g, I).size();
    if (o.format == "json") {
        emit_json(out, j);
        return ok;
    }
    out << "# Group " << describe_group(factors) << "\n\n";
    out << "order " << g.order() << ", exponent " << g.exponent() << ", #I_G = " << I.size() << "\n\n";
    std::vector<std::vector<std::string>> table_rows;
    for (std::size_t k = 0; k < I.size(); ++k)
        table_rows.push_back({std::to_string(k + 1), to_string(I[k].generator.coords), std::to_string(I[k].order),
                              cell(rows[k]["r"])});
    out << table({"#", "generator", "order m", "r (dual basis)"}, table_rows);
    if (with_aut) out << "\n#Aut(G) = " << j["aut_order"].get<std::size_t>() << "\n";
    return ok;
}

inline int run_check(const io::CoverConfig& cfg, const Options& o, std::ostream& out)
{
    const auto& cd = cfg.cover;
    auto relations = check_fundamental_relations(cd);
    auto smooth = smoothness_audit(cd);
    auto solved = solve_reduced(cd.group, cd.inertia, cd.base, cd.branch);
    Json j{{"cover", io::config_json(cfg)},
           {"valid", true},
           {"fundamental_relations", relations ? Json("violated") : Json("hold")},
           {"smoothness", io::smoothness_json(smooth)},
           {"rank_check", rank_check(cd.group, cd.inertia)}};
    if (auto* sol = std::get_if<ReducedSolution>(&solved)) j["torsion_candidates"] = sol->torsion_candidates.str();
    if (cfg.generation_check) {
        auto t = generation_hypotheses(cd, cfg.generation_check->hyperplane, cfg.generation_check->N, cfg.generation_check->distinguished);
        j["generation_check"] = Json{{"M", io::class_json(t.M)},
                              {"M_sufficiently_ample", t.M_sufficiently_ample},
                              {"residual_system", io::class_json(t.residual_system)},
                              {"residual_nef", t.residual_nef},
                              {"plausible", t.plausible},
                              {"caveat", t.caveat}};
    }
    const bool pass = !relations && smooth.all_injective;
    j["audit_passed"] = pass;
    if (o.format == "json") {
        emit_json(out, j);
    } else {
        out << "# Cover check\n\n";
        out << "group " << describe_group(cd.group.invariant_factors()) << ", base " << cd.base.name << ", #I = "
            << cd.inertia.size() << "\n\n";
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < cd.inertia.size(); ++i)
            rows.push_back({std::to_string(i + 1), to_string(cd.inertia[i].generator.coords),
                            std::to_string(cd.inertia[i].order), to_string(cd.branch[i].coords)});
        out << table({"i", "generator", "m", "branch class"}, rows) << "\n";
        rows.clear();
        for (std::size_t k = 0; k < cd.reduced.size(); ++k) rows.push_back({std::to_string(k + 1), to_string(cd.reduced[k].coords)});
        out << table({"j", "reduced class"}, rows) << "\n";
        out << "fundamental relations: " << cell(j["fundamental_relations"]) << "\n";
        out << "rank check: " << yes_no(j["rank_check"].get<bool>()) << "\n";
        if (j.contains("torsion_candidates")) out << "torsion candidates: " << cell(j["torsion_candidates"]) << "\n";
        out << "\n## Smoothness audit\n\n";
        rows.clear();
        for (const auto& e : smooth.entries) {
            std::string subset;
            for (auto i : e.subset) subset += (subset.empty() ? "" : ",") + std::to_string(i + 1);
            rows.push_back({"{" + subset + "}", std::to_string(e.product_of_orders), std::to_string(e.generated_order),
                            yes_no(e.injective)});
        }
        out << table({"subset", "product of m", "generated", "injective"}, rows);
        out << "\nmax simultaneous: " << smooth.max_simultaneous << "\n" << smooth.caveat << "\n";
        if (j.contains("generation_check")) {
            const auto& t = j["generation_check"];
            out << "\n## Global generation hypotheses\n\nM = " << cell(t["M"]) << " (sufficiently ample: "
                << yes_no(t["M_sufficiently_ample"].get<bool>()) << ")\nresidual system " << cell(t["residual_system"])
                << " (nef: " << yes_no(t["residual_nef"].get<bool>()) << ")\nplausible: " << yes_no(t["plausible"].get<bool>())
                << "\n" << cell(t["caveat"]) << "\n";
        }
        out << "\naudit: " << (pass ? "passed" : "FAILED") << "\n";
    }
    return pass ? ok : invalid;
}

inline int run_invariants(const io::CoverConfig& cfg, const Options& o, std::ostream& out)
{
    auto inv = cover_invariants(cfg.cover, cfg.euler);
    auto j = io::invariants_json(inv);
    const bool unknown = cfg.cover.base.is_surface() && !inv.chi_OX;
    if (o.format == "json") {
        emit_json(out, j);
    } else {
        out << "# Invariants\n\n";
        out << "K_X pullback class: " << cell(j["KX_pullback_class"]) << "\n";
        out << "#G * class: " << cell(j["KX_class_times_order"]) << "\n";
        out << "K_X^2: " << cell(j["KX_squared"]) << "\n";
        out << "general type (K_X ample): " << yes_no(inv.general_type) << "\n";
        if (inv.euler) {
            out << "\n## Euler stratification\n\n";
            std::vector<std::vector<std::string>> rows;
            for (const auto& s : inv.euler->strata)
                rows.push_back({s.label, to_string(s.euler), std::to_string(s.preimage_count)});
            out << table({"stratum", "e", "points above"}, rows);
            out << "\ne(X) = " << to_string(inv.euler->euler_number) << "\n";
        }
        if (inv.chi_OX) out << "chi(O_X) = " << to_string(*inv.chi_OX) << " (Noether)\n";
        if (inv.chi_OX_eigensheaves) out << "chi(O_X) = " << to_string(*inv.chi_OX_eigensheaves) << " (eigensheaf sum)\n";
        if (inv.genus) out << "genus of X: " << *inv.genus << "\n";
        if (unknown) out << "e(X) and chi(O_X): unknown (triple points in the intersection pattern)\n";
    }
    return unknown && o.strict ? unknown_result : ok;
}

inline int run_deformations(const io::CoverConfig& cfg, const Options& o, std::ostream& out)
{
    const auto& cd = cfg.cover;
    auto report = tangent_table(cd, cfg.invariant_dims);
    auto j = io::deformation_json(cd, report);
    j["moduli"] = io::moduli_json(moduli_dimension(cd, cfg.dim_aut_Y));
    bool unknown = false;
    for (const auto& row : report.rows)
        if (!row.chi.is_trivial() && !row.tangent) unknown = true;
    if (o.format == "json") {
        emit_json(out, j);
    } else {
        out << "# Natural deformations\n\n";
        std::vector<std::string> header{"character"};
        for (std::size_t i = 0; i < cd.inertia.size(); ++i) header.push_back("i=" + std::to_string(i + 1));
        header.insert(header.end(), {"T1", "T2 >=", "eta ample"});
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : report.rows) {
            std::vector<std::string> r{to_string(row.chi.exponents)};
            for (std::size_t i = 0; i < cd.inertia.size(); ++i) {
                auto it = std::find_if(row.summands.begin(), row.summands.end(), [&](const auto& s) { return s.i == i; });
                r.push_back(it == row.summands.end() ? "-" : opt(it->h0));
            }
            r.push_back(opt(row.tangent));
            r.push_back(opt(row.obstruction_lower_bound));
            r.push_back(row.chi.is_trivial() ? "" : yes_no(row.eta_ample));
            rows.push_back(std::move(r));
        }
        out << table(header, rows);
        out << "\n'-' marks (i, chi) outside S; entries are h0(xi_i - eta_chi).\n\n";
        out << "#S = " << report.S.size() << "\n";
        out << "fixed-base parameter count: " << opt(report.fixed_base_parameter_count) << "\n";
        out << "natural deformation dimension: " << opt(report.natural_deformation_dim) << "\n";
        out << "completeness verdict: " << yes_no(report.completeness_verdict) << "\n";
        for (const auto& a : report.assumptions) out << "- assumption: " << a << "\n";
        for (const auto& u : report.unknowns) out << "- unknown: " << u << "\n";
        const auto& p = j["predicted_automorphisms"];
        if (p.contains("error")) out << "\npredicted automorphisms: " << cell(p["error"]) << "\n";
        else out << "\npredicted automorphisms: " << cell(p["group"]) << " (order " << p["order"].get<std::int64_t>() << ")\n"
                 << cell(p["note"]) << "\n";
        out << "\n## C* weights\n\n";
        rows.clear();
        for (const auto& w : cstar_weights(cd))
            rows.push_back({std::to_string(w.entry.i + 1), to_string(w.entry.chi.exponents), to_string(w.exponents)});
        out << table({"i", "character", "exponents"}, rows);
        out << "\nmoduli dimension: " << cell(j["moduli"]["dimension"]) << "\n";
    }
    return unknown && o.strict ? unknown_result : ok;
}

inline int run_moduli(const io::CoverConfig& cfg, const Options& o, std::ostream& out)
{
    auto m = moduli_dimension(cfg.cover, cfg.dim_aut_Y);
    if (o.format == "json") emit_json(out, io::moduli_json(m));
    else {
        out << "moduli dimension: " << opt(m.value) << "\n";
        if (cfg.dim_aut_Y) out << "before the Aut(Y) quotient: " << opt(m.before_quotient) << "\n";
        if (!m.reason.empty()) out << "reason: " << m.reason << "\n";
    }
    return !m.value && o.strict ? unknown_result : ok;
}

inline int run_emit(const io::CoverConfig& cfg, const std::string& flavor, bool galois, const Options& o, std::ostream& out)
{
    auto text = emit(cfg.cover, parse_flavor(flavor), galois);
    if (o.format == "json") emit_json(out, Json{{"flavor", flavor}, {"galois", galois}, {"text", text}});
    else out << text;
    return ok;
}

inline int run_chain_family(const std::vector<std::int64_t>& d, const std::string& base_name,
                              const std::vector<std::int64_t>& xi, std::optional<std::int64_t> genus, const Options& o,
                              std::ostream& out)
{
    ChainParams p(d);
    auto base = io::preset_by_name(base_name, genus);
    auto cls = classify_components(p, base, NSClass(xi));
    auto j = io::components_json(p, cls);
    auto chern = chain_family_chern_displayed(d, base, NSClass(xi));
    auto cd = build_chain_cover(p, base, NSClass(xi));
    auto inv = cover_invariants(cd);
    j["chern"] = Json{{"K2_printed", io::rational_json(chern.K_squared)},
                      {"c2_printed", io::rational_json(chern.c2)},
                      {"K2_pullback", inv.canonical.K_squared ? io::rational_json(*inv.canonical.K_squared) : Json("n/a")},
                      {"c2_stratified", inv.euler ? io::rational_json(inv.euler->euler_number) : Json("n/a")}};
    if (o.format == "json") {
        emit_json(out, j);
        return ok;
    }
    out << "# Chain family d = " << to_string(d) << " over " << base.name << ", xi = " << to_string(xi) << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : cls)
        rows.push_back({std::to_string(c.k), c.locus, describe_group(c.predicted.invariant_factors),
                        std::to_string(c.predicted.order), describe_group(c.expected_factors)});
    out << table({"k", "marker locus", "predicted group", "order", "Z_d1 x .. x Z_dk"}, rows);
    for (const auto& c : cls)
        if (c.fallback)
            out << "\nk = " << c.k << " fallback character " << to_string(c.fallback->chi.exponents) << ": N = " << c.fallback->N
                << ", (0, chi) in S: " << yes_no(c.fallback->zero_index_in_S) << ", marker of M_0 - L_chi "
                << to_string(c.fallback->marker.coords) << (c.fallback->marker_zero ? " (zero)" : " (nonzero)") << ", T1 = "
                << opt(c.fallback->tangent) << "\n";
    out << "\n## Chern numbers\n\n";
    out << table({"quantity", "displayed formula", "pullback / stratification"},
                 {{"K^2", cell(j["chern"]["K2_printed"]), cell(j["chern"]["K2_pullback"])},
                  {"c_2", cell(j["chern"]["c2_printed"]), cell(j["chern"]["c2_stratified"])}});
    return ok;
}

inline int run_group_bound(std::int64_t n, const Options& o, std::ostream& out)
{
    auto r = group_bound_report(n);
    if (o.format == "json") {
        emit_json(out, io::group_bound_json(r));
        return ok;
    }
    out << "# d = (" << n << "," << n << ") over the principally polarized abelian surface, xi = 2 Theta\n\n";
    out << "predicted generic automorphism group: " << describe_group(r.predicted_factors) << " (order " << r.predicted_order
        << ")\n\n";
    out << table({"K^2 variant", "value", "order > K^2/16"},
                 {{"displayed family formula", to_string(r.K2_printed), yes_no(r.bound_printed)},
                  {"pullback formula", to_string(r.K2_pullback), yes_no(r.bound_pullback)},
                  {"quoted 16(n-1)^2", to_string(r.K2_quoted), yes_no(r.bound_quoted)}});
    out << "\nThe variants disagree; they are reported side by side without choosing one.\n";
    return ok;
}

inline int run_resolve(std::int64_t n, const std::string& which, const Options& o, std::ostream& out)
{
    if (n < 2) throw io::ConfigError("--n must be >= 2");
    resolution::Case c;
    if (which == "h-unit") c = resolution::Case::HUnit;
    else if (which == "h-vanishing") c = resolution::Case::HVanishing;
    else throw io::ConfigError("--case must be h-unit or h-vanishing");
    auto t = resolution::trace(n, c);
    auto failure = resolution::audit_trace(t);
    auto j = io::trace_json(t);
    j["audit"] = failure ? Json(failure->message) : Json("passed");
    if (o.format == "json") {
        emit_json(out, j);
    } else {
        out << "# Blow-up trace, n = " << n << ", " << resolution::case_name(c) << "\n\n";
        out << "start: z^" << n << " = " << resolution::equation_text(t.start) << "\n\n";
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < t.steps.size(); ++k) {
            const auto& s = t.steps[k];
            rows.push_back({std::to_string(k + 1), s.divisor, resolution::center_text(s.center),
                            resolution::coord_names[s.chart], "z^" + std::to_string(n) + " = " + resolution::equation_text(s.equation),
                            resolution::ledger_text(s.ledger), std::to_string(s.verdict.r), to_string(s.verdict.value),
                            resolution::verdict_text(s.verdict.kind)});
        }
        out << table({"step", "divisor", "center", "chart", "equation", "total transform", "r", "K value", "kind"}, rows);
        out << "\naudit: " << (failure ? failure->message : "passed") << "\n";
    }
    return failure ? invalid : ok;
}

}  // namespace detail

/// Runs the command line; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"coverkit: exact invariants, deformations and equations of totally ramified abelian covers"};
    app.require_subcommand(1);
    detail::Options o;
    if (const char* env = std::getenv("COVERKIT_STRICT"); env && std::string(env) == "1") o.strict = true;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "markdown or json")->check(CLI::IsMember({"markdown", "json"}));
        sub->add_flag("--strict", o.strict, "exit 3 when a result is unknown");
    };
    auto cover_input = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "cover description (JSON file, '-' for stdin)");
        sub->add_option("--json", o.inline_json, "inline cover description");
    };

    std::string factors_text;
    bool with_aut = false;
    auto* group = app.add_subcommand("group", "I_G table of a finite abelian group");
    group->add_option("--factors", factors_text, "invariant factors, e.g. 2,2")->required();
    group->add_flag("--aut", with_aut, "also count automorphisms");
    common(group);

    auto* cover = app.add_subcommand("cover", "operations on a cover description");
    cover->require_subcommand(1);
    auto* check = cover->add_subcommand("check", "validate building data and audit smoothness");
    auto* invariants = cover->add_subcommand("invariants", "K^2, Euler number, chi(O_X)");
    auto* deformations = cover->add_subcommand("deformations", "tangent tables, predictor, C* weights");
    auto* emit_cmd = cover->add_subcommand("emit", "defining relations as polynomial text");
    std::string flavor = "plain";
    bool galois = false;
    emit_cmd->add_option("--flavor", flavor, "plain, singular or m2")->check(CLI::IsMember({"plain", "singular", "m2", "macaulay2"}));
    emit_cmd->add_flag("--galois", galois, "set s_{i,chi} = 0 for chi != 1");
    for (auto* sub : {check, invariants, deformations, emit_cmd}) {
        common(sub);
        cover_input(sub);
    }

    std::string d_text, base_name = "abelian_pp", xi_text = "2";
    std::optional<std::int64_t> genus;
    auto* c62 = app.add_subcommand("construction62", "component classification of the chain family");
    c62->add_option("--d", d_text, "chain d_1,..,d_s")->required();
    c62->add_option("--base", base_name, "base preset");
    c62->add_option("--xi", xi_text, "branch class coordinates");
    c62->add_option("--genus", genus, "genus for curve_product");
    common(c62);

    std::int64_t n = 2;
    auto* p66 = app.add_subcommand("prop66", "group order against K^2 for d = (n, n)");
    p66->add_option("--n", n, "n >= 2")->required();
    common(p66);

    std::string which = "h-unit";
    auto* resolve = app.add_subcommand("resolve", "blow-up trace of z^n = f^n h + t g");
    resolve->add_option("--n", n, "branching order")->required();
    resolve->add_option("--case", which, "h-unit or h-vanishing");
    common(resolve);

    auto* moduli = app.add_subcommand("moduli-dim", "dimension of the family of covers");
    common(moduli);
    cover_input(moduli);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage;
    }

    try {
        if (group->parsed()) return detail::run_group(detail::parse_list(factors_text, "--factors"), with_aut, o, out);
        if (c62->parsed())
            return detail::run_chain_family(detail::parse_list(d_text, "--d"), base_name, detail::parse_list(xi_text, "--xi"),
                                              genus, o, out);
        if (p66->parsed()) return detail::run_group_bound(n, o, out);
        if (resolve->parsed()) return detail::run_resolve(n, which, o, out);
        auto cfg = io::parse_cover(detail::load_json(o));
        if (check->parsed()) return detail::run_check(cfg, o, out);
        if (invariants->parsed()) return detail::run_invariants(cfg, o, out);
        if (deformations->parsed()) return detail::run_deformations(cfg, o, out);
        if (emit_cmd->parsed()) return detail::run_emit(cfg, flavor, galois, o, out);
        if (moduli->parsed()) return detail::run_moduli(cfg, o, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return invalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    err << "error: no command\n";
    return usage;
}

}  // namespace coverkit::cli
