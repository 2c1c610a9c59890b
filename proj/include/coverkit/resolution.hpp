#pragma once

#include "coverkit/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coverkit::resolution {

/// Local coordinates of the total space: t on the disc, then f, g, h on the fibre.
enum Coord : std::size_t { T = 0, F = 1, G = 2, H = 3 };
inline constexpr std::array<const char*, 4> coord_names{"t", "f", "g", "h"};

using Exponents = std::array<std::int64_t, 4>;

/// prefactor * (sum of residual monomials), all coefficients 1.
struct LocalEquation {
    Exponents prefactor{};
    std::vector<Exponents> residual;

    bool operator==(const LocalEquation&) const = default;
};

inline std::string monomial_text(const Exponents& e)
{
    std::string out;
    for (std::size_t c = 0; c < 4; ++c) {
        if (e[c] == 0) continue;
        if (!out.empty()) out += "*";
        out += coord_names[c];
        if (e[c] > 1) out += "^" + std::to_string(e[c]);
    }
    return out.empty() ? "1" : out;
}

inline std::string equation_text(const LocalEquation& eq)
{
    std::string out = monomial_text(eq.prefactor);
    out = out == "1" ? "" : out + "*";
    std::string sum;
    for (const auto& m : eq.residual) sum += (sum.empty() ? "" : " + ") + monomial_text(m);
    return out + "(" + sum + ")";
}

class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Multiplicity of the exceptional divisor of the blow-up along {x = 0 : x in center}.
inline std::int64_t center_order(const LocalEquation& eq, const std::vector<Coord>& center)
{
    std::int64_t pre = 0;
    for (auto c : center) pre += eq.prefactor[c];
    std::optional<std::int64_t> low;
    for (const auto& m : eq.residual) {
        std::int64_t v = 0;
        for (auto c : center) v += m[c];
        low = low ? std::min(*low, v) : v;
    }
    return pre + low.value_or(0);
}

/// Blow up along the center and pass to the chart where `chart` generates the exceptional ideal.
inline LocalEquation blow_up(const LocalEquation& eq, const std::vector<Coord>& center, Coord chart)
{
    if (std::find(center.begin(), center.end(), chart) == center.end())
        throw ResolutionError("chart coordinate must lie in the center");
    auto substitute = [&](Exponents e) {
        std::int64_t extra = 0;
        for (auto c : center)
            if (c != chart) extra += e[c];
        e[chart] += extra;
        return e;
    };
    LocalEquation out;
    out.prefactor = substitute(eq.prefactor);
    for (const auto& m : eq.residual) out.residual.push_back(substitute(m));
    std::int64_t common = out.residual.empty() ? 0 : out.residual.front()[chart];
    for (const auto& m : out.residual) common = std::min(common, m[chart]);
    out.prefactor[chart] += common;
    for (auto& m : out.residual) m[chart] -= common;
    return out;
}

enum class Case { HUnit, HVanishing };

inline std::string case_name(Case c) { return c == Case::HUnit ? "h-unit" : "h-vanishing"; }

/// Coefficient of K on the generic fibre of the cover of an exceptional divisor, as a multiple
/// of the fibre's hyperplane (line) class. The even branch covers a conic and a line.
inline Rational conic_line_value(std::int64_t r)
{
    if (r < 1) throw ResolutionError("inertia order must be >= 1");
    if (r % 2 == 0) return Rational(-3) + 2 * make_rational(r - 1, r) + make_rational(r / 2 - 1, r / 2);
    return Rational(-3) + 3 * make_rational(r - 1, r);
}

enum class VerdictKind {
    ConicAndLine,       ///< P^2 bundle, cover branched on a conic and a line
    TotallyRamified,    ///< cover of the P^2 bundle is again a P^2 bundle
    Splits,             ///< opposite characters on the same divisor: the cover splits into copies
    RationalFibres      ///< P^1 fibres covered by P^1 (two branch points, opposite characters)
};

inline std::string verdict_text(VerdictKind k)
{
    switch (k) {
    case VerdictKind::ConicAndLine: return "conic+line";
    case VerdictKind::TotallyRamified: return "totally ramified";
    case VerdictKind::Splits: return "splits (negative by construction)";
    case VerdictKind::RationalFibres: return "rational (negative by construction)";
    }
    return "";
}

struct Verdict {
    std::int64_t r = 1;       ///< order of the residual inertia on the new divisor
    Rational value;
    VerdictKind kind = VerdictKind::ConicAndLine;
    bool negative = false;
};

struct LedgerTerm {
    std::string divisor;
    std::int64_t coefficient = 0;

    bool operator==(const LedgerTerm&) const = default;
};

struct BlowupStep {
    std::string divisor;              ///< name of the new exceptional divisor
    std::vector<Coord> center;
    Coord chart = F;
    LocalEquation equation;           ///< after the blow-up, in the chart
    std::int64_t multiplicity = 0;    ///< coefficient of the new divisor in the total transform
    bool charts_agree = true;         ///< multiplicity computed in every chart of the center coincides
    std::vector<LedgerTerm> ledger;   ///< total transform D + sum c E after this step
    Verdict verdict;
};

struct BlowupTrace {
    std::int64_t n = 0;
    Case local_case = Case::HUnit;
    LocalEquation start;
    std::vector<BlowupStep> steps;
};

inline std::string center_text(const std::vector<Coord>& center)
{
    std::string out = "{";
    for (std::size_t k = 0; k < center.size(); ++k) out += (k ? "," : "") + std::string(coord_names[center[k]]);
    return out + "}";
}

inline std::string ledger_text(const std::vector<LedgerTerm>& ledger)
{
    std::string out = "D";
    for (const auto& t : ledger) out += " + " + std::to_string(t.coefficient) + t.divisor;
    return out;
}

namespace detail {

inline BlowupStep perform(BlowupTrace& trace, const LocalEquation& current, std::string name, std::vector<Coord> center,
                          Coord chart, Verdict verdict)
{
    BlowupStep step;
    step.divisor = std::move(name);
    step.center = center;
    step.chart = chart;
    step.multiplicity = center_order(current, center);
    for (auto c : center) {
        auto eq = blow_up(current, center, c);
        if (eq.prefactor[c] != step.multiplicity) step.charts_agree = false;
    }
    step.equation = blow_up(current, center, chart);
    step.ledger = trace.steps.empty() ? std::vector<LedgerTerm>{} : trace.steps.back().ledger;
    step.ledger.push_back({step.divisor, step.multiplicity});
    step.verdict = std::move(verdict);
    step.verdict.negative = step.verdict.value < 0;
    return step;
}

inline Verdict conic_line_verdict(std::int64_t n, std::int64_t k)
{
    Verdict v;
    v.r = std::gcd(2 * k, n);
    v.value = conic_line_value(v.r);
    v.kind = v.r == 1 ? VerdictKind::TotallyRamified : VerdictKind::ConicAndLine;
    return v;
}

inline LocalEquation initial_equation(std::int64_t n, Case c)
{
    LocalEquation eq;
    Exponents power{};
    power[F] = n;
    if (c == Case::HVanishing) power[H] = 1;
    Exponents tg{};
    tg[T] = 1;
    tg[G] = 1;
    eq.residual = {power, tg};
    return eq;
}

inline void standard_steps(BlowupTrace& trace, LocalEquation& eq, std::int64_t count)
{
    for (std::int64_t k = 1; k <= count; ++k) {
        trace.steps.push_back(perform(trace, eq, "E" + std::to_string(k), {T, F, G}, F, conic_line_verdict(trace.n, k)));
        eq = trace.steps.back().equation;
    }
}

inline void conic_and_F_steps(BlowupTrace& trace, LocalEquation& eq)
{
    const auto n = trace.n;
    Verdict split;
    split.r = n;
    split.value = -2;
    split.kind = VerdictKind::Splits;
    trace.steps.push_back(perform(trace, eq, "E" + std::to_string((n + 1) / 2), {T, F, G}, G, split));
    eq = trace.steps.back().equation;

    Verdict rational;
    rational.r = n;
    rational.value = -2;
    rational.kind = VerdictKind::RationalFibres;
    trace.steps.push_back(perform(trace, eq, "F", {F, G}, G, rational));
    eq = trace.steps.back().equation;
}

}  // namespace detail

/// Even n: n/2 blow-ups of {t = f = g = 0}, each read in the f chart.
inline BlowupTrace trace_even(std::int64_t n, Case c = Case::HUnit)
{
    if (n < 2 || n % 2 != 0) throw ResolutionError("trace_even needs an even n >= 2");
    BlowupTrace trace{n, c, detail::initial_equation(n, c), {}};
    auto eq = trace.start;
    detail::standard_steps(trace, eq, n / 2);
    return trace;
}

/// Odd n: (n-1)/2 standard steps, [the singular-locus step when h vanishes,] the conic step, then F.
inline BlowupTrace trace_odd(std::int64_t n, Case c)
{
    if (n < 3 || n % 2 == 0) throw ResolutionError("trace_odd needs an odd n >= 3");
    BlowupTrace trace{n, c, detail::initial_equation(n, c), {}};
    auto eq = trace.start;
    detail::standard_steps(trace, eq, (n - 1) / 2);
    if (c == Case::HVanishing) {
        Verdict v;
        v.r = std::gcd(n + 1, n);
        v.value = conic_line_value(v.r);
        v.kind = VerdictKind::TotallyRamified;
        trace.steps.push_back(detail::perform(trace, eq, "Ebar", {F, H, T, G}, H, v));
        eq = trace.steps.back().equation;
    }
    detail::conic_and_F_steps(trace, eq);
    return trace;
}

inline BlowupTrace trace(std::int64_t n, Case c)
{
    return n % 2 == 0 ? trace_even(n, c) : trace_odd(n, c);
}

/// Closed-form coefficient sequences: 2, 4, ..., n (even); 2, ..., n-1, [n+1,] n, 2n (odd).
inline std::vector<std::int64_t> expected_ledger(std::int64_t n, Case c)
{
    std::vector<std::int64_t> out;
    if (n % 2 == 0) {
        for (std::int64_t k = 1; k <= n / 2; ++k) out.push_back(2 * k);
        return out;
    }
    for (std::int64_t k = 1; k <= (n - 1) / 2; ++k) out.push_back(2 * k);
    if (c == Case::HVanishing) out.push_back(n + 1);
    out.push_back(n);
    out.push_back(2 * n);
    return out;
}

struct TraceFailure {
    std::int64_t n = 0;
    Case local_case = Case::HUnit;
    std::size_t step = 0;   ///< 1-based; 0 for whole-trace problems
    std::string message;
};

inline std::optional<TraceFailure> audit_trace(const BlowupTrace& t)
{
    const auto expected = expected_ledger(t.n, t.local_case);
    if (t.steps.size() != expected.size())
        return TraceFailure{t.n, t.local_case, 0,
                            "expected " + std::to_string(expected.size()) + " steps, found " + std::to_string(t.steps.size())};
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        const auto& s = t.steps[k];
        auto fail = [&](const std::string& msg) { return TraceFailure{t.n, t.local_case, k + 1, msg}; };
        if (!s.charts_agree) return fail("multiplicity differs between charts");
        if (s.ledger.size() != k + 1) return fail("ledger length mismatch");
        for (std::size_t l = 0; l <= k; ++l)
            if (s.ledger[l].coefficient != expected[l])
                return fail("ledger coefficient of " + s.ledger[l].divisor + " is " + std::to_string(s.ledger[l].coefficient) +
                            ", expected " + std::to_string(expected[l]));
        if (s.multiplicity != expected[k]) return fail("multiplicity mismatch");
        if (s.equation.prefactor[s.chart] != s.multiplicity) return fail("equation exponent disagrees with the ledger");
        if (!(s.verdict.value < 0) || !s.verdict.negative) return fail("negativity value is not negative");
    }
    return std::nullopt;
}

struct VerifySummary {
    std::int64_t orders_checked = 0;
    std::int64_t traces = 0;
    std::int64_t divisors = 0;
};

/// Runs every trace for 2 <= n <= n_max; `tamper` lets tests corrupt a trace before auditing.
inline VerifySummary verify_all(std::int64_t n_max, const std::function<void(BlowupTrace&)>& tamper = {})
{
    if (n_max < 2) throw ResolutionError("n_max must be >= 2");
    VerifySummary summary;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        for (auto c : {Case::HUnit, Case::HVanishing}) {
            auto t = trace(n, c);
            if (tamper) tamper(t);
            if (auto failure = audit_trace(t))
                throw ResolutionError("n = " + std::to_string(failure->n) + " (" + case_name(failure->local_case) +
                                      "), step " + std::to_string(failure->step) + ": " + failure->message);
            ++summary.traces;
            summary.divisors += static_cast<std::int64_t>(t.steps.size());
        }
        ++summary.orders_checked;
    }
    return summary;
}

}  // namespace coverkit::resolution
