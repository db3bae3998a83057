#pragma once

#include "halo/collapse.hpp"
#include "halo/complex.hpp"
#include "halo/rational.hpp"
#include "halo/stratification.hpp"

#include <optional>
#include <string>
#include <vector>

namespace halo {

// One exact rational value per cell. Operations that need a Morse function
// require injectivity and reject ties instead of perturbing them; the CLI
// offers an explicit deterministic tie-break as an input transformation.
struct ValueMap {
    std::vector<Rational> value;
};

inline std::optional<std::pair<CellId, CellId>> find_duplicate_values(const ValueMap& f)
{
    std::vector<CellId> order(f.value.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<CellId>(i);
    std::sort(order.begin(), order.end(),
              [&](CellId a, CellId b) { return f.value[a] < f.value[b]; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (f.value[order[i]] == f.value[order[i + 1]])
            return std::make_pair(order[i], order[i + 1]);
    return std::nullopt;
}

namespace detail {

inline void check_values(const Complex& c, const ValueMap& f)
{
    if (f.value.size() != c.size())
        throw InputError("value map does not cover the complex");
}

inline void require_injective(const Complex& c, const ValueMap& f)
{
    check_values(c, f);
    if (auto dup = find_duplicate_values(f))
        throw InputError("value map is not injective: cells '" + c.token(dup->first) + "' and '" +
                         c.token(dup->second) + "' share a value");
}

} // namespace detail

// Strict cofaces of sigma whose value does not exceed f(sigma).
inline CellSet lower_star(const Complex& c, const ValueMap& f, CellId sigma)
{
    detail::check_values(c, f);
    CellSet out;
    for (CellId tau : c.coface_set(sigma))
        if (tau != sigma && f.value[tau] <= f.value[sigma])
            out.push_back(tau);
    return out;
}

// Strict faces of sigma whose value is at least f(sigma). Dual to lower_star:
// tau in upper_closure(sigma) iff sigma in lower_star(tau).
inline CellSet upper_closure(const Complex& c, const ValueMap& f, CellId sigma)
{
    detail::check_values(c, f);
    CellSet out;
    for (CellId tau : c.face_set(sigma))
        if (tau != sigma && f.value[tau] >= f.value[sigma])
            out.push_back(tau);
    return out;
}

struct HaloResult {
    CellId cell = -1;
    CellSet halo;      // faces whose lower star has sigma as unique value-argmin
    CellSet augmented; // halo plus sigma itself
    CellSet shadow;    // cl(sigma) minus augmented; always a subcomplex
};

inline HaloResult halo_of(const Complex& c, const ValueMap& f, CellId sigma)
{
    detail::require_injective(c, f);
    HaloResult result;
    result.cell = sigma;
    for (CellId tau : c.face_set(sigma)) {
        if (tau == sigma)
            continue;
        CellSet st = lower_star(c, f, tau);
        if (st.empty())
            continue;
        CellId argmin = st.front();
        for (CellId cand : st)
            if (f.value[cand] < f.value[argmin])
                argmin = cand;
        if (argmin == sigma)
            result.halo.push_back(tau);
    }
    result.augmented = set_union_of(result.halo, {sigma});
    result.shadow = set_difference_of(c.face_set(sigma), result.augmented);
    return result;
}

inline CellSet sublevel_cells(const Complex& c, const ValueMap& f, const Rational& threshold,
                              bool strict = false)
{
    detail::check_values(c, f);
    CellSet out;
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
        if (strict ? f.value[id] < threshold : f.value[id] <= threshold)
            out.push_back(id);
    return out;
}

// Smallest subcomplex containing every cell of value at most `threshold`.
inline CellSet sublevel_closure(const Complex& c, const ValueMap& f, const Rational& threshold)
{
    return closure(c, sublevel_cells(c, f, threshold));
}

class IntervalError : public InputError {
  public:
    using InputError::InputError;
};

// Difference of sublevel closures across an interval containing exactly one
// value. Empty when that cell was already swallowed by the lower closure,
// its augmented halo otherwise.
inline CellSet delta(const Complex& c, const ValueMap& f, const Rational& lo, const Rational& hi)
{
    detail::check_values(c, f);
    CellSet inside;
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
        if (lo <= f.value[id] && f.value[id] <= hi)
            inside.push_back(id);
    if (inside.size() != 1)
        throw IntervalError("interval [" + format_rational(lo) + ", " + format_rational(hi) +
                            "] contains " + std::to_string(inside.size()) +
                            " values, expected exactly 1");
    return set_difference_of(sublevel_closure(c, f, hi), sublevel_closure(c, f, lo));
}

// Half the minimum gap between `center` and the nearest other value; 1 when
// the complex carries a single value. Guarantees the interval
// [center - eps, center + eps] isolates its cell.
inline Rational choose_epsilon(const ValueMap& f, const Rational& center)
{
    bool attained = false;
    std::optional<Rational> gap;
    for (const Rational& v : f.value) {
        if (v == center) {
            attained = true;
            continue;
        }
        Rational d = v < center ? center - v : v - center;
        if (!gap || d < *gap)
            gap = d;
    }
    if (!attained)
        throw InputError("epsilon center " + format_rational(center) + " is not an attained value");
    if (!gap)
        return Rational(1);
    return *gap / 2;
}

enum class CellStatus { PairedBelow, PairedAbove, Critical, SCritical };

inline const char* to_string(CellStatus s)
{
    switch (s) {
    case CellStatus::PairedBelow: return "paired-below";
    case CellStatus::PairedAbove: return "paired-above";
    case CellStatus::Critical: return "critical";
    case CellStatus::SCritical: return "s-critical";
    }
    return "?";
}

enum class MorseVerdict { Valid, Invalid, Inconclusive };

inline const char* to_string(MorseVerdict v)
{
    switch (v) {
    case MorseVerdict::Valid: return "valid";
    case MorseVerdict::Invalid: return "invalid";
    case MorseVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct CellMorse {
    CellId cell = -1;
    int stratum = -1;
    CellStatus status = CellStatus::Critical;
    std::optional<CellId> partner;
    std::optional<CollapseCertificate> certificate;
    std::vector<std::string> failures;
};

struct MorseReport {
    MorseVerdict verdict = MorseVerdict::Valid;
    std::vector<CellMorse> cells;
    std::vector<std::string> global_failures;
};

namespace detail {

// Shared status computation. `sigma` is paired when exactly one partner shows
// up within its own stratum; s-critical additionally demands a globally empty
// lower star, equivalently membership in no halo.
inline CellMorse classify_cell(const Complex& c, const Stratification& strat, const ValueMap& f,
                               CellId sigma)
{
    CellMorse record;
    record.cell = sigma;
    record.stratum = strat.cell_to_stratum[sigma];
    const CellSet& stratum_cells = strat.strata[record.stratum].cells;
    const CellSet up = set_intersection_of(upper_closure(c, f, sigma), stratum_cells);
    const CellSet down_global = lower_star(c, f, sigma);
    const CellSet down = set_intersection_of(down_global, stratum_cells);
    if (up.size() + down.size() > 1)
        record.failures.push_back("condition-1: |upper-closure ∩ stratum| + |lower-star ∩ stratum| = " +
                                  std::to_string(up.size() + down.size()));
    if (!down.empty()) {
        record.status = CellStatus::PairedAbove;
        record.partner = down.front();
    } else if (!up.empty()) {
        record.status = CellStatus::PairedBelow;
        record.partner = up.front();
    } else {
        record.status = down_global.empty() ? CellStatus::SCritical : CellStatus::Critical;
    }
    return record;
}

} // namespace detail

// Status of every cell under the stratum-wise Forman condition. Emits the
// classification even when condition (1) fails somewhere; the verdict and
// per-cell failures carry the violations.
inline MorseReport classify(const Complex& c, const Stratification& strat, const ValueMap& f)
{
    MorseReport report;
    if (!strat.covers(c))
        throw InputError("classification requires a stratification of the whole complex");
    detail::check_values(c, f);
    if (auto dup = find_duplicate_values(f)) {
        report.verdict = MorseVerdict::Invalid;
        report.global_failures.push_back("value map is not injective: cells '" +
                                         c.token(dup->first) + "' and '" + c.token(dup->second) +
                                         "' share a value");
        return report;
    }
    for (CellId sigma = 0; static_cast<std::size_t>(sigma) < c.size(); ++sigma) {
        CellMorse record = detail::classify_cell(c, strat, f, sigma);
        // the two characterisations of s-criticality must agree
        if (record.status == CellStatus::SCritical || record.status == CellStatus::Critical) {
            bool in_some_halo = false;
            for (CellId tau : c.coface_set(sigma))
                if (tau != sigma && set_contains(halo_of(c, f, tau).halo, sigma))
                    in_some_halo = true;
            const bool s_critical = record.status == CellStatus::SCritical;
            if (s_critical == in_some_halo)
                throw std::logic_error("s-criticality characterisations disagree");
        }
        if (!record.failures.empty())
            report.verdict = MorseVerdict::Invalid;
        report.cells.push_back(std::move(record));
    }
    return report;
}

// Full validation: the stratum-wise Forman condition, and for every cell
// paired below, halo membership of the partner plus a filtered collapse of
// cl(sigma) onto the shadow. Certificates are stored for reuse by sweep.
inline MorseReport validate_sdmf(const Complex& c, const Stratification& strat, const ValueMap& f,
                                 std::uint64_t budget = 1'000'000)
{
    if (!strat.covers(c))
        throw InputError("validation requires a stratification of the whole complex");
    if (!check_frontier(c, strat).passes)
        throw InputError("validation requires a frontier-valid stratification");
    detail::check_values(c, f);

    MorseReport report;
    if (auto dup = find_duplicate_values(f)) {
        report.verdict = MorseVerdict::Invalid;
        report.global_failures.push_back("value map is not injective: cells '" +
                                         c.token(dup->first) + "' and '" + c.token(dup->second) +
                                         "' share a value");
        return report;
    }

    bool any_exhausted = false;
    for (CellId sigma = 0; static_cast<std::size_t>(sigma) < c.size(); ++sigma) {
        CellMorse record = detail::classify_cell(c, strat, f, sigma);
        if (record.status == CellStatus::PairedBelow && record.failures.empty()) {
            const CellId tau = *record.partner;
            HaloResult h = halo_of(c, f, sigma);
            if (!set_contains(h.halo, tau))
                record.failures.push_back("condition-2: partner '" + c.token(tau) +
                                          "' does not lie in the halo of '" + c.token(sigma) + "'");
            CollapseSearch search =
                find_collapse(c, c.face_set(sigma), h.shadow, &strat, budget);
            switch (search.outcome) {
            case SearchOutcome::Found:
                record.certificate = std::move(search.certificate);
                break;
            case SearchOutcome::NoCollapse:
                record.failures.push_back("condition-2: no filtered collapse of cl('" +
                                          c.token(sigma) + "') onto its shadow");
                break;
            case SearchOutcome::BudgetExhausted:
                any_exhausted = true;
                record.failures.push_back("inconclusive: collapse search budget exhausted on '" +
                                          c.token(sigma) + "'");
                break;
            }
        }
        report.cells.push_back(std::move(record));
    }
    bool any_definite_failure = false;
    for (const CellMorse& record : report.cells)
        for (const std::string& failure : record.failures)
            if (failure.rfind("inconclusive:", 0) != 0)
                any_definite_failure = true;
    if (any_definite_failure)
        report.verdict = MorseVerdict::Invalid;
    else if (any_exhausted)
        report.verdict = MorseVerdict::Inconclusive;
    return report;
}

enum class SweepKind { NoChange, RegularCollapse, SCriticalAttachment };

inline const char* to_string(SweepKind k)
{
    switch (k) {
    case SweepKind::NoChange: return "no-change";
    case SweepKind::RegularCollapse: return "regular-collapse";
    case SweepKind::SCriticalAttachment: return "s-critical-attachment";
    }
    return "?";
}

struct PushoutTriple {
    CellSet attached; // cl(sigma)
    CellSet below;    // sublevel closure just under f(sigma)
    CellSet shadow;   // the asserted intersection
};

struct SweepEvent {
    CellId cell = -1;
    SweepKind kind = SweepKind::NoChange;
    std::optional<CollapseCertificate> certificate;
    std::optional<PushoutTriple> pushout;
    std::vector<std::string> violations; // nonempty marks a theorem violation
};

struct SweepResult {
    MorseVerdict verdict = MorseVerdict::Valid;
    std::vector<SweepEvent> events;
    bool theorem_violation = false;
};

// Processes cells in increasing value order with interval midpoints as
// thresholds. Regular steps replay the stored shadow certificates; s-critical
// steps assert the union/intersection identities of the attachment. Any
// failed replay or identity is flagged as a violation instead of silently
// continuing — it indicates a bug or an invalid input that slipped through.
inline SweepResult sweep(const Complex& c, const Stratification& strat, const ValueMap& f,
                         std::uint64_t budget = 1'000'000)
{
    SweepResult result;
    MorseReport report = validate_sdmf(c, strat, f, budget);
    result.verdict = report.verdict;
    if (report.verdict != MorseVerdict::Valid)
        return result; // refuse to sweep an invalid or inconclusive function

    std::vector<CellId> order(c.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<CellId>(i);
    std::sort(order.begin(), order.end(),
              [&](CellId a, CellId b) { return f.value[a] < f.value[b]; });

    for (std::size_t k = 0; k < order.size(); ++k) {
        const CellId sigma = order[k];
        const Rational below_threshold =
            k == 0 ? Rational(f.value[sigma] - 1)
                   : Rational((f.value[order[k - 1]] + f.value[sigma]) / 2);
        const Rational above_threshold =
            k + 1 == order.size() ? Rational(f.value[sigma] + 1)
                                  : Rational((f.value[sigma] + f.value[order[k + 1]]) / 2);
        const CellSet below = sublevel_closure(c, f, below_threshold);
        const CellSet above = sublevel_closure(c, f, above_threshold);

        SweepEvent event;
        event.cell = sigma;
        const CellMorse& record = report.cells[sigma];
        if (set_contains(below, sigma)) {
            event.kind = SweepKind::NoChange;
            if (above != below)
                event.violations.push_back("sublevel closures differ across a swallowed cell");
        } else if (record.status != CellStatus::SCritical) {
            event.kind = SweepKind::RegularCollapse;
            if (!record.certificate) {
                event.violations.push_back("no stored certificate for a regular step");
            } else {
                event.certificate = record.certificate;
                try {
                    CellSet replayed = replay(c, above, *record.certificate, &strat);
                    if (replayed != below)
                        event.violations.push_back("certificate replay does not reach the lower "
                                                   "sublevel closure");
                } catch (const ReplayError& e) {
                    event.violations.push_back(std::string("certificate replay failed: ") +
                                               e.what());
                }
            }
        } else {
            event.kind = SweepKind::SCriticalAttachment;
            HaloResult h = halo_of(c, f, sigma);
            PushoutTriple triple;
            triple.attached = c.face_set(sigma);
            triple.below = below;
            triple.shadow = h.shadow;
            if (above != set_union_of(below, triple.attached))
                event.violations.push_back("attachment union identity fails");
            if (set_intersection_of(below, triple.attached) != h.shadow)
                event.violations.push_back("attachment intersection is not the shadow");
            event.pushout = std::move(triple);
        }
        if (!event.violations.empty())
            result.theorem_violation = true;
        result.events.push_back(std::move(event));
    }
    return result;
}

// Deterministic repair of value ties: within each group of equal values the
// cells are offset by k * gap/(m+1) in token order, which keeps the relative
// order against all other values. Documented as an input transformation.
inline ValueMap tiebreak_values(const Complex& c, const ValueMap& f)
{
    detail::check_values(c, f);
    std::vector<CellId> order(f.value.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<CellId>(i);
    std::sort(order.begin(), order.end(), [&](CellId a, CellId b) {
        if (f.value[a] != f.value[b])
            return f.value[a] < f.value[b];
        return a < b;
    });
    ValueMap out = f;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && f.value[order[j + 1]] == f.value[order[i]])
            ++j;
        if (j > i) {
            const Rational base = f.value[order[i]];
            const Rational gap =
                j + 1 < order.size() ? f.value[order[j + 1]] - base : Rational(1);
            const Rational step = gap / Rational(static_cast<int>(j - i) + 2);
            for (std::size_t k = i; k <= j; ++k)
                out.value[order[k]] = base + step * Rational(static_cast<int>(k - i));
        }
        i = j + 1;
    }
    return out;
}

} // namespace halo
