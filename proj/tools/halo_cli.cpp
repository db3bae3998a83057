// Command-line driver: validation, strata, Morse analysis, sweeps,
// subdivision, local Morse data, Conley indices and the first page of the
// spectral sequence, all over the cwx file format.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input
// error, 3 inconclusive (search budget exhausted).

#include "halo/collapse.hpp"
#include "halo/complex.hpp"
#include "halo/conley.hpp"
#include "halo/homology.hpp"
#include "halo/io.hpp"
#include "halo/morse.hpp"
#include "halo/report.hpp"
#include "halo/stratification.hpp"
#include "halo/subdivision.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace halo;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInconclusive = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string tokens_of(const Complex& c, const CellSet& s)
{
    if (s.empty())
        return "-";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0)
            out += ',';
        out += c.token(s[i]);
    }
    return out;
}

std::string torsion_of(const DegreeHomology& d)
{
    if (d.torsion.empty())
        return "-";
    std::string out;
    for (std::size_t i = 0; i < d.torsion.size(); ++i) {
        if (i > 0)
            out += ',';
        out += d.torsion[i].str();
    }
    return out;
}

const char* pass_fail(bool pass) { return pass ? "PASS" : "FAIL"; }

struct Session {
    std::string file;
    bool json_like = false;
    Report report;

    ParseResult parsed;

    void load() { parsed = parse_cwx(read_file(file)); }

    const ValueMap& values()
    {
        if (!parsed.values)
            throw InputError("'" + file + "' carries no value lines");
        return *parsed.values;
    }

    // Missing level lines mean the trivial one-level stratification.
    Stratification stratification()
    {
        LevelMap lm = parsed.levels ? *parsed.levels : trivial_levels(parsed.complex);
        return compute_strata(parsed.complex, lm);
    }

    int finish(int code)
    {
        if (json_like)
            report.render_nested(std::cout);
        else
            report.render_flat(std::cout);
        return code;
    }
};

void emit_certificate(Session& session, const Complex& c, const Stratification* strat,
                      const CollapseCertificate& cert, const std::string& owner)
{
    session.report.record("certificate")
        .add("cell", owner)
        .add("pairs", std::to_string(cert.pairs.size()));
    for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
        ReportRecord& line = session.report.record("pair");
        line.add_bare("sigma", c.token(cert.pairs[i].sigma));
        line.add_bare("tau", c.token(cert.pairs[i].tau));
        if (cert.filtered && strat != nullptr)
            line.add_bare("stratum", strat->strata[cert.pair_stratum[i]].id);
    }
}

int cmd_validate(Session& session)
{
    session.load();
    const Complex& c = session.parsed.complex;
    bool all_pass = true;

    session.report.record("complex")
        .add("cells", std::to_string(c.size()))
        .add("covering", std::to_string(c.covering_pairs().size()));
    ValidationReport complex_report = validate_complex(c);
    session.report.record("check")
        .add("name", "complex-invariants")
        .add("result", pass_fail(complex_report.ok()));
    for (const ValidationIssue& issue : complex_report.issues)
        session.report.record("violation").add("rule", issue.rule).add("detail", issue.detail);
    session.report.record("note").add("text", "regularity checked up to combinatorial proxies");
    all_pass = all_pass && complex_report.ok();

    if (session.parsed.levels && complex_report.ok()) {
        bool monotone = true;
        try {
            Stratification strat = compute_strata(c, *session.parsed.levels);
            session.report.record("check").add("name", "level-monotone").add("result", "PASS");
            session.report.record("strata").add("count", std::to_string(strat.strata.size()));
            FrontierReport frontier = check_frontier(c, strat);
            session.report.record("check")
                .add("name", "frontier")
                .add("result", pass_fail(frontier.passes));
            for (const FrontierViolation& v : frontier.violations)
                session.report.record("violation")
                    .add("rule", "frontier")
                    .add("stratum", strat.strata[v.stratum_s].id)
                    .add("against", strat.strata[v.stratum_t].id)
                    .add("witness", c.token(v.witness))
                    .add("missing", c.token(v.missing));
            ValidationReport convexity = check_convexity(c, strat);
            session.report.record("check")
                .add("name", "convexity")
                .add("result", pass_fail(convexity.ok()));
            for (const ValidationIssue& issue : convexity.issues)
                session.report.record("violation").add("rule", issue.rule).add("detail",
                                                                               issue.detail);
            all_pass = all_pass && frontier.passes && convexity.ok();
        } catch (const StratificationError& e) {
            monotone = false;
            session.report.record("check").add("name", "level-monotone").add("result", "FAIL");
            session.report.record("violation").add("rule", "level-monotone").add("detail",
                                                                                 e.what());
        }
        all_pass = all_pass && monotone;
    }
    if (session.parsed.values) {
        auto dup = find_duplicate_values(*session.parsed.values);
        session.report.record("check")
            .add("name", "value-injective")
            .add("result", pass_fail(!dup.has_value()));
        if (dup)
            session.report.record("violation")
                .add("rule", "value-injective")
                .add("detail", "cells '" + c.token(dup->first) + "' and '" +
                                   c.token(dup->second) + "' share a value");
        all_pass = all_pass && !dup.has_value();
    }
    session.report.record("result").add("verdict", pass_fail(all_pass));
    return session.finish(all_pass ? kExitPass : kExitCheckFailed);
}

int cmd_strata(Session& session)
{
    session.load();
    const Complex& c = session.parsed.complex;
    Stratification strat = session.stratification();
    for (const Stratum& s : strat.strata)
        session.report.record("stratum")
            .add("id", s.id)
            .add("level", std::to_string(s.level))
            .add("cells", tokens_of(c, s.cells));
    FrontierReport frontier = check_frontier(c, strat);
    session.report.record("check").add("name", "frontier").add("result",
                                                               pass_fail(frontier.passes));
    if (!frontier.passes) {
        for (const FrontierViolation& v : frontier.violations)
            session.report.record("violation")
                .add("rule", "frontier")
                .add("stratum", strat.strata[v.stratum_s].id)
                .add("against", strat.strata[v.stratum_t].id)
                .add("witness", c.token(v.witness))
                .add("missing", c.token(v.missing));
        return session.finish(kExitCheckFailed);
    }
    StratumOrder order = stratum_order(c, strat);
    for (const auto& [low, high] : order.strict_pairs())
        session.report.record("order").add("low", order.ids[low]).add("high", order.ids[high]);
    return session.finish(kExitPass);
}

int cmd_halo(Session& session, const std::string& cell)
{
    session.load();
    const Complex& c = session.parsed.complex;
    HaloResult h = halo_of(c, session.values(), c.require(cell));
    session.report.record("halo")
        .add("cell", cell)
        .add("value", format_rational(session.values().value[h.cell]))
        .add("halo", tokens_of(c, h.halo))
        .add("augmented", tokens_of(c, h.augmented))
        .add("shadow", tokens_of(c, h.shadow));
    return session.finish(kExitPass);
}

void emit_morse_cells(Session& session, const Complex& c, const Stratification& strat,
                      const MorseReport& report, bool with_certificates)
{
    for (const std::string& failure : report.global_failures)
        session.report.record("failure").add("text", failure);
    for (const CellMorse& record : report.cells) {
        ReportRecord& line = session.report.record("cell");
        line.add("id", c.token(record.cell));
        line.add("stratum", strat.strata[record.stratum].id);
        line.add("status", to_string(record.status));
        if (record.partner)
            line.add("partner", c.token(*record.partner));
        if (with_certificates && record.certificate)
            emit_certificate(session, c, &strat, *record.certificate, c.token(record.cell));
        for (const std::string& failure : record.failures)
            session.report.record("failure").add("cell", c.token(record.cell)).add("text",
                                                                                   failure);
    }
}

int verdict_exit(MorseVerdict verdict)
{
    switch (verdict) {
    case MorseVerdict::Valid: return kExitPass;
    case MorseVerdict::Invalid: return kExitCheckFailed;
    case MorseVerdict::Inconclusive: return kExitInconclusive;
    }
    return kExitInputError;
}

int cmd_classify(Session& session)
{
    session.load();
    Stratification strat = session.stratification();
    MorseReport report = classify(session.parsed.complex, strat, session.values());
    emit_morse_cells(session, session.parsed.complex, strat, report, false);
    session.report.record("verdict").add("value", to_string(report.verdict));
    return session.finish(verdict_exit(report.verdict));
}

int cmd_check_morse(Session& session, std::uint64_t budget, bool tiebreak)
{
    session.load();
    Stratification strat = session.stratification();
    ValueMap f = session.values();
    if (tiebreak) {
        f = tiebreak_values(session.parsed.complex, f);
        session.report.record("note").add("text", "tie-break preprocessing applied");
    }
    MorseReport report = validate_sdmf(session.parsed.complex, strat, f, budget);
    emit_morse_cells(session, session.parsed.complex, strat, report, true);
    session.report.record("verdict").add("value", to_string(report.verdict));
    return session.finish(verdict_exit(report.verdict));
}

int cmd_sweep(Session& session, std::uint64_t budget)
{
    session.load();
    const Complex& c = session.parsed.complex;
    Stratification strat = session.stratification();
    SweepResult result = sweep(c, strat, session.values(), budget);
    session.report.record("verdict").add("value", to_string(result.verdict));
    if (result.verdict != MorseVerdict::Valid)
        return session.finish(verdict_exit(result.verdict));
    for (const SweepEvent& event : result.events) {
        ReportRecord& line = session.report.record("event");
        line.add("cell", c.token(event.cell));
        line.add("kind", to_string(event.kind));
        if (event.pushout) {
            line.add("attached", tokens_of(c, event.pushout->attached));
            line.add("intersection", tokens_of(c, event.pushout->shadow));
        }
        if (event.certificate)
            emit_certificate(session, c, &strat, *event.certificate, c.token(event.cell));
        for (const std::string& violation : event.violations)
            session.report.record("theorem-violation")
                .add("cell", c.token(event.cell))
                .add("text", violation);
    }
    session.report.record("result").add("verdict", pass_fail(!result.theorem_violation));
    return session.finish(result.theorem_violation ? kExitCheckFailed : kExitPass);
}

int cmd_delta(Session& session, const std::string& lo, const std::string& hi)
{
    session.load();
    const Complex& c = session.parsed.complex;
    const Rational rlo = parse_decimal(lo);
    const Rational rhi = parse_decimal(hi);
    CellSet diff = delta(c, session.values(), rlo, rhi);
    CellSet inside;
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
        if (rlo <= session.values().value[id] && session.values().value[id] <= rhi)
            inside.push_back(id);
    session.report.record("delta")
        .add("lo", lo)
        .add("hi", hi)
        .add("cell", tokens_of(c, inside))
        .add("cells", tokens_of(c, diff));
    return session.finish(kExitPass);
}

int cmd_subdivide(Session& session)
{
    session.load();
    std::optional<Stratification> strat;
    if (session.parsed.levels)
        strat = compute_strata(session.parsed.complex, *session.parsed.levels);
    SdComplex sd = strat ? barycentric_subdivide(session.parsed.complex, *strat)
                         : barycentric_subdivide(session.parsed.complex);
    std::optional<EnvelopeMap> env;
    if (session.parsed.values)
        env = upper_envelope(sd, *session.parsed.values);
    std::cout << serialize_subdivision(sd, env ? &*env : nullptr);
    return kExitPass;
}

int cmd_lowerlink(Session& session, const std::string& cell)
{
    session.load();
    const Complex& c = session.parsed.complex;
    SdComplex sd = barycentric_subdivide(c);
    EnvelopeMap env = upper_envelope(sd, session.values());
    const CellId base = c.require(cell);
    session.report.record("link").add("cell", cell).add("simplices",
                                                        tokens_of(sd.sd, link_of_vertex(sd, base)));
    session.report.record("lowerlink")
        .add("cell", cell)
        .add("simplices", tokens_of(sd.sd, lower_link(sd, env, base)));
    HvSplit split = hv_split(sd, env, base);
    session.report.record("horizontal").add("simplices", tokens_of(sd.sd, split.horizontal));
    session.report.record("vertical").add("simplices", tokens_of(sd.sd, split.vertical));
    return session.finish(kExitPass);
}

int cmd_theorem_c(Session& session, const std::string& cell)
{
    session.load();
    const Complex& c = session.parsed.complex;
    Stratification strat = session.stratification();
    SdComplex sd = barycentric_subdivide(c, strat);
    EnvelopeMap env = upper_envelope(sd, session.values());
    const CellId base = c.require(cell);

    const int stratum = strat.cell_to_stratum[base];
    const CellSet& own = strat.strata[stratum].cells;
    const bool critical =
        set_intersection_of(upper_closure(c, session.values(), base), own).empty() &&
        set_intersection_of(lower_star(c, session.values(), base), own).empty();

    TheoremCReport report;
    if (critical) {
        report = theorem_c_check(sd, env, strat, base);
    } else {
        session.report.record("note").add(
            "text", "cell is not critical within its stratum; running the pushout check only");
        report = pushout_check(sd, env, base);
    }
    session.report.record("theorem-c")
        .add("cell", cell)
        .add("critical", critical ? "true" : "false")
        .add("epsilon", format_rational(report.epsilon));
    session.report.record("lowerlink").add("simplices",
                                           tokens_of(sd.sd, report.lower_link_cells));
    if (critical) {
        session.report.record("horizontal").add("simplices", tokens_of(sd.sd, report.horizontal));
        session.report.record("vertical").add("simplices", tokens_of(sd.sd, report.vertical));
    }
    for (const CheckLine& line : report.checks) {
        ReportRecord& rec = session.report.record("check");
        rec.add("name", line.name);
        rec.add("result", pass_fail(line.pass));
        if (!line.pass && !line.witness.empty())
            rec.add("witness", line.witness);
    }
    session.report.record("result").add("verdict", pass_fail(report.pass()));
    return session.finish(report.pass() ? kExitPass : kExitCheckFailed);
}

int cmd_conley(Session& session)
{
    session.load();
    const Complex& c = session.parsed.complex;
    MultivectorField mvf;
    if (session.parsed.mvf) {
        mvf = *session.parsed.mvf;
        session.report.record("mvf").add("source", "file").add("parts",
                                                               std::to_string(mvf.parts.size()));
    } else {
        Stratification strat = session.stratification();
        mvf = strata_mvf(c, strat);
        session.report.record("mvf").add("source", "strata").add("parts",
                                                                 std::to_string(mvf.parts.size()));
    }
    for (const Multivector& part : mvf.parts)
        session.report.record("part").add("id", part.id).add("cells", tokens_of(c, part.cells));

    ValidationReport valid = validate_mvf(c, mvf);
    session.report.record("check").add("name", "mvf-valid").add("result", pass_fail(valid.ok()));
    for (const ValidationIssue& issue : valid.issues)
        session.report.record("violation").add("rule", issue.rule).add("detail", issue.detail);
    if (!valid.ok())
        return session.finish(kExitCheckFailed);

    MvfOrder order = mvf_order(c, mvf);
    if (!order.acyclic) {
        std::string cycle;
        for (std::size_t i = 0; i < order.cycle.size(); ++i) {
            if (i > 0)
                cycle += ',';
            cycle += mvf.parts[order.cycle[i]].id;
        }
        session.report.record("cycle").add("parts", cycle);
        session.report.record("check").add("name", "acyclic").add("result", "FAIL");
        return session.finish(kExitCheckFailed);
    }
    session.report.record("check").add("name", "acyclic").add("result", "PASS");
    for (std::size_t t = 0; t < mvf.parts.size(); ++t)
        for (std::size_t s = 0; s < mvf.parts.size(); ++s)
            if (t != s && order.leq(static_cast<int>(t), static_cast<int>(s)))
                session.report.record("order")
                    .add("low", mvf.parts[t].id)
                    .add("high", mvf.parts[s].id);
    {
        std::string extension;
        for (std::size_t i = 0; i < order.extension.size(); ++i) {
            if (i > 0)
                extension += ',';
            extension += mvf.parts[order.extension[i]].id;
        }
        session.report.record("extension").add("parts", extension);
    }

    SdComplex sd = barycentric_subdivide(c);
    E1Page page = e1_page(c, mvf, sd);
    for (const E1Entry& entry : page.entries) {
        for (std::size_t k = 0; k < entry.from_index.degrees.size(); ++k)
            session.report.record("conley")
                .add("part", mvf.parts[entry.part].id)
                .add("degree", std::to_string(k))
                .add("betti", std::to_string(entry.from_index.degrees[k].betti))
                .add("torsion", torsion_of(entry.from_index.degrees[k]));
        for (std::size_t k = 0; k < entry.from_filtration.degrees.size(); ++k)
            session.report.record("e1")
                .add("q", std::to_string(entry.q))
                .add("part", mvf.parts[entry.part].id)
                .add("degree", std::to_string(k))
                .add("betti", std::to_string(entry.from_filtration.degrees[k].betti))
                .add("torsion", torsion_of(entry.from_filtration.degrees[k]));
    }
    session.report.record("check").add("name", "excision").add("result",
                                                               pass_fail(page.consistent()));

    const bool euler_ok = page.euler() == c.euler_characteristic();
    session.report.record("check")
        .add("name", "euler")
        .add("result", pass_fail(euler_ok))
        .add("chi", std::to_string(c.euler_characteristic()));

    GradedHomology global = relative_homology(sd, sd.sd.all_cells(), {});
    bool bound_ok = true;
    for (std::size_t k = 0; k < global.degrees.size(); ++k)
        bound_ok = bound_ok && global.betti(k) <= page.total_rank(k);
    session.report.record("check").add("name", "betti-bound").add("result", pass_fail(bound_ok));

    const bool all_pass = page.consistent() && euler_ok && bound_ok;
    session.report.record("result").add("verdict", pass_fail(all_pass));
    return session.finish(all_pass ? kExitPass : kExitCheckFailed);
}

int cmd_homology(Session& session, const std::string& rel_path)
{
    session.load();
    const Complex& c = session.parsed.complex;
    SdComplex sd = barycentric_subdivide(c);
    CellSet small_base;
    if (!rel_path.empty()) {
        std::istringstream stream(read_file(rel_path));
        std::string line;
        std::vector<CellId> cells;
        while (std::getline(stream, line)) {
            std::istringstream fields(line);
            std::string token;
            while (fields >> token) {
                if (token.front() == '#')
                    break;
                cells.push_back(c.require(token));
            }
        }
        small_base = make_cell_set(cells);
        if (!is_subcomplex(c, small_base))
            throw InputError("'" + rel_path + "' is not a subcomplex");
    }
    GradedHomology h = cw_pair_homology(sd, c.all_cells(), small_base);
    for (std::size_t k = 0; k < h.degrees.size(); ++k)
        session.report.record("homology")
            .add("degree", std::to_string(k))
            .add("betti", std::to_string(h.degrees[k].betti))
            .add("torsion", torsion_of(h.degrees[k]));
    return session.finish(kExitPass);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"stratified discrete Morse toolkit over cwx complexes"};
    app.require_subcommand(1);
    bool json_like = false;
    app.add_flag("--json-like", json_like, "render nested key/value blocks instead of flat lines");

    std::string file, cell, lo, hi, rel_path;
    std::uint64_t budget = 1'000'000;
    bool tiebreak = false;

    CLI::App* validate = app.add_subcommand("validate", "check complex and stratification");
    validate->add_option("file", file)->required();
    CLI::App* strata = app.add_subcommand("strata", "list strata and their partial order");
    strata->add_option("file", file)->required();
    CLI::App* halo_cmd = app.add_subcommand("halo", "halo, augmented halo and shadow of a cell");
    halo_cmd->add_option("file", file)->required();
    halo_cmd->add_option("--cell", cell)->required();
    CLI::App* classify_cmd = app.add_subcommand("classify", "status of every cell");
    classify_cmd->add_option("file", file)->required();
    CLI::App* check = app.add_subcommand("check-morse", "validate a stratified Morse function");
    check->add_option("file", file)->required();
    check->add_option("--budget", budget);
    check->add_flag("--tiebreak", tiebreak);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "event log across increasing values");
    sweep_cmd->add_option("file", file)->required();
    sweep_cmd->add_option("--budget", budget);
    CLI::App* delta_cmd = app.add_subcommand("delta", "difference of sublevel closures");
    delta_cmd->add_option("file", file)->required();
    delta_cmd->add_option("--lo", lo)->required();
    delta_cmd->add_option("--hi", hi)->required();
    CLI::App* subdivide_cmd = app.add_subcommand("subdivide", "emit the barycentric subdivision");
    subdivide_cmd->add_option("file", file)->required();
    CLI::App* lowerlink_cmd = app.add_subcommand("lowerlink", "link and lower link of a cell");
    lowerlink_cmd->add_option("file", file)->required();
    lowerlink_cmd->add_option("--cell", cell)->required();
    CLI::App* theorem_cmd = app.add_subcommand("theorem-c", "local Morse data decomposition");
    theorem_cmd->add_option("file", file)->required();
    theorem_cmd->add_option("--cell", cell)->required();
    CLI::App* conley_cmd = app.add_subcommand("conley", "Conley indices and the first page");
    conley_cmd->add_option("file", file)->required();
    CLI::App* homology_cmd = app.add_subcommand("homology", "integer homology via subdivision");
    homology_cmd->add_option("file", file)->required();
    homology_cmd->add_option("--rel", rel_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    Session session;
    session.file = file;
    session.json_like = json_like;
    try {
        if (validate->parsed())
            return cmd_validate(session);
        if (strata->parsed())
            return cmd_strata(session);
        if (halo_cmd->parsed())
            return cmd_halo(session, cell);
        if (classify_cmd->parsed())
            return cmd_classify(session);
        if (check->parsed())
            return cmd_check_morse(session, budget, tiebreak);
        if (sweep_cmd->parsed())
            return cmd_sweep(session, budget);
        if (delta_cmd->parsed())
            return cmd_delta(session, lo, hi);
        if (subdivide_cmd->parsed())
            return cmd_subdivide(session);
        if (lowerlink_cmd->parsed())
            return cmd_lowerlink(session, cell);
        if (theorem_cmd->parsed())
            return cmd_theorem_c(session, cell);
        if (conley_cmd->parsed())
            return cmd_conley(session);
        if (homology_cmd->parsed())
            return cmd_homology(session, rel_path);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitInputError;
}
