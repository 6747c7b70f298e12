#pragma once

// Problem ingestion, report emission and the three command verbs.
//
// Both problems and reports are JSON. Every number that reaches the engine
// or leaves it is an exact rational string ("3/4", "1"); bare JSON integers
// are accepted as shorthand on input and JSON floats are rejected. Output
// objects keep a fixed field order so reports can be diffed and used as
// golden files.

#include "ignorance/acts.hpp"
#include "ignorance/ce_ops.hpp"
#include "ignorance/consensus.hpp"
#include "ignorance/consistency.hpp"
#include "ignorance/error.hpp"
#include "ignorance/plausibility.hpp"
#include "ignorance/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ignorance::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kEngineVersion = "0.1.0";

enum class ExitCode : int { Pass = 0, Violations = 1, Error = 2 };

// ---------------------------------------------------------------------------
// Scalars

inline json emit(const Rational& r) { return format_rational(r); }

inline Rational rational_at(const json& j, const std::string& field) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, field + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
    if (j.is_number_float()) throw Error(ErrorCode::ParseError, field + ": decimal " + j.dump() + " rejected, write it as \"p/q\"");
    throw Error(ErrorCode::ParseError, field + ": expected a rational string");
}

inline Utility utility_at(const json& j, const std::string& field) {
    auto r = rational_at(j, field);
    if (!in_unit_interval(r)) throw Error(ErrorCode::ValidationError, field + ": " + format_rational(r) + " is outside [0,1]");
    return r;
}

inline std::vector<Rational> rationals_at(const json& j, const std::string& field, bool unit = false) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, field + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto path = field + "[" + std::to_string(i) + "]";
        out.push_back(unit ? utility_at(j[i], path) : rational_at(j[i], path));
    }
    return out;
}

inline json emit(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(emit(r));
    return out;
}

inline const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ValidationError, (path.empty() ? "" : path + ".") + key + ": missing");
    return j.at(key);
}

/// Re-raises engine validation failures with the field they came from.
template <class Fn>
auto at_field(const std::string& field, Fn fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError) throw;
        throw Error(ErrorCode::ValidationError, field + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Domain values

inline json emit(Event e) {
    json out = json::array();
    for (auto s : e.members()) out.push_back(s);
    return out;
}

inline Event event_at(const json& j, std::size_t n, const std::string& field) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, field + ": expected an array of state indices");
    Event e;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_unsigned() || j[i].get<std::size_t>() >= n)
            throw Error(ErrorCode::ValidationError, field + "[" + std::to_string(i) + "]: not a state index below " + std::to_string(n));
        e.insert(j[i].get<std::size_t>());
    }
    return e;
}

inline json emit(const Act& f) { return emit(f.outcomes()); }

inline Act act_at(const json& j, const std::string& field) {
    return at_field(field, [&] { return Act(rationals_at(j, field, true)); });
}

inline json emit(const Partition& h) {
    json out = json::array();
    for (const auto& b : h.blocks()) out.push_back(emit(b));
    return out;
}

inline Partition partition_at(const json& j, std::size_t n, const std::string& field) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, field + ": expected a list of blocks");
    std::vector<Event> blocks;
    for (std::size_t k = 0; k < j.size(); ++k) blocks.push_back(event_at(j[k], n, field + "[" + std::to_string(k) + "]"));
    return at_field(field, [&] { return Partition(StateSpace(n), blocks); });
}

inline json emit(const GammaFunction& g) {
    return std::visit(overloaded{
                          [](const GammaFunction::Anchored& k) { return json{{"kind", "anchored"}, {"a", emit(k.a)}}; },
                          [](const GammaFunction::Hurwicz& k) { return json{{"kind", "hurwicz"}, {"alpha", emit(k.alpha)}}; },
                          [](const GammaFunction::MinRule&) { return json{{"kind", "min"}}; },
                          [](const GammaFunction::MaxRule&) { return json{{"kind", "max"}}; },
                          [](const GammaFunction::Median&) { return json{{"kind", "median"}}; },
                          [](const GammaFunction::Tabulated& k) {
                              json table = json::array();
                              for (const auto& [z, v] : k.table) table.push_back(json{emit(z.first), emit(z.second), emit(v)});
                              return json{{"kind", "tabulated"}, {"table", table}};
                          },
                      },
                      g.kind());
}

inline GammaFunction gamma_at(const json& j, const std::string& path) {
    const auto& kind_j = require(j, "kind", path);
    if (!kind_j.is_string()) throw Error(ErrorCode::ParseError, path + ".kind: expected a string");
    const auto kind = kind_j.get<std::string>();
    if (kind == "anchored") return GammaFunction::anchored(utility_at(require(j, "a", path), path + ".a"));
    if (kind == "hurwicz") return GammaFunction::hurwicz(utility_at(require(j, "alpha", path), path + ".alpha"));
    if (kind == "min") return GammaFunction::min_rule();
    if (kind == "max") return GammaFunction::max_rule();
    if (kind == "median") return GammaFunction::median();
    if (kind == "tabulated") {
        const auto& table = require(j, "table", path);
        if (!table.is_array()) throw Error(ErrorCode::ParseError, path + ".table: expected an array of [x, y, value]");
        std::map<std::pair<Rational, Rational>, Utility> entries;
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto field = path + ".table[" + std::to_string(i) + "]";
            auto row = rationals_at(table[i], field, true);
            if (row.size() != 3) throw Error(ErrorCode::ValidationError, field + ": expected [x, y, value]");
            if (row[0] > row[1]) throw Error(ErrorCode::ValidationError, field + ": needs x <= y");
            entries[{row[0], row[1]}] = row[2];
        }
        return GammaFunction::tabulated(std::move(entries));
    }
    throw Error(ErrorCode::ValidationError, path + ".kind: unknown rule \"" + kind + "\"");
}

inline json emit(const CeOperator& op) {
    json out = emit(op.vacuous_rule);
    out["probabilistic"] = op.probabilistic;
    out["credal_extension"] = op.credal_extension;
    return out;
}

inline CeOperator operator_at(const json& j, const std::string& path) {
    CeOperator op{gamma_at(j, path), true, false};
    if (j.contains("probabilistic")) op.probabilistic = j.at("probabilistic").get<bool>();
    if (j.contains("credal_extension")) op.credal_extension = j.at("credal_extension").get<bool>();
    return op;
}

inline json emit(const PlausibilityMeasure& m) {
    json out{{"framework", std::string(to_string(m.framework()))}};
    std::visit(overloaded{
                   [&](const ProbabilityPayload& p) { out["p"] = emit(p.p); },
                   [&](const CredalPayload& c) {
                       if (c.full_simplex) {
                           out["full_simplex"] = true;
                           out["states"] = m.space().size();
                           return;
                       }
                       json gens = json::array();
                       for (const auto& g : c.generators) gens.push_back(emit(g));
                       out["generators"] = gens;
                   },
                   [&](const BeliefPayload& b) {
                       out["states"] = m.space().size();
                       json masses = json::array();
                       for (const auto& [e, mass] : b.masses) masses.push_back(json{{"event", emit(e)}, {"mass", emit(mass)}});
                       out["masses"] = masses;
                   },
                   [&](const PossibilityPayload& p) { out["pi"] = emit(p.pi); },
               },
               m.payload());
    return out;
}

/// Measure spec. Besides explicit payloads, {"vacuous": true} and
/// {"certain_state": k} select a framework's ignorance or certainty
/// representation over `n` states.
inline PlausibilityMeasure measure_at(const json& j, std::size_t n, const std::string& path) {
    const auto& fw_j = require(j, "framework", path);
    if (!fw_j.is_string()) throw Error(ErrorCode::ParseError, path + ".framework: expected a string");
    Framework fw{};
    try {
        fw = parse_framework(fw_j.get<std::string>());
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError, path + ".framework: " + e.what());
    }
    if (j.contains("states") && j.at("states").get<std::size_t>() != n)
        throw Error(ErrorCode::ValidationError, path + ".states: disagrees with the problem's state count");
    const StateSpace space = at_field("states", [&] { return StateSpace(n); });

    if (j.value("vacuous", false) || j.value("full_simplex", false))
        return at_field(path, [&] { return vacuous(space, fw); });
    if (j.contains("certain_state")) {
        const auto s = j.at("certain_state").get<std::size_t>();
        return at_field(path + ".certain_state", [&] { return certainty(space, fw, s); });
    }
    auto sized = [&](PlausibilityMeasure m) {
        if (m.space().size() != n) throw Error(ErrorCode::ValidationError, path + ": measure has " + std::to_string(m.space().size()) + " states, problem has " + std::to_string(n));
        return m;
    };
    switch (fw) {
    case Framework::Probability:
        return sized(at_field(path + ".p", [&] { return PlausibilityMeasure::probability(rationals_at(require(j, "p", path), path + ".p")); }));
    case Framework::CredalSet: {
        const auto& gens_j = require(j, "generators", path);
        if (!gens_j.is_array()) throw Error(ErrorCode::ParseError, path + ".generators: expected an array");
        std::vector<ProbabilityVector> gens;
        for (std::size_t i = 0; i < gens_j.size(); ++i)
            gens.push_back(rationals_at(gens_j[i], path + ".generators[" + std::to_string(i) + "]"));
        return sized(at_field(path + ".generators", [&] { return PlausibilityMeasure::credal(std::move(gens)); }));
    }
    case Framework::BeliefFunction: {
        const auto& masses_j = require(j, "masses", path);
        if (!masses_j.is_array()) throw Error(ErrorCode::ParseError, path + ".masses: expected an array");
        std::vector<std::pair<Event, Rational>> masses;
        for (std::size_t i = 0; i < masses_j.size(); ++i) {
            const auto field = path + ".masses[" + std::to_string(i) + "]";
            masses.emplace_back(event_at(require(masses_j[i], "event", field), n, field + ".event"),
                                rational_at(require(masses_j[i], "mass", field), field + ".mass"));
        }
        return at_field(path + ".masses", [&] { return PlausibilityMeasure::belief(space, masses); });
    }
    case Framework::Possibility:
        return sized(at_field(path + ".pi", [&] { return PlausibilityMeasure::possibility(rationals_at(require(j, "pi", path), path + ".pi")); }));
    }
    throw Error(ErrorCode::ValidationError, path + ": unsupported framework");
}

// ---------------------------------------------------------------------------
// Problem files

struct ProblemFile {
    std::size_t states = 0;
    std::vector<Act> acts;
    std::vector<Partition> partitions;
    std::optional<PlausibilityMeasure> measure;
    std::optional<json> measure_spec; // as written, for the command echo
    std::optional<CeOperator> op;
    json options = json::object();
};

inline ProblemFile parse_problem(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "problem must be a JSON object");
    ProblemFile p;
    const auto& states = require(j, "states", "");
    if (!states.is_number_unsigned() || states.get<std::size_t>() == 0)
        throw Error(ErrorCode::ValidationError, "states: expected a positive integer");
    p.states = states.get<std::size_t>();
    at_field("states", [&] { return StateSpace(p.states); });

    auto add_act = [&](const json& a, const std::string& field) {
        auto f = act_at(a, field);
        if (f.size() != p.states)
            throw Error(ErrorCode::ValidationError, field + ": has " + std::to_string(f.size()) + " outcomes, expected " + std::to_string(p.states));
        p.acts.push_back(std::move(f));
    };
    if (j.contains("act")) add_act(j.at("act"), "act");
    if (j.contains("acts")) {
        if (!j.at("acts").is_array()) throw Error(ErrorCode::ParseError, "acts: expected an array");
        for (std::size_t i = 0; i < j.at("acts").size(); ++i) add_act(j.at("acts")[i], "acts[" + std::to_string(i) + "]");
    }
    if (j.contains("partition")) p.partitions.push_back(partition_at(j.at("partition"), p.states, "partition"));
    if (j.contains("partitions")) {
        if (!j.at("partitions").is_array()) throw Error(ErrorCode::ParseError, "partitions: expected an array");
        for (std::size_t i = 0; i < j.at("partitions").size(); ++i)
            p.partitions.push_back(partition_at(j.at("partitions")[i], p.states, "partitions[" + std::to_string(i) + "]"));
    }
    if (j.contains("measure")) {
        p.measure = measure_at(j.at("measure"), p.states, "measure");
        p.measure_spec = j.at("measure");
    }
    if (j.contains("operator")) p.op = operator_at(j.at("operator"), "operator");
    if (j.contains("options")) {
        if (!j.at("options").is_object()) throw Error(ErrorCode::ParseError, "options: expected an object");
        p.options = j.at("options");
    }
    return p;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

inline ProblemFile load_problem(const std::string& path) { return parse_problem(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Report records and their inverse parsers

inline json emit(const ConsistencyVerdict& v) {
    return json{{"holds", v.holds},
                {"framework", std::string(to_string(v.framework))},
                {"act", emit(v.act)},
                {"partition", emit(v.partition)},
                {"direct", emit(v.direct_value)},
                {"folded", emit(v.folded_value)}};
}

inline ConsistencyVerdict parse_verdict(const json& j) {
    auto act = act_at(require(j, "act", "verdict"), "verdict.act");
    return ConsistencyVerdict{require(j, "holds", "verdict").get<bool>(),
                              rational_at(require(j, "direct", "verdict"), "verdict.direct"),
                              rational_at(require(j, "folded", "verdict"), "verdict.folded"),
                              partition_at(require(j, "partition", "verdict"), act.size(), "verdict.partition"),
                              act,
                              parse_framework(require(j, "framework", "verdict").get<std::string>())};
}

inline json emit(const Probe& p) {
    json out{{"framework", std::string(to_string(p.framework))},
             {"act", emit(p.act)},
             {"quantity", p.quantity == Probe::Quantity::Direct ? "direct" : "folded"}};
    if (p.partition) out["partition"] = emit(*p.partition);
    out["value"] = emit(p.value);
    return out;
}

inline Probe parse_probe(const json& j) {
    auto act = act_at(require(j, "act", "probe"), "probe.act");
    const auto quantity = require(j, "quantity", "probe").get<std::string>();
    std::optional<Partition> h;
    if (j.contains("partition")) h = partition_at(j.at("partition"), act.size(), "probe.partition");
    return Probe{parse_framework(require(j, "framework", "probe").get<std::string>()), act, h,
                 quantity == "folded" ? Probe::Quantity::Folded : Probe::Quantity::Direct,
                 rational_at(require(j, "value", "probe"), "probe.value")};
}

inline json emit(const Witness& w) {
    json probes = json::array();
    for (const auto& p : w.probes) probes.push_back(emit(p));
    return json{{"label", w.label}, {"inputs", emit(w.inputs)}, {"left", emit(w.left)}, {"right", emit(w.right)}, {"probes", probes}};
}

inline Witness parse_witness(const json& j) {
    Witness w{require(j, "label", "witness").get<std::string>(), rationals_at(require(j, "inputs", "witness"), "witness.inputs"),
              rational_at(require(j, "left", "witness"), "witness.left"), rational_at(require(j, "right", "witness"), "witness.right"), {}};
    for (const auto& p : require(j, "probes", "witness")) w.probes.push_back(parse_probe(p));
    return w;
}

inline json emit(const LawReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(emit(w));
    return json{{"law", std::string(to_string(r.law))},
                {"passed", r.passed},
                {"cases", r.cases},
                {"violations", r.violations},
                {"witnesses", witnesses}};
}

inline LawReport parse_law_report(const json& j) {
    LawReport r;
    r.law = parse_law(require(j, "law", "report").get<std::string>());
    r.passed = require(j, "passed", "report").get<bool>();
    r.cases = require(j, "cases", "report").get<std::size_t>();
    r.violations = require(j, "violations", "report").get<std::size_t>();
    for (const auto& w : require(j, "witnesses", "report")) r.witnesses.push_back(parse_witness(w));
    return r;
}

inline json emit(const ConsensusReport& r) {
    json out{{"act", emit(r.act)},
             {"credal", emit(r.credal)},
             {"belief", emit(r.belief)},
             {"possibility", emit(r.possibility)},
             {"agree", r.agree}};
    if (r.certain_state) out["certain_state"] = *r.certain_state;
    return out;
}

inline ConsensusReport parse_consensus_report(const json& j) {
    std::optional<std::size_t> state;
    if (j.contains("certain_state")) state = j.at("certain_state").get<std::size_t>();
    return ConsensusReport{act_at(require(j, "act", "consensus"), "consensus.act"),
                           rational_at(require(j, "credal", "consensus"), "consensus.credal"),
                           rational_at(require(j, "belief", "consensus"), "consensus.belief"),
                           rational_at(require(j, "possibility", "consensus"), "consensus.possibility"),
                           require(j, "agree", "consensus").get<bool>(), state};
}

inline json emit(const ConvergenceReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"epsilon", emit(row.epsilon)},
                            {"lower", emit(row.lower)},
                            {"upper", emit(row.upper)},
                            {"value", emit(row.value)},
                            {"difference", emit(row.difference)},
                            {"bound", emit(row.bound)},
                            {"within_bound", row.within_bound}});
    return json{{"act", emit(r.act)},
                {"rule", emit(r.rule)},
                {"target", emit(r.target)},
                {"rows", rows},
                {"bound_asserted", r.bound_asserted},
                {"bound_satisfied", r.bound_satisfied}};
}

inline ConvergenceReport parse_convergence_report(const json& j) {
    ConvergenceReport r{act_at(require(j, "act", "convergence"), "convergence.act"), gamma_at(require(j, "rule", "convergence"), "convergence.rule"),
                        rational_at(require(j, "target", "convergence"), "convergence.target"), {},
                        require(j, "bound_asserted", "convergence").get<bool>(), require(j, "bound_satisfied", "convergence").get<bool>()};
    for (const auto& row : require(j, "rows", "convergence"))
        r.rows.push_back(ConvergenceRow{rational_at(row.at("epsilon"), "row.epsilon"), rational_at(row.at("lower"), "row.lower"),
                                        rational_at(row.at("upper"), "row.upper"), rational_at(row.at("value"), "row.value"),
                                        rational_at(row.at("difference"), "row.difference"), rational_at(row.at("bound"), "row.bound"),
                                        row.at("within_bound").get<bool>()});
    return r;
}

// ---------------------------------------------------------------------------
// Commands

struct CommandResult {
    json report;
    ExitCode exit = ExitCode::Pass;
};

inline json report_header(const std::string& verb, json echo) {
    json command{{"verb", verb}};
    for (auto& [k, v] : echo.items()) command[k] = v;
    return json{{"command", command}, {"engine_version", kEngineVersion}};
}

inline const CeOperator& require_operator(const ProblemFile& p) {
    if (!p.op) throw Error(ErrorCode::ValidationError, "operator: missing");
    return *p.op;
}

/// Certainty equivalent of the problem's act and, for every partition given,
/// the folded value and whether the two agree.
inline CommandResult cmd_evaluate(const ProblemFile& p) {
    if (p.acts.size() != 1) throw Error(ErrorCode::ValidationError, "act: evaluate needs exactly one act");
    if (!p.measure) throw Error(ErrorCode::ValidationError, "measure: missing");
    const auto& op = require_operator(p);
    const auto& f = p.acts.front();

    json echo{{"states", p.states}, {"act", emit(f)}, {"measure", p.measure_spec ? *p.measure_spec : emit(*p.measure)}, {"operator", emit(op)}};
    json report = report_header("evaluate", std::move(echo));
    const auto value = ce(op, *p.measure, f);
    report["ce"] = emit(value);
    json verdicts = json::array();
    bool consistent = true;
    for (const auto& h : p.partitions) {
        auto v = check_sequential(op, *p.measure, f, h);
        consistent = consistent && v.holds;
        verdicts.push_back(emit(v));
    }
    report["verdicts"] = verdicts;
    report["summary"] = json{{"ce", emit(value)}, {"partitions", p.partitions.size()}, {"consistent", consistent}};
    return {report, ExitCode::Pass};
}

inline const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> suites{"gamma-laws", "ev-properties", "set-order", "sequential", "all"};
    return suites;
}

struct CheckOptions {
    std::string suite = "all";
    std::optional<unsigned> grid_denominator;
    std::optional<std::size_t> max_states;
    bool stop_at_first = false;
    std::optional<std::size_t> max_witnesses;
    unsigned workers = 0;
};

inline CommandResult cmd_check(const ProblemFile& p, const CheckOptions& opts) {
    const auto& suites = known_suites();
    if (std::find(suites.begin(), suites.end(), opts.suite) == suites.end())
        throw Error(ErrorCode::UnknownSuite, "\"" + opts.suite + "\"; known suites: gamma-laws, ev-properties, set-order, sequential, all");
    const auto& op = require_operator(p);
    const bool all = opts.suite == "all";

    auto option_or = [&](const char* key, auto fallback) {
        using T = decltype(fallback);
        return p.options.contains(key) ? p.options.at(key).get<T>() : fallback;
    };
    const std::size_t max_witnesses = opts.max_witnesses.value_or(option_or("max_witnesses", std::size_t{64}));
    const std::size_t max_states = opts.max_states.value_or(option_or("max_states", std::size_t{4}));
    const bool stop_at_first = opts.stop_at_first || option_or("stop_at_first", false);
    auto denominator_for = [&](unsigned fallback) { return opts.grid_denominator.value_or(option_or("grid_denominator", fallback)); };

    SearchConfig cfg;
    cfg.state_sizes.clear();
    for (std::size_t n = 2; n <= max_states; ++n) cfg.state_sizes.push_back(n);
    if (cfg.state_sizes.empty()) cfg.state_sizes.push_back(max_states);
    cfg.stop_at_first = stop_at_first;
    cfg.max_witnesses = max_witnesses;
    cfg.workers = opts.workers;
    if (p.measure && p.measure_spec && p.measure_spec->value("vacuous", false)) cfg.frameworks = {p.measure->framework()};

    json echo{{"suite", opts.suite}, {"operator", emit(op)}, {"max_states", max_states}, {"stop_at_first", stop_at_first}};
    json report = report_header("check", std::move(echo));
    json results = json::array();
    std::size_t violations = 0;
    bool passed = true;

    auto add_reports = [&](const std::string& suite, unsigned d, const std::vector<LawReport>& reports) {
        json list = json::array();
        for (const auto& r : reports) {
            passed = passed && r.passed;
            violations += r.violations;
            list.push_back(emit(r));
        }
        results.push_back(json{{"suite", suite}, {"grid_denominator", d}, {"reports", list}});
    };

    if (all || opts.suite == "gamma-laws") {
        const unsigned d = denominator_for(16U);
        add_reports("gamma-laws", d, check_gamma_laws(op.vacuous_rule, d, LawOptions{cfg.lipschitz, max_witnesses}));
    }
    if (all || opts.suite == "ev-properties") {
        cfg.grid_denominator = denominator_for(4U);
        add_reports("ev-properties", cfg.grid_denominator, check_ev_properties(op, cfg));
    }
    if (all || opts.suite == "set-order") {
        const unsigned d = denominator_for(8U);
        const auto max_size = option_or("max_set_size", std::size_t{3});
        add_reports("set-order", d, check_set_order_conditions(op.vacuous_rule, grid_subsets(d, max_size), max_witnesses));
    }
    if (all || opts.suite == "sequential") {
        cfg.grid_denominator = denominator_for(4U);
        const auto failures = check_sequential_exhaustive(op, cfg);
        json list = json::array();
        for (const auto& v : failures) list.push_back(emit(v));
        json frameworks = json::array();
        for (auto fw : cfg.frameworks) frameworks.push_back(std::string(to_string(fw)));
        passed = passed && failures.empty();
        violations += failures.size();
        results.push_back(json{{"suite", "sequential"},
                               {"grid_denominator", cfg.grid_denominator},
                               {"frameworks", frameworks},
                               {"passed", failures.empty()},
                               {"failures", list}});
    }

    report["results"] = results;
    report["summary"] = json{{"passed", passed},
                             {"violations", violations},
                             {"scope", "grid-scale certificate over {k/d}; not a proof over the continuum"}};
    return {report, passed ? ExitCode::Pass : ExitCode::Violations};
}

struct ConsensusOptions {
    std::optional<std::string> mode; // vacuous | certainty | limit
    std::optional<std::vector<Rational>> epsilons;
    std::optional<std::size_t> certain_state;
};

inline CommandResult cmd_consensus(const ProblemFile& p, const ConsensusOptions& opts) {
    if (p.acts.empty()) throw Error(ErrorCode::ValidationError, "act: consensus needs at least one act");
    const auto& op = require_operator(p);

    std::optional<std::vector<Rational>> epsilons = opts.epsilons;
    if (!epsilons && p.options.contains("epsilons")) epsilons = rationals_at(p.options.at("epsilons"), "options.epsilons");
    std::string mode = opts.mode.value_or(p.options.value("mode", epsilons ? "limit" : "vacuous"));

    json echo{{"mode", mode}, {"operator", emit(op)}};
    json report = report_header("consensus", std::move(echo));
    json results = json::array();
    bool ok = true;

    if (mode == "vacuous") {
        for (const auto& f : p.acts) {
            auto r = consensus_check(op.vacuous_rule, f);
            ok = ok && r.agree;
            results.push_back(emit(r));
        }
    } else if (mode == "certainty") {
        std::optional<std::size_t> state = opts.certain_state;
        if (!state && p.options.contains("certain_state")) state = p.options.at("certain_state").get<std::size_t>();
        if (state && *state >= p.states) throw Error(ErrorCode::ValidationError, "certain_state: outside the state space");
        for (const auto& f : p.acts)
            for (std::size_t s = 0; s < p.states; ++s) {
                if (state && s != *state) continue;
                auto r = certainty_check(op.vacuous_rule, f, s);
                ok = ok && r.agree && r.credal == f[s];
                results.push_back(emit(r));
            }
    } else if (mode == "limit") {
        if (!epsilons) throw Error(ErrorCode::ValidationError, "options.epsilons: limit mode needs an epsilon list");
        const auto family = at_field("options", [&] {
            if (p.options.contains("base")) return ContaminationFamily(rationals_at(p.options.at("base"), "options.base"), *epsilons);
            return ContaminationFamily::uniform(StateSpace(p.states), *epsilons);
        });
        for (const auto& f : p.acts) {
            auto r = limit_check(op, f, family);
            if (r.bound_asserted) ok = ok && r.bound_satisfied;
            results.push_back(emit(r));
        }
    } else {
        throw Error(ErrorCode::ValidationError, "options.mode: unknown mode \"" + mode + "\"");
    }

    report["results"] = results;
    report["summary"] = json{{"mode", mode}, {"acts", p.acts.size()}, {"passed", ok}};
    return {report, ok ? ExitCode::Pass : ExitCode::Violations};
}

inline json error_report(const Error& e) {
    return json{{"engine_version", kEngineVersion}, {"error", json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
}

// ---------------------------------------------------------------------------
// Replay through the evaluate command

/// Problem file that makes `evaluate` compute a probe's value.
inline json probe_problem(const Probe& probe, const CeOperator& op) {
    json j{{"states", probe.act.size()},
           {"act", emit(probe.act)},
           {"measure", json{{"framework", std::string(to_string(probe.framework))}, {"vacuous", true}}},
           {"operator", emit(op)}};
    if (probe.partition) j["partition"] = emit(*probe.partition);
    return j;
}

inline Utility evaluate_probe_via_cli(const Probe& probe, const CeOperator& op) {
    const auto result = cmd_evaluate(parse_problem(probe_problem(probe, op)));
    if (probe.quantity == Probe::Quantity::Direct) return parse_rational(result.report.at("ce").get<std::string>());
    return parse_rational(result.report.at("verdicts").at(0).at("folded").get<std::string>());
}

// ---------------------------------------------------------------------------
// Table rendering

inline std::string render_table(const json& report) {
    std::ostringstream out;
    auto str = [](const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); };
    if (report.contains("error")) {
        out << "error: " << str(report["error"]["message"]) << "\n";
        return out.str();
    }
    const auto verb = report["command"]["verb"].get<std::string>();
    out << verb << " (engine " << str(report["engine_version"]) << ")\n";
    if (verb == "evaluate") {
        out << "  ce = " << str(report["ce"]) << "\n";
        for (const auto& v : report["verdicts"])
            out << "  partition " << v["partition"].dump() << ": direct " << str(v["direct"]) << ", folded " << str(v["folded"]) << "  "
                << (v["holds"].get<bool>() ? "consistent" : "INCONSISTENT") << "\n";
    } else if (verb == "check") {
        for (const auto& suite : report["results"]) {
            out << "  [" << str(suite["suite"]) << ", d=" << str(suite["grid_denominator"]) << "]\n";
            if (suite.contains("reports")) {
                for (const auto& r : suite["reports"]) {
                    out << "    " << str(r["law"]) << ": " << (r["passed"].get<bool>() ? "pass" : "FAIL") << "  (" << str(r["cases"]) << " cases, "
                        << str(r["violations"]) << " violations)\n";
                    if (!r["witnesses"].empty()) {
                        const auto& w = r["witnesses"][0];
                        out << "      first witness " << w["inputs"].dump() << (str(w["label"]).empty() ? "" : " " + str(w["label"])) << ": left "
                            << str(w["left"]) << " vs right " << str(w["right"]) << "\n";
                    }
                }
            } else {
                out << "    SequentialConsistency: " << (suite["passed"].get<bool>() ? "pass" : "FAIL") << "  (" << suite["failures"].size()
                    << " failures)\n";
                if (!suite["failures"].empty()) {
                    const auto& v = suite["failures"][0];
                    out << "      first failure " << str(v["framework"]) << " act " << v["act"].dump() << " partition " << v["partition"].dump()
                        << ": direct " << str(v["direct"]) << " vs folded " << str(v["folded"]) << "\n";
                }
            }
        }
    } else if (verb == "consensus") {
        for (const auto& r : report["results"]) {
            if (r.contains("rows")) {
                out << "  act " << r["act"].dump() << " target " << str(r["target"]) << (r["bound_asserted"].get<bool>() ? "" : " (informational)") << "\n";
                for (const auto& row : r["rows"])
                    out << "    eps " << str(row["epsilon"]) << ": [" << str(row["lower"]) << ", " << str(row["upper"]) << "] -> "
                        << str(row["value"]) << "  |diff| " << str(row["difference"]) << " <= " << str(row["bound"]) << "  "
                        << (row["within_bound"].get<bool>() ? "ok" : "VIOLATED") << "\n";
            } else {
                out << "  act " << r["act"].dump();
                if (r.contains("certain_state")) out << " certain@" << str(r["certain_state"]);
                out << ": credal " << str(r["credal"]) << ", belief " << str(r["belief"]) << ", possibility " << str(r["possibility"]) << "  "
                    << (r["agree"].get<bool>() ? "agree" : "DISAGREE") << "\n";
            }
        }
    }
    if (report.contains("summary")) out << "  summary: " << report["summary"].dump() << "\n";
    return out.str();
}

} // namespace ignorance::cli
