#include "ignorance/consistency.hpp"

#include <gtest/gtest.h>

namespace ignorance {
namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

const LawReport& find(const std::vector<LawReport>& reports, Law law) {
    for (const auto& r : reports)
        if (r.law == law) return r;
    throw std::runtime_error("missing report");
}

bool has_witness(const LawReport& r, const std::vector<Rational>& inputs, const std::string& label = "") {
    for (const auto& w : r.witnesses)
        if (w.inputs == inputs && (label.empty() || w.label == label)) return true;
    return false;
}

TEST(CheckSequential, AnchoredHalfFoldsConsistently) {
    const StateSpace space(3);
    const Partition h(space, {Event{0}, Event{1, 2}});
    auto v = check_sequential(make_operator(GammaFunction::anchored(q(1, 2))), vacuous(space, Framework::BeliefFunction), Act{0, 0, 1}, h);
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.direct_value, q(1, 2));
    EXPECT_EQ(v.folded_value, q(1, 2));
}

TEST(CheckSequential, HurwiczFoldsInconsistently) {
    const StateSpace space(3);
    const Partition h(space, {Event{0}, Event{1, 2}});
    auto v = check_sequential(make_operator(GammaFunction::hurwicz(q(1, 2))), vacuous(space, Framework::BeliefFunction), Act{0, 0, 1}, h);
    EXPECT_FALSE(v.holds);
    EXPECT_EQ(v.direct_value, q(1, 2));
    EXPECT_EQ(v.folded_value, q(1, 4));
}

TEST(CheckSequential, OneBlockFoldIsTrivial) {
    const auto f = Act{q(1, 4), 1, 0};
    const auto h = Partition::trivial(f.space());
    for (const auto& gamma : {GammaFunction::hurwicz(q(1, 3)), GammaFunction::median(), GammaFunction::anchored(q(3, 4))}) {
        for (auto fw : kVacuousFrameworks) EXPECT_TRUE(check_sequential(make_operator(gamma), vacuous(f.space(), fw), f, h).holds);
        EXPECT_TRUE(check_sequential(make_operator(gamma), PlausibilityMeasure::probability({q(1, 2), q(1, 4), q(1, 4)}), f, h).holds);
    }
}

TEST(CheckSequential, ProbabilityIsIteratedExpectation) {
    const auto p = PlausibilityMeasure::probability({q(1, 8), q(3, 8), q(1, 4), q(1, 4)});
    const auto op = make_operator(GammaFunction::hurwicz(q(1, 2)));
    for (const auto& f : enumerate_grid_acts(StateSpace(4), 2))
        for (const auto& h : enumerate_partitions(StateSpace(4))) ASSERT_TRUE(check_sequential(op, p, f, h).holds);
}

TEST(SequentialSweep, AnchoredRulesPass) {
    SearchConfig cfg;
    for (const auto& a : unit_grid(4))
        EXPECT_TRUE(check_sequential_exhaustive(make_operator(GammaFunction::anchored(a)), cfg).empty()) << format_rational(a);
}

TEST(SequentialSweep, HurwiczFailsFirstOnAThreeStateTwoValuedAct) {
    SearchConfig cfg;
    cfg.stop_at_first = true;
    auto failures = check_sequential_exhaustive(make_operator(GammaFunction::hurwicz(q(1, 2))), cfg);
    ASSERT_EQ(failures.size(), 1U);
    const auto& first = failures.front();
    EXPECT_EQ(first.act, (Act{0, 0, q(1, 4)}));
    EXPECT_EQ(to_string(first.partition), "{{0,2},{1}}");
    EXPECT_EQ(outcome_set(first.act).size(), 2U);
    EXPECT_EQ(first.direct_value, q(1, 8));
    EXPECT_EQ(first.folded_value, q(1, 16));
}

TEST(SequentialSweep, MedianFails) {
    SearchConfig cfg;
    cfg.state_sizes = {3};
    cfg.grid_denominator = 2;
    auto failures = check_sequential_exhaustive(make_operator(GammaFunction::median()), cfg);
    EXPECT_FALSE(failures.empty());
}

TEST(SequentialSweep, OrderIndependentOfWorkerCount) {
    SearchConfig cfg;
    cfg.workers = 1;
    const auto op = make_operator(GammaFunction::hurwicz(q(1, 3)));
    const auto serial = check_sequential_exhaustive(op, cfg);
    cfg.workers = 4;
    const auto parallel = check_sequential_exhaustive(op, cfg);
    ASSERT_FALSE(serial.empty());
    EXPECT_EQ(serial, parallel);
    cfg.stop_at_first = true;
    EXPECT_EQ(check_sequential_exhaustive(op, cfg).front(), serial.front());
}

TEST(SequentialSweep, Caps) {
    SearchConfig cfg;
    cfg.state_sizes = {9};
    try {
        check_sequential_exhaustive(make_operator(GammaFunction::max_rule()), cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
    }
}

TEST(GammaLaws, AnchoredPasses) {
    for (const auto& a : {q(0), q(3, 16), q(1, 2), q(1)}) EXPECT_TRUE(all_passed(check_gamma_laws(GammaFunction::anchored(a), 16)));
    EXPECT_TRUE(all_passed(check_gamma_laws(GammaFunction::min_rule(), 16)));
    EXPECT_TRUE(all_passed(check_gamma_laws(GammaFunction::max_rule(), 16)));
}

TEST(GammaLaws, HurwiczFailsIterationAtZeroOne) {
    auto reports = check_gamma_laws(GammaFunction::hurwicz(q(1, 2)), 16, {1, 0});
    EXPECT_TRUE(find(reports, Law::GammaIdempotence).passed);
    EXPECT_TRUE(find(reports, Law::GammaMonotone).passed);
    EXPECT_TRUE(find(reports, Law::LipschitzContinuity).passed);
    const auto& iteration = find(reports, Law::GammaIteration);
    ASSERT_FALSE(iteration.passed);
    bool found = false;
    for (const auto& w : iteration.witnesses)
        if (w.label == "first" && w.inputs == std::vector<Rational>{0, 1}) {
            EXPECT_EQ(w.left, q(1, 2));
            EXPECT_EQ(w.right, q(1, 4));
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(GammaLaws, WitnessTruncationKeepsCounts) {
    auto full = check_gamma_laws(GammaFunction::hurwicz(q(1, 2)), 8, {1, 0});
    auto capped = check_gamma_laws(GammaFunction::hurwicz(q(1, 2)), 8, {1, 3});
    const auto& a = find(full, Law::GammaIteration);
    const auto& b = find(capped, Law::GammaIteration);
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(b.witnesses.size(), 3U);
    EXPECT_EQ(a.violations, a.witnesses.size());
}

TEST(GammaLaws, NotTabulated) {
    try {
        check_gamma_laws(GammaFunction::tabulated({{{0, 1}, q(1, 2)}}), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotTabulated);
    }
}

TEST(EvProperties, AnchoredAndMaxPass) {
    SearchConfig cfg;
    for (const auto& a : unit_grid(4)) EXPECT_TRUE(all_passed(check_ev_properties(make_operator(GammaFunction::anchored(a)), cfg)));
    EXPECT_TRUE(all_passed(check_ev_properties(make_operator(GammaFunction::max_rule()), cfg)));
}

TEST(EvProperties, MedianFailsRange) {
    SearchConfig cfg;
    auto reports = check_ev_properties(make_operator(GammaFunction::median()), cfg);
    const auto& range = find(reports, Law::Range);
    ASSERT_FALSE(range.passed);
    bool found = false;
    for (const auto& w : range.witnesses)
        if (w.inputs == std::vector<Rational>{0, q(1, 4), 1}) {
            EXPECT_EQ(w.left, q(1, 4));
            EXPECT_EQ(w.right, 0);
            found = true;
        }
    EXPECT_TRUE(found);
    EXPECT_TRUE(find(reports, Law::Unanimity).passed);
}

TEST(SetOrder, AnchoredPassesIndependenceConditions) {
    const auto family = grid_subsets(8, 3);
    for (const auto& lambda : unit_grid(8)) {
        auto reports = check_set_order_conditions(GammaFunction::anchored(lambda), family);
        EXPECT_TRUE(find(reports, Law::ConditionI).passed);
        EXPECT_TRUE(find(reports, Law::ConditionSI).passed);
    }
}

TEST(SetOrder, HurwiczSatisfiesIButNotSI) {
    auto reports = check_set_order_conditions(GammaFunction::hurwicz(q(1, 2)), grid_subsets(8, 3));
    EXPECT_TRUE(find(reports, Law::ConditionI).passed);
    const auto& si = find(reports, Law::ConditionSI);
    ASSERT_FALSE(si.passed);
    ASSERT_FALSE(si.witnesses.empty());
    EXPECT_LT(si.witnesses.front().left, si.witnesses.front().right);
}

TEST(SetOrder, MaxSatisfiesMMinDoesNot) {
    const auto family = grid_subsets(8, 3);
    EXPECT_TRUE(find(check_set_order_conditions(GammaFunction::max_rule(), family), Law::ConditionM).passed);
    const auto& m = find(check_set_order_conditions(GammaFunction::min_rule(), family), Law::ConditionM);
    ASSERT_FALSE(m.passed);
    const auto& w = m.witnesses.front();
    EXPECT_LT(w.left, w.right); // min B < min A with A ⊂ B
}

TEST(SetOrder, MedianSatisfiesIButNotSI) {
    auto reports = check_set_order_conditions(GammaFunction::median(), grid_subsets(8, 3));
    EXPECT_TRUE(find(reports, Law::ConditionI).passed);
    EXPECT_FALSE(find(reports, Law::ConditionSI).passed);
}

TEST(Replay, EveryWitnessReproduces) {
    SearchConfig cfg;
    std::vector<std::pair<CeOperator, std::vector<LawReport>>> runs;
    const auto hurwicz = make_operator(GammaFunction::hurwicz(q(1, 2)));
    const auto median = make_operator(GammaFunction::median());
    const auto min_rule = make_operator(GammaFunction::min_rule());
    runs.emplace_back(hurwicz, check_gamma_laws(hurwicz.vacuous_rule, 16));
    runs.emplace_back(median, check_ev_properties(median, cfg));
    runs.emplace_back(hurwicz, check_set_order_conditions(hurwicz.vacuous_rule, grid_subsets(8, 3)));
    runs.emplace_back(min_rule, check_set_order_conditions(min_rule.vacuous_rule, grid_subsets(8, 3)));
    std::size_t replayed = 0;
    for (const auto& [op, reports] : runs)
        for (const auto& r : reports)
            for (const auto& w : r.witnesses) {
                auto again = replay_witness(r.law, w, [&](const Probe& p) { return evaluate_probe(op, p); });
                EXPECT_TRUE(again.probes_match) << to_string(r.law);
                EXPECT_EQ(again.left, w.left) << to_string(r.law);
                EXPECT_EQ(again.right, w.right) << to_string(r.law);
                ++replayed;
            }
    EXPECT_GT(replayed, 0U);

    for (const auto& v : check_sequential_exhaustive(hurwicz, cfg)) {
        auto [direct, folded] = replay_verdict(hurwicz, v);
        ASSERT_EQ(direct, v.direct_value);
        ASSERT_EQ(folded, v.folded_value);
    }
}

TEST(Synthesis, LawfulTablesAreExactlyTheAnchoredRules) {
    auto survivors = enumerate_lawful_gammas(4);
    ASSERT_EQ(survivors.size(), 5U);
    std::set<Rational> anchors;
    for (const auto& g : survivors) {
        auto a = matching_anchor(g, 4);
        ASSERT_TRUE(a);
        EXPECT_EQ(*a, gamma_apply(g, ZPair(0, 1)));
        anchors.insert(*a);
    }
    const auto quarter = unit_grid(4);
    EXPECT_EQ(anchors, (std::set<Rational>(quarter.begin(), quarter.end())));
}

TEST(Synthesis, ContinuityIsNeededOnTheGrid) {
    // Frozen from an independent brute-force enumeration of all 5^15 tables
    // (idempotence, monotonicity and the iteration identities only).
    auto survivors = enumerate_lawful_gammas(4, false);
    EXPECT_EQ(survivors.size(), 42U);
    std::size_t anchored = 0;
    for (const auto& g : survivors) anchored += matching_anchor(g, 4).has_value();
    EXPECT_EQ(anchored, 5U);
}

TEST(Synthesis, SmallGrids) {
    EXPECT_EQ(enumerate_lawful_gammas(1).size(), 2U);
    EXPECT_EQ(enumerate_lawful_gammas(2).size(), 3U);
}

// A vacuous rule passes the sequential sweep and the operator properties
// exactly when it coincides with an anchored rule on the grid.
TEST(Properties, SequentialPlusPropertiesIffAnchored) {
    SearchConfig cfg;
    cfg.state_sizes = {2, 3};
    cfg.frameworks = {Framework::BeliefFunction};
    std::vector<GammaFunction> candidates{GammaFunction::hurwicz(q(1, 4)), GammaFunction::median(), GammaFunction::min_rule(),
                                          GammaFunction::max_rule()};
    for (const auto& a : unit_grid(4)) candidates.push_back(GammaFunction::anchored(a));
    for (const auto& g : enumerate_lawful_gammas(4, false)) candidates.push_back(g);
    for (const auto& g : candidates) {
        const auto op = make_operator(g);
        const bool passes = check_sequential_exhaustive(op, cfg).empty() && all_passed(check_ev_properties(op, cfg));
        const bool anchored = !g.is<GammaFunction::Median>() && matching_anchor(g, 4).has_value();
        EXPECT_EQ(passes, anchored) << to_string(g);
    }
}

TEST(Determinism, RepeatedRunsAreIdentical) {
    SearchConfig cfg;
    const auto op = make_operator(GammaFunction::median());
    EXPECT_EQ(check_ev_properties(op, cfg), check_ev_properties(op, cfg));
    EXPECT_EQ(check_sequential_exhaustive(op, cfg), check_sequential_exhaustive(op, cfg));
}

} // namespace
} // namespace ignorance
