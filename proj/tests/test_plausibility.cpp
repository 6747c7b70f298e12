#include "ignorance/plausibility.hpp"

#include <gtest/gtest.h>

#include <functional>

namespace ignorance {
namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

template <class Fn>
ErrorCode code_of(Fn fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::InvalidArgument;
}

std::vector<PlausibilityMeasure> sample_measures(std::size_t n) {
    const StateSpace space(n);
    std::vector<PlausibilityMeasure> out;
    for (auto fw : kVacuousFrameworks) out.push_back(vacuous(space, fw));
    ProbabilityVector uniform(n, q(1, static_cast<long long>(n)));
    out.push_back(PlausibilityMeasure::probability(uniform));
    ProbabilityVector skew(n, 0);
    skew[0] = q(1, 2);
    skew[n - 1] += q(1, 2);
    out.push_back(PlausibilityMeasure::credal({uniform, skew}));
    std::vector<std::pair<Event, Rational>> masses{{Event{0}, q(1, 3)}, {Event::full(space), q(2, 3)}};
    if (n > 1) masses = {{Event{0}, q(1, 3)}, {Event{0, n - 1}, q(1, 6)}, {Event::full(space), q(1, 2)}};
    out.push_back(PlausibilityMeasure::belief(space, masses));
    std::vector<Rational> pi(n, q(1, 4));
    pi[0] = 1;
    out.push_back(PlausibilityMeasure::possibility(pi));
    return out;
}

TEST(ZPair, Invariants) {
    EXPECT_EQ(ZPair::top(), ZPair(1, 1));
    EXPECT_EQ(ZPair::bottom(), ZPair(0, 0));
    EXPECT_EQ(ZPair::vacuous_element(), ZPair(0, 1));
    EXPECT_THROW(ZPair(q(3, 4), q(1, 4)), Error);
    EXPECT_THROW(ZPair(0, 2), Error);
}

TEST(Evaluate, FullSimplexSingleton) {
    EXPECT_EQ(evaluate(vacuous(StateSpace(3), Framework::CredalSet), Event{0}), ZPair(0, 1));
}

TEST(Evaluate, VacuousBeliefFunction) {
    const StateSpace space(2);
    auto m = PlausibilityMeasure::belief(space, {{Event{0, 1}, Rational(1)}});
    EXPECT_EQ(evaluate(m, Event{0}), ZPair(0, 1));
}

TEST(Evaluate, ProbabilityAdditivity) {
    auto p = PlausibilityMeasure::probability({q(1, 3), q(1, 3), q(1, 3)});
    EXPECT_EQ(evaluate(p, Event{0, 1}), ZPair(q(2, 3), q(2, 3)));
}

TEST(Evaluate, BeliefAndPlausibility) {
    const StateSpace space(3);
    auto m = PlausibilityMeasure::belief(space, {{Event{0}, q(1, 2)}, {Event{1, 2}, q(1, 4)}, {Event{0, 1, 2}, q(1, 4)}});
    EXPECT_EQ(evaluate(m, Event{0}), ZPair(q(1, 2), q(3, 4)));
    EXPECT_EQ(evaluate(m, Event{1}), ZPair(0, q(1, 2)));
    EXPECT_EQ(evaluate(m, Event{1, 2}), ZPair(q(1, 4), q(1, 2)));
}

TEST(Evaluate, NecessityPossibility) {
    auto m = PlausibilityMeasure::possibility({1, q(1, 2), 0});
    EXPECT_EQ(evaluate(m, Event{0}), ZPair(q(1, 2), 1));
    EXPECT_EQ(evaluate(m, Event{1, 2}), ZPair(0, q(1, 2)));
    EXPECT_EQ(evaluate(m, Event{2}), ZPair(0, 0));
}

TEST(Evaluate, EmptyAndFullAreFixed) {
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& m : sample_measures(n)) {
            EXPECT_EQ(evaluate(m, Event{}), ZPair::bottom());
            EXPECT_EQ(evaluate(m, Event::full(m.space())), ZPair::top());
        }
}

TEST(Evaluate, MonotoneInTheEvent) {
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& m : sample_measures(n)) {
            const std::uint64_t full = Event::full(m.space()).bits();
            for (std::uint64_t a = 0; a <= full; ++a)
                for (std::uint64_t b = a;; b = (b + 1) | a) {
                    EXPECT_TRUE(evaluate(m, Event(b)).dominates(evaluate(m, Event(a))));
                    if (b == full) break;
                }
        }
}

TEST(Vacuous, Representations) {
    auto pi = vacuous(StateSpace(3), Framework::Possibility);
    EXPECT_EQ(std::get<PossibilityPayload>(pi.payload()).pi, (std::vector<Rational>{1, 1, 1}));
    auto bf = vacuous(StateSpace(2), Framework::BeliefFunction);
    const auto& masses = std::get<BeliefPayload>(bf.payload()).masses;
    ASSERT_EQ(masses.size(), 1U);
    EXPECT_EQ(masses.begin()->first, (Event{0, 1}));
    EXPECT_EQ(masses.begin()->second, 1);
    EXPECT_EQ(code_of([] { vacuous(StateSpace(3), Framework::Probability); }), ErrorCode::NoVacuousRepresentation);
}

TEST(IsVacuous, Verdicts) {
    EXPECT_TRUE(is_vacuous(vacuous(StateSpace(3), Framework::BeliefFunction)).vacuous);

    auto fair = is_vacuous(PlausibilityMeasure::probability({q(1, 2), q(1, 2)}));
    EXPECT_FALSE(fair.vacuous);
    ASSERT_TRUE(fair.witness);
    EXPECT_EQ(*fair.witness, Event{0});

    // Envelope over the two vertices: <0,1> on both singletons.
    EXPECT_TRUE(is_vacuous(PlausibilityMeasure::credal({{1, 0}, {0, 1}})).vacuous);
}

TEST(IsVacuous, UnitVectorGeneratorsEqualFullSimplex) {
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<ProbabilityVector> gens;
        for (std::size_t s = 0; s < n; ++s) {
            ProbabilityVector e(n, 0);
            e[s] = 1;
            gens.push_back(e);
        }
        EXPECT_TRUE(is_vacuous(PlausibilityMeasure::credal(gens)).vacuous);
    }
}

TEST(IsVacuous, Cap) {
    EXPECT_EQ(code_of([] { is_vacuous(vacuous(StateSpace(13), Framework::Possibility)); }), ErrorCode::CapExceeded);
    EXPECT_TRUE(is_vacuous(vacuous(StateSpace(12), Framework::Possibility)).vacuous);
}

TEST(IsVacuous, WitnessIffNotVacuous) {
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& m : sample_measures(n)) {
            auto v = is_vacuous(m);
            EXPECT_EQ(v.vacuous, !v.witness.has_value());
        }
}

TEST(Restrict, VacuousPossibilityStaysVacuous) {
    const StateSpace space(3);
    const Partition h(space, {Event{0}, Event{1, 2}});
    auto r = restrict(vacuous(space, Framework::Possibility), h);
    EXPECT_EQ(r.space().size(), 2U);
    EXPECT_TRUE(is_vacuous(r).vacuous);
}

TEST(Restrict, Marginalization) {
    const StateSpace space(3);
    const Partition h(space, {Event{0}, Event{1, 2}});
    EXPECT_EQ(restrict(PlausibilityMeasure::probability({q(1, 2), q(1, 4), q(1, 4)}), h),
              PlausibilityMeasure::probability({q(1, 2), q(1, 2)}));
}

TEST(Restrict, TrivialPartition) {
    for (const auto& m : sample_measures(3)) {
        auto r = restrict(m, Partition::trivial(m.space()));
        EXPECT_EQ(r.space().size(), 1U);
        EXPECT_EQ(evaluate(r, Event{0}), ZPair::top());
    }
}

// The restriction must agree with the original measure on every union of
// blocks, for every framework and partition, including belief functions
// with overlapping focal elements.
TEST(Restrict, AgreesOnBlockUnions) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const StateSpace space(n);
        for (const auto& m : sample_measures(n))
            for (const auto& h : enumerate_partitions(space)) {
                auto mismatch = restriction_mismatch(m, h, restrict(m, h));
                EXPECT_FALSE(mismatch) << to_string(m.framework()) << " " << to_string(h);
            }
    }
}

// Every mass assignment in quarters over the non-empty events of n <= 4
// states: coarsening focal sets keeps Bel and Pl on all block unions.
TEST(Restrict, BeliefCoarseningIsExactForAllQuarterMasses) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const StateSpace space(n);
        const auto partitions = enumerate_partitions(space);
        const std::uint64_t events = (std::uint64_t{1} << n) - 1;
        std::size_t checked = 0;
        std::vector<std::pair<Event, Rational>> masses;
        std::function<void(std::uint64_t, int)> spread = [&](std::uint64_t bits, int quarters_left) {
            if (quarters_left == 0) {
                const auto m = PlausibilityMeasure::belief(space, masses);
                for (const auto& h : partitions) {
                    ++checked;
                    ASSERT_FALSE(restriction_mismatch(m, h, restrict(m, h))) << to_string(h);
                }
                return;
            }
            if (bits > events) return;
            for (int k = quarters_left; k >= 0; --k) {
                if (k > 0) masses.emplace_back(Event(bits), q(k, 4));
                spread(bits + 1, quarters_left - k);
                if (k > 0) masses.pop_back();
            }
        };
        spread(1, 4);
        EXPECT_GT(checked, 0U);
    }
}

TEST(Condition, VacuousBeliefStaysVacuous) {
    auto c = condition(vacuous(StateSpace(3), Framework::BeliefFunction), Event{1, 2});
    const auto& masses = std::get<BeliefPayload>(c.payload()).masses;
    ASSERT_EQ(masses.size(), 1U);
    EXPECT_EQ(masses.begin()->first, (Event{0, 1}));
    EXPECT_TRUE(is_vacuous(c).vacuous);
}

TEST(Condition, Bayes) {
    EXPECT_EQ(condition(PlausibilityMeasure::probability({q(1, 2), q(1, 4), q(1, 4)}), Event{1, 2}),
              PlausibilityMeasure::probability({q(1, 2), q(1, 2)}));
}

TEST(Condition, Errors) {
    auto m = vacuous(StateSpace(3), Framework::BeliefFunction);
    EXPECT_EQ(code_of([&] { condition(m, Event{}); }), ErrorCode::EmptyEvent);
    auto p = PlausibilityMeasure::probability({1, 0, 0});
    EXPECT_EQ(code_of([&] { condition(p, Event{1, 2}); }), ErrorCode::ZeroPlausibilityEvent);
    auto pi = PlausibilityMeasure::possibility({1, 0, 0});
    EXPECT_EQ(code_of([&] { condition(pi, Event{2}); }), ErrorCode::ZeroPlausibilityEvent);
}

TEST(Condition, CredalDropsNullGenerators) {
    auto m = PlausibilityMeasure::credal({{1, 0, 0}, {0, q(1, 2), q(1, 2)}, {0, 1, 0}});
    auto c = condition(m, Event{1, 2});
    const auto& gens = std::get<CredalPayload>(c.payload()).generators;
    ASSERT_EQ(gens.size(), 2U);
    EXPECT_EQ(gens[0], (ProbabilityVector{q(1, 2), q(1, 2)}));
    EXPECT_EQ(gens[1], (ProbabilityVector{1, 0}));
}

TEST(Condition, DempsterRule) {
    const StateSpace space(3);
    auto m = PlausibilityMeasure::belief(space, {{Event{0}, q(1, 2)}, {Event{1, 2}, q(1, 4)}, {Event{0, 1}, q(1, 4)}});
    // Pl({1,2}) = 1/2; focal {1,2} -> {0,1} re-indexed, {0,1} -> {0}.
    auto c = condition(m, Event{1, 2});
    const auto& masses = std::get<BeliefPayload>(c.payload()).masses;
    ASSERT_EQ(masses.size(), 2U);
    EXPECT_EQ(masses.at(Event{0}), q(1, 2));
    EXPECT_EQ(masses.at(Event{0, 1}), q(1, 2));
}

TEST(Condition, QuantitativePossibility) {
    auto c = condition(PlausibilityMeasure::possibility({1, q(1, 2), q(1, 4)}), Event{1, 2});
    EXPECT_EQ(c, PlausibilityMeasure::possibility({1, q(1, 2)}));
}

TEST(Closure, RestrictionAndConditioningOfVacuousBelief) {
    for (std::size_t n = 1; n <= 5; ++n) {
        const StateSpace space(n);
        const auto partitions = enumerate_partitions(space);
        for (auto fw : kVacuousFrameworks) {
            const auto m = vacuous(space, fw);
            for (const auto& h : partitions) EXPECT_TRUE(is_vacuous(restrict(m, h)).vacuous);
            for (std::uint64_t a = 1; a < Event::full(space).bits(); ++a) EXPECT_TRUE(is_vacuous(condition(m, Event(a))).vacuous);
            for (std::uint64_t a = 1; a < Event::full(space).bits(); ++a) EXPECT_EQ(evaluate(m, Event(a)), ZPair::vacuous_element());
        }
    }
}

TEST(Validation, Payloads) {
    EXPECT_THROW(PlausibilityMeasure::probability({q(1, 2), q(1, 4)}), Error);
    EXPECT_THROW(PlausibilityMeasure::probability({q(3, 2), q(-1, 2)}), Error);
    EXPECT_THROW(PlausibilityMeasure::credal({{1, 0}, {1, 0, 0}}), Error);
    EXPECT_THROW(PlausibilityMeasure::belief(StateSpace(2), {{Event{}, Rational(1)}}), Error);
    EXPECT_THROW(PlausibilityMeasure::belief(StateSpace(2), {{Event{0}, q(1, 2)}}), Error);
    EXPECT_THROW(PlausibilityMeasure::possibility({q(1, 2), q(1, 2)}), Error);
}

} // namespace
} // namespace ignorance
