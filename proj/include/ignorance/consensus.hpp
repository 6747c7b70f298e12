#pragma once

// Cross-framework agreement checks: the certainty equivalent of an act must
// not depend on which framework expresses certainty or total ignorance, and
// it must approach the vacuous value along a contamination family that
// converges to the full simplex.

#include "ignorance/acts.hpp"
#include "ignorance/ce_ops.hpp"
#include "ignorance/error.hpp"
#include "ignorance/plausibility.hpp"
#include "ignorance/rational.hpp"

#include <optional>
#include <vector>

namespace ignorance {

struct ConsensusReport {
    Act act;
    Utility credal;
    Utility belief;
    Utility possibility;
    bool agree = false;
    std::optional<std::size_t> certain_state; // set for certainty checks

    friend bool operator==(const ConsensusReport&, const ConsensusReport&) = default;
};

/// Dirac structure at `state`: a point mass, a belief function with the
/// singleton focus, or a possibility distribution that is 1 only at `state`.
inline PlausibilityMeasure certainty(const StateSpace& space, Framework fw, std::size_t state) {
    if (state >= space.size()) throw Error(ErrorCode::DomainMismatch, "certain state outside the state space");
    std::vector<Rational> point(space.size(), Rational(0));
    point[state] = 1;
    switch (fw) {
    case Framework::Probability: return PlausibilityMeasure::probability(point);
    case Framework::CredalSet: return PlausibilityMeasure::credal({point});
    case Framework::BeliefFunction: return PlausibilityMeasure::belief(space, {{Event::singleton(state), Rational(1)}});
    case Framework::Possibility: return PlausibilityMeasure::possibility(point);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown framework");
}

namespace detail {

inline ConsensusReport make_consensus(const CeOperator& op, const Act& f, const std::vector<PlausibilityMeasure>& measures,
                                      std::optional<std::size_t> state) {
    auto credal = ce(op, measures[0], f);
    auto belief = ce(op, measures[1], f);
    auto possibility = ce(op, measures[2], f);
    const bool agree = credal == belief && belief == possibility;
    return ConsensusReport{f, std::move(credal), std::move(belief), std::move(possibility), agree, state};
}

} // namespace detail

inline ConsensusReport consensus_check(const GammaFunction& gamma, const Act& f) {
    const auto space = f.space();
    return detail::make_consensus(make_operator(gamma), f,
                                  {vacuous(space, Framework::CredalSet), vacuous(space, Framework::BeliefFunction),
                                   vacuous(space, Framework::Possibility)},
                                  std::nullopt);
}

/// Certainty representations are not vacuous, so the operator evaluates
/// them through the lower/upper expectation pair.
inline ConsensusReport certainty_check(const GammaFunction& gamma, const Act& f, std::size_t state) {
    const auto space = f.space();
    return detail::make_consensus(make_operator(gamma, true), f,
                                  {certainty(space, Framework::CredalSet, state), certainty(space, Framework::BeliefFunction, state),
                                   certainty(space, Framework::Possibility, state)},
                                  state);
}

/// Linear contamination of a base probability toward the full simplex:
/// M_ε = {(1-ε)·p0 + ε·q}, generated by (1-ε)·p0 + ε·e_s.
class ContaminationFamily {
public:
    ContaminationFamily(ProbabilityVector base, std::vector<Rational> weights)
        : base_(std::move(base)), weights_(std::move(weights)) {
        detail::validate_probability(base_, StateSpace(base_.size()).size(), "contamination base");
        if (weights_.empty()) throw Error(ErrorCode::InvalidArgument, "contamination family needs at least one weight");
        for (std::size_t k = 0; k < weights_.size(); ++k) {
            if (weights_[k] <= 0 || weights_[k] > 1)
                throw Error(ErrorCode::InvalidArgument, "contamination weight outside (0,1]: " + format_rational(weights_[k]));
            if (k > 0 && weights_[k] >= weights_[k - 1])
                throw Error(ErrorCode::InvalidArgument, "contamination weights must be strictly descending");
        }
    }

    static ContaminationFamily uniform(const StateSpace& space, std::vector<Rational> weights) {
        return ContaminationFamily(ProbabilityVector(space.size(), make_rational(1, static_cast<long long>(space.size()))),
                                   std::move(weights));
    }

    const ProbabilityVector& base() const noexcept { return base_; }
    const std::vector<Rational>& weights() const noexcept { return weights_; }

    PlausibilityMeasure member(const Rational& eps) const {
        std::vector<ProbabilityVector> gens;
        for (std::size_t s = 0; s < base_.size(); ++s) {
            ProbabilityVector g(base_.size());
            for (std::size_t t = 0; t < base_.size(); ++t) g[t] = (1 - eps) * base_[t] + (s == t ? eps : Rational(0));
            gens.push_back(std::move(g));
        }
        return PlausibilityMeasure::credal(std::move(gens));
    }

    friend bool operator==(const ContaminationFamily&, const ContaminationFamily&) = default;

private:
    ProbabilityVector base_;
    std::vector<Rational> weights_;
};

struct ConvergenceRow {
    Rational epsilon;
    Utility lower;
    Utility upper;
    Utility value;
    Rational difference; // |value - target|
    Rational bound;      // (1-ε)·(max f - min f)
    bool within_bound = false;

    friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct ConvergenceReport {
    Act act;
    GammaFunction rule;
    Utility target; // certainty equivalent under vacuous belief
    std::vector<ConvergenceRow> rows;
    /// The bound follows from 1-Lipschitz γ, so it is asserted only for
    /// anchored rules (min and max included). Other rules get the rows
    /// without a verdict.
    bool bound_asserted = false;
    bool bound_satisfied = false;

    friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

inline bool is_anchored_family(const GammaFunction& g) {
    return g.is<GammaFunction::Anchored>() || g.is<GammaFunction::MinRule>() || g.is<GammaFunction::MaxRule>();
}

inline ConvergenceReport limit_check(const CeOperator& op, const Act& f, const ContaminationFamily& family) {
    if (!op.credal_extension)
        throw Error(ErrorCode::UnsupportedCombination, "limit check needs an operator with the credal extension");
    if (family.base().size() != f.size()) throw Error(ErrorCode::SpaceMismatch, "family and act over different state spaces");

    const auto w = outcome_set(f);
    const Rational spread = *w.rbegin() - *w.begin();
    ConvergenceReport report{f, op.vacuous_rule, ce_vacuous(op.vacuous_rule, w), {}, is_anchored_family(op.vacuous_rule), true};
    for (const auto& eps : family.weights()) {
        const auto member = family.member(eps);
        const auto bounds = expectation_bounds(member, f);
        auto value = ce(op, member, f);
        auto diff = abs_diff(value, report.target);
        Rational bound = (1 - eps) * spread;
        const bool ok = diff <= bound;
        report.bound_satisfied = report.bound_satisfied && ok;
        report.rows.push_back(ConvergenceRow{eps, bounds.lower, bounds.upper, std::move(value), std::move(diff), std::move(bound), ok});
    }
    return report;
}

} // namespace ignorance
