#pragma once

// Certainty-equivalence operators.
//
// Under vacuous belief an operator is determined by a function γ on lower/
// upper pairs: the certainty equivalent of an outcome set W is
// γ(min W, max W). The anchored family clamps [min W, max W] to a constant
// a; Hurwicz mixes the extremes; the median rule looks at the whole set.

#include "ignorance/acts.hpp"
#include "ignorance/error.hpp"
#include "ignorance/plausibility.hpp"
#include "ignorance/rational.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ignorance {

class GammaFunction {
public:
    struct Anchored {
        Utility a;
        friend bool operator==(const Anchored&, const Anchored&) = default;
    };
    struct Hurwicz {
        Rational alpha; // weight on the minimum
        friend bool operator==(const Hurwicz&, const Hurwicz&) = default;
    };
    struct MinRule {
        friend bool operator==(const MinRule&, const MinRule&) = default;
    };
    struct MaxRule {
        friend bool operator==(const MaxRule&, const MaxRule&) = default;
    };
    /// Lower median of the distinct outcomes. Not a function of <min, max>.
    struct Median {
        friend bool operator==(const Median&, const Median&) = default;
    };
    struct Tabulated {
        std::map<std::pair<Rational, Rational>, Utility> table;
        friend bool operator==(const Tabulated&, const Tabulated&) = default;
    };

    using Kind = std::variant<Anchored, Hurwicz, MinRule, MaxRule, Median, Tabulated>;

    static GammaFunction anchored(Utility a) {
        if (!in_unit_interval(a)) throw Error(ErrorCode::InvalidArgument, "anchor outside [0,1]: " + format_rational(a));
        return GammaFunction(Anchored{std::move(a)});
    }
    static GammaFunction hurwicz(Rational alpha) {
        if (!in_unit_interval(alpha)) throw Error(ErrorCode::InvalidArgument, "Hurwicz weight outside [0,1]: " + format_rational(alpha));
        return GammaFunction(Hurwicz{std::move(alpha)});
    }
    static GammaFunction min_rule() { return GammaFunction(MinRule{}); }
    static GammaFunction max_rule() { return GammaFunction(MaxRule{}); }
    static GammaFunction median() { return GammaFunction(Median{}); }
    static GammaFunction tabulated(std::map<std::pair<Rational, Rational>, Utility> table) {
        for (const auto& [z, v] : table) {
            ZPair(z.first, z.second);
            if (!in_unit_interval(v)) throw Error(ErrorCode::InvalidArgument, "tabulated value outside [0,1]: " + format_rational(v));
        }
        return GammaFunction(Tabulated{std::move(table)});
    }

    const Kind& kind() const noexcept { return kind_; }

    template <class T>
    bool is() const noexcept {
        return std::holds_alternative<T>(kind_);
    }

    friend bool operator==(const GammaFunction&, const GammaFunction&) = default;

private:
    explicit GammaFunction(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

inline std::string to_string(const GammaFunction& g) {
    return std::visit(overloaded{
                          [](const GammaFunction::Anchored& k) { return "anchored(" + format_rational(k.a) + ")"; },
                          [](const GammaFunction::Hurwicz& k) { return "hurwicz(" + format_rational(k.alpha) + ")"; },
                          [](const GammaFunction::MinRule&) { return std::string("min"); },
                          [](const GammaFunction::MaxRule&) { return std::string("max"); },
                          [](const GammaFunction::Median&) { return std::string("median"); },
                          [](const GammaFunction::Tabulated& k) {
                              return "tabulated(" + std::to_string(k.table.size()) + " entries)";
                          },
                      },
                      g.kind());
}

inline Rational median_ce(const OutcomeSet& w) {
    if (w.empty()) throw Error(ErrorCode::EmptyOutcomeSet, "median of an empty outcome set");
    // Lower median: index (|W|-1)/2 in ascending order.
    return *std::next(w.begin(), static_cast<std::ptrdiff_t>((w.size() - 1) / 2));
}

inline Utility gamma_apply(const GammaFunction& gamma, const ZPair& z) {
    const Rational& x = z.lower;
    const Rational& y = z.upper;
    return std::visit(overloaded{
                          [&](const GammaFunction::Anchored& k) -> Rational {
                              if (y <= k.a) return y;
                              if (x >= k.a) return x;
                              return k.a;
                          },
                          [&](const GammaFunction::Hurwicz& k) -> Rational { return k.alpha * x + (1 - k.alpha) * y; },
                          [&](const GammaFunction::MinRule&) -> Rational { return x; },
                          [&](const GammaFunction::MaxRule&) -> Rational { return y; },
                          [&](const GammaFunction::Median&) -> Rational { return median_ce(OutcomeSet{x, y}); },
                          [&](const GammaFunction::Tabulated& k) -> Rational {
                              auto it = k.table.find({x, y});
                              if (it == k.table.end()) throw Error(ErrorCode::NotTabulated, "no table entry for " + to_string(z));
                              return it->second;
                          },
                      },
                      gamma.kind());
}

/// Certainty equivalent of an outcome set under vacuous belief.
inline Utility ce_vacuous(const GammaFunction& gamma, const OutcomeSet& w) {
    if (w.empty()) throw Error(ErrorCode::EmptyOutcomeSet, "certainty equivalent of an empty outcome set");
    if (gamma.is<GammaFunction::Median>()) return median_ce(w);
    return gamma_apply(gamma, ZPair(*w.begin(), *w.rbegin()));
}

inline Utility expected_utility(const PlausibilityMeasure& p, const Act& f) {
    const auto* prob = std::get_if<ProbabilityPayload>(&p.payload());
    if (!prob) throw Error(ErrorCode::FrameworkMismatch, "expected utility needs a probability measure, got " + std::string(to_string(p.framework())));
    if (p.space().size() != f.size()) throw Error(ErrorCode::SpaceMismatch, "measure and act over different state spaces");
    Rational total = 0;
    for (std::size_t s = 0; s < f.size(); ++s) total += prob->p[s] * f[s];
    return total;
}

/// Lower and upper expectation of an act over the probabilities compatible
/// with the measure: generators for credal sets, focal-element extremes for
/// belief functions, and the consonant focal sets for possibility.
inline ZPair expectation_bounds(const PlausibilityMeasure& delta, const Act& f) {
    if (delta.space().size() != f.size()) throw Error(ErrorCode::SpaceMismatch, "measure and act over different state spaces");

    auto focal_bounds = [&](const std::map<Event, Rational>& masses) {
        Rational lo = 0, hi = 0;
        for (const auto& [focal, m] : masses) {
            Rational fmin = 1, fmax = 0;
            for (auto s : focal.members()) {
                fmin = std::min(fmin, f[s]);
                fmax = std::max(fmax, f[s]);
            }
            lo += m * fmin;
            hi += m * fmax;
        }
        return ZPair(lo, hi);
    };

    return std::visit(
        overloaded{
            [&](const ProbabilityPayload&) {
                auto e = expected_utility(delta, f);
                return ZPair(e, e);
            },
            [&](const CredalPayload& c) {
                const auto w = outcome_set(f);
                if (c.full_simplex) return ZPair(*w.begin(), *w.rbegin());
                Rational lo = 1, hi = 0;
                for (const auto& g : c.generators) {
                    Rational e = 0;
                    for (std::size_t s = 0; s < f.size(); ++s) e += g[s] * f[s];
                    lo = std::min(lo, e);
                    hi = std::max(hi, e);
                }
                return ZPair(lo, hi);
            },
            [&](const BeliefPayload& b) { return focal_bounds(b.masses); },
            [&](const PossibilityPayload& p) {
                // Level cuts {s : π(s) >= t} carry mass t - (next lower level).
                std::vector<Rational> levels(p.pi.begin(), p.pi.end());
                std::sort(levels.begin(), levels.end(), std::greater<>());
                levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
                std::map<Event, Rational> masses;
                for (std::size_t i = 0; i < levels.size(); ++i) {
                    if (levels[i] == 0) break;
                    const Rational next = i + 1 < levels.size() ? levels[i + 1] : Rational(0);
                    Event cut;
                    for (std::size_t s = 0; s < p.pi.size(); ++s)
                        if (p.pi[s] >= levels[i]) cut.insert(s);
                    masses[cut] = levels[i] - next;
                }
                return focal_bounds(masses);
            },
        },
        delta.payload());
}

struct CeOperator {
    GammaFunction vacuous_rule = GammaFunction::anchored(make_rational(1, 2));
    /// Use expected utility on probability measures.
    bool probabilistic = true;
    /// Apply γ to the lower/upper expectation pair of non-vacuous,
    /// non-probabilistic measures.
    bool credal_extension = false;

    friend bool operator==(const CeOperator&, const CeOperator&) = default;
};

inline CeOperator make_operator(GammaFunction gamma, bool credal_extension = false) {
    return CeOperator{std::move(gamma), true, credal_extension};
}

namespace detail {

/// Dispatch with the vacuity of `delta` already known (sweeps evaluate many
/// acts against one measure).
inline Utility ce_known(const CeOperator& op, const PlausibilityMeasure& delta, bool delta_vacuous, const Act& f) {
    if (delta.space().size() != f.size()) throw Error(ErrorCode::SpaceMismatch, "measure and act over different state spaces");
    const auto& out = f.outcomes();
    if (std::all_of(out.begin(), out.end(), [&](const Utility& u) { return u == out.front(); })) return out.front();
    if (delta.framework() == Framework::Probability && op.probabilistic) return expected_utility(delta, f);
    if (delta_vacuous) return ce_vacuous(op.vacuous_rule, outcome_set(f));
    if (op.credal_extension && delta.framework() != Framework::Probability)
        return gamma_apply(op.vacuous_rule, expectation_bounds(delta, f));
    throw Error(ErrorCode::UnsupportedCombination,
                "no rule for a non-vacuous " + std::string(to_string(delta.framework())) + " measure with this operator");
}

} // namespace detail

/// Constant acts evaluate to their constant under any measure (Unanimity).
inline Utility ce(const CeOperator& op, const PlausibilityMeasure& delta, const Act& f,
                  std::size_t vacuity_cap = kDefaultVacuityCap) {
    if (delta.space().size() != f.size()) throw Error(ErrorCode::SpaceMismatch, "measure and act over different state spaces");
    const bool probabilistic = delta.framework() == Framework::Probability && op.probabilistic;
    return detail::ce_known(op, delta, !probabilistic && is_vacuous(delta, vacuity_cap).vacuous, f);
}

enum class Preference { StrictlyPrefers, Indifferent, StrictlyDisprefers };

inline std::string_view to_string(Preference p) {
    switch (p) {
    case Preference::StrictlyPrefers: return "prefers";
    case Preference::Indifferent: return "indifferent";
    case Preference::StrictlyDisprefers: return "disprefers";
    }
    return "unknown";
}

inline Preference compare_values(const Rational& left, const Rational& right) {
    if (left > right) return Preference::StrictlyPrefers;
    if (left < right) return Preference::StrictlyDisprefers;
    return Preference::Indifferent;
}

/// Complete order on outcome sets induced by γ through their extremes.
inline Preference np_prefer(const GammaFunction& gamma, const OutcomeSet& a, const OutcomeSet& b) {
    return compare_values(ce_vacuous(gamma, a), ce_vacuous(gamma, b));
}

/// The three-clause λ-order on outcome sets, evaluated literally.
inline bool lambda_prefer(const Utility& lambda, const OutcomeSet& a, const OutcomeSet& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyOutcomeSet, "λ-preference between empty outcome sets");
    const auto& min_a = *a.begin();
    const auto& max_a = *a.rbegin();
    const auto& min_b = *b.begin();
    const auto& max_b = *b.rbegin();
    return (lambda >= max_a && max_a >= max_b) || (min_a >= min_b && min_b >= lambda) ||
           (max_a >= lambda && lambda >= min_b);
}

} // namespace ignorance
