#pragma once

// Plausibility measures valued in lower/upper probability pairs, for four
// uncertainty frameworks, together with restriction to a partition,
// conditioning on an event and vacuity detection.

#include "ignorance/acts.hpp"
#include "ignorance/error.hpp"
#include "ignorance/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ignorance {

inline constexpr std::size_t kDefaultVacuityCap = 12;

enum class Framework { Probability, CredalSet, BeliefFunction, Possibility };

inline std::string_view to_string(Framework fw) {
    switch (fw) {
    case Framework::Probability: return "probability";
    case Framework::CredalSet: return "credal";
    case Framework::BeliefFunction: return "belief";
    case Framework::Possibility: return "possibility";
    }
    return "unknown";
}

inline Framework parse_framework(std::string_view name) {
    for (auto fw : {Framework::Probability, Framework::CredalSet, Framework::BeliefFunction, Framework::Possibility})
        if (to_string(fw) == name) return fw;
    throw Error(ErrorCode::ParseError, "unknown framework \"" + std::string(name) + "\"");
}

/// The frameworks that can express total ignorance.
inline constexpr Framework kVacuousFrameworks[] = {Framework::CredalSet, Framework::BeliefFunction, Framework::Possibility};

/// An element <lower, upper> of the scale Z, ordered componentwise.
struct ZPair {
    Rational lower;
    Rational upper;

    ZPair(Rational lo, Rational hi) : lower(std::move(lo)), upper(std::move(hi)) {
        if (!in_unit_interval(lower) || !in_unit_interval(upper) || lower > upper)
            throw Error(ErrorCode::InvalidArgument,
                        "not a lower/upper pair: <" + format_rational(lower) + "," + format_rational(upper) + ">");
    }

    static ZPair top() { return {1, 1}; }
    static ZPair bottom() { return {0, 0}; }
    static ZPair vacuous_element() { return {0, 1}; }

    /// Componentwise partial order.
    bool dominates(const ZPair& other) const { return lower >= other.lower && upper >= other.upper; }

    friend bool operator==(const ZPair&, const ZPair&) = default;
};

inline std::string to_string(const ZPair& z) {
    return "<" + format_rational(z.lower) + "," + format_rational(z.upper) + ">";
}

using ProbabilityVector = std::vector<Rational>;

struct ProbabilityPayload {
    ProbabilityVector p;
    friend bool operator==(const ProbabilityPayload&, const ProbabilityPayload&) = default;
};

/// Finitely generated credal set, or the symbolic full simplex.
struct CredalPayload {
    bool full_simplex = false;
    std::vector<ProbabilityVector> generators;
    friend bool operator==(const CredalPayload&, const CredalPayload&) = default;
};

/// Mass assignment over non-empty focal events, keyed by event.
struct BeliefPayload {
    std::map<Event, Rational> masses;
    friend bool operator==(const BeliefPayload&, const BeliefPayload&) = default;
};

struct PossibilityPayload {
    std::vector<Rational> pi;
    friend bool operator==(const PossibilityPayload&, const PossibilityPayload&) = default;
};

namespace detail {

inline void validate_probability(const ProbabilityVector& p, std::size_t n, std::string_view what) {
    if (p.size() != n)
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " has " + std::to_string(p.size()) + " entries, expected " + std::to_string(n));
    Rational total = 0;
    for (const auto& x : p) {
        if (x < 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a negative entry");
        total += x;
    }
    if (total != 1) throw Error(ErrorCode::InvalidArgument, std::string(what) + " sums to " + format_rational(total) + ", not 1");
}

inline Rational mass_of(const ProbabilityVector& p, Event a) {
    Rational total = 0;
    for (auto s : a.members()) total += p[s];
    return total;
}

} // namespace detail

class PlausibilityMeasure {
public:
    using Payload = std::variant<ProbabilityPayload, CredalPayload, BeliefPayload, PossibilityPayload>;

    static PlausibilityMeasure probability(ProbabilityVector p) {
        const StateSpace space(p.size());
        detail::validate_probability(p, space.size(), "probability vector");
        return PlausibilityMeasure(space, ProbabilityPayload{std::move(p)});
    }

    static PlausibilityMeasure credal(std::vector<ProbabilityVector> generators) {
        if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "credal set needs at least one generator");
        const StateSpace space(generators.front().size());
        for (const auto& g : generators) detail::validate_probability(g, space.size(), "credal generator");
        return PlausibilityMeasure(space, CredalPayload{false, std::move(generators)});
    }

    static PlausibilityMeasure full_simplex(const StateSpace& space) {
        return PlausibilityMeasure(space, CredalPayload{true, {}});
    }

    static PlausibilityMeasure belief(const StateSpace& space, const std::vector<std::pair<Event, Rational>>& masses) {
        BeliefPayload payload;
        Rational total = 0;
        for (const auto& [focal, m] : masses) {
            if (focal.empty()) throw Error(ErrorCode::InvalidArgument, "mass on the empty event");
            if (!focal.within(space)) throw Error(ErrorCode::DomainMismatch, "focal event outside state space: " + to_string(focal));
            if (m < 0) throw Error(ErrorCode::InvalidArgument, "negative mass on " + to_string(focal));
            total += m;
            if (m != 0) payload.masses[focal] += m;
        }
        if (total != 1) throw Error(ErrorCode::InvalidArgument, "masses sum to " + format_rational(total) + ", not 1");
        return PlausibilityMeasure(space, std::move(payload));
    }

    static PlausibilityMeasure possibility(std::vector<Rational> pi) {
        const StateSpace space(pi.size());
        Rational top = 0;
        for (const auto& x : pi) {
            if (!in_unit_interval(x)) throw Error(ErrorCode::InvalidArgument, "possibility degree outside [0,1]: " + format_rational(x));
            top = std::max(top, x);
        }
        if (top != 1) throw Error(ErrorCode::InvalidArgument, "possibility distribution must reach 1");
        return PlausibilityMeasure(space, PossibilityPayload{std::move(pi)});
    }

    const StateSpace& space() const noexcept { return space_; }
    const Payload& payload() const noexcept { return payload_; }

    Framework framework() const noexcept { return static_cast<Framework>(payload_.index()); }

    friend bool operator==(const PlausibilityMeasure&, const PlausibilityMeasure&) = default;

private:
    PlausibilityMeasure(const StateSpace& space, Payload payload) : space_(space), payload_(std::move(payload)) {}

    StateSpace space_;
    Payload payload_;
};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Lower/upper plausibility of an event. The empty event maps to <0,0> and
/// the full space to <1,1> in every framework.
inline ZPair evaluate(const PlausibilityMeasure& delta, Event a) {
    const auto& space = delta.space();
    if (!a.within(space)) throw Error(ErrorCode::DomainMismatch, "event " + to_string(a) + " outside state space");
    if (a.empty()) return ZPair::bottom();
    if (a == Event::full(space)) return ZPair::top();

    return std::visit(
        overloaded{
            [&](const ProbabilityPayload& p) {
                auto v = detail::mass_of(p.p, a);
                return ZPair(v, v);
            },
            [&](const CredalPayload& c) {
                if (c.full_simplex) return ZPair::vacuous_element();
                Rational lo = 1, hi = 0;
                for (const auto& g : c.generators) {
                    auto v = detail::mass_of(g, a);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                return ZPair(lo, hi);
            },
            [&](const BeliefPayload& b) {
                Rational bel = 0, pl = 0;
                for (const auto& [focal, m] : b.masses) {
                    if (focal.subset_of(a)) bel += m;
                    if (focal.intersects(a)) pl += m;
                }
                return ZPair(bel, pl);
            },
            [&](const PossibilityPayload& p) {
                Rational inside = 0, outside = 0;
                for (std::size_t s = 0; s < p.pi.size(); ++s) {
                    auto& side = a.contains(s) ? inside : outside;
                    side = std::max(side, p.pi[s]);
                }
                return ZPair(1 - outside, inside);
            },
        },
        delta.payload());
}

inline PlausibilityMeasure vacuous(const StateSpace& space, Framework fw) {
    switch (fw) {
    case Framework::Probability:
        throw Error(ErrorCode::NoVacuousRepresentation, "no single probability function is vacuous");
    case Framework::CredalSet: return PlausibilityMeasure::full_simplex(space);
    case Framework::BeliefFunction: return PlausibilityMeasure::belief(space, {{Event::full(space), Rational(1)}});
    case Framework::Possibility: return PlausibilityMeasure::possibility(std::vector<Rational>(space.size(), Rational(1)));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown framework");
}

struct VacuityVerdict {
    bool vacuous = false;
    std::optional<Event> witness; // set iff not vacuous

    friend bool operator==(const VacuityVerdict&, const VacuityVerdict&) = default;
};

/// Checks that every proper non-empty event evaluates to <0,1>. Events are
/// visited in increasing bitmask order; the first failure is the witness.
inline VacuityVerdict is_vacuous(const PlausibilityMeasure& delta, std::size_t cap = kDefaultVacuityCap) {
    const std::size_t n = delta.space().size();
    if (n > cap)
        throw Error(ErrorCode::CapExceeded, "vacuity check capped at n=" + std::to_string(cap) + ", got " + std::to_string(n));
    const std::uint64_t full = Event::full(delta.space()).bits();
    const auto v = ZPair::vacuous_element();
    for (std::uint64_t bits = 1; bits < full; ++bits)
        if (evaluate(delta, Event(bits)) != v) return {false, Event(bits)};
    return {true, std::nullopt};
}

/// Coarsens a measure onto the algebra generated by a partition: block k of
/// `h` becomes state k of the result.
inline PlausibilityMeasure restrict(const PlausibilityMeasure& delta, const Partition& h) {
    if (!(h.space() == delta.space())) throw Error(ErrorCode::SpaceMismatch, "partition and measure over different state spaces");
    const StateSpace coarse(h.size());

    auto push_forward = [&](const ProbabilityVector& p) {
        ProbabilityVector out(h.size());
        for (std::size_t k = 0; k < h.size(); ++k) out[k] = detail::mass_of(p, h[k]);
        return out;
    };

    return std::visit(
        overloaded{
            [&](const ProbabilityPayload& p) { return PlausibilityMeasure::probability(push_forward(p.p)); },
            [&](const CredalPayload& c) {
                if (c.full_simplex) return PlausibilityMeasure::full_simplex(coarse);
                std::vector<ProbabilityVector> gens;
                gens.reserve(c.generators.size());
                for (const auto& g : c.generators) gens.push_back(push_forward(g));
                return PlausibilityMeasure::credal(std::move(gens));
            },
            [&](const BeliefPayload& b) {
                // Each focal event goes to the set of blocks it meets.
                std::vector<std::pair<Event, Rational>> masses;
                for (const auto& [focal, m] : b.masses) {
                    Event blocks;
                    for (std::size_t k = 0; k < h.size(); ++k)
                        if (focal.intersects(h[k])) blocks.insert(k);
                    masses.emplace_back(blocks, m);
                }
                return PlausibilityMeasure::belief(coarse, masses);
            },
            [&](const PossibilityPayload& p) {
                std::vector<Rational> pi(h.size(), Rational(0));
                for (std::size_t k = 0; k < h.size(); ++k)
                    for (auto s : h[k].members()) pi[k] = std::max(pi[k], p.pi[s]);
                return PlausibilityMeasure::possibility(std::move(pi));
            },
        },
        delta.payload());
}

/// Checks the defining property of a restriction: for every index set I,
/// restricted(I) equals original(union of blocks in I). Returns the first
/// failing index set, if any.
inline std::optional<Event> restriction_mismatch(const PlausibilityMeasure& original, const Partition& h,
                                                 const PlausibilityMeasure& restricted) {
    if (restricted.space().size() != h.size())
        throw Error(ErrorCode::SpaceMismatch, "restricted measure must have one state per block");
    const std::uint64_t count = std::uint64_t{1} << h.size();
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        const Event index_set(bits);
        if (evaluate(restricted, index_set) != evaluate(original, h.block_union(index_set))) return index_set;
    }
    return std::nullopt;
}

/// Updates a measure on an observed event. The result lives on a state
/// space of size |A|, with the members of A re-indexed in ascending order.
inline PlausibilityMeasure condition(const PlausibilityMeasure& delta, Event a) {
    if (a.empty()) throw Error(ErrorCode::EmptyEvent, "cannot condition on the empty event");
    const ZPair za = evaluate(delta, a);
    if (za.upper == 0) throw Error(ErrorCode::ZeroPlausibilityEvent, "event " + to_string(a) + " has zero upper plausibility");
    const StateSpace sub(a.size());
    const auto members = a.members();

    auto bayes = [&](const ProbabilityVector& p, const Rational& pa) {
        ProbabilityVector out;
        out.reserve(members.size());
        for (auto s : members) out.push_back(p[s] / pa);
        return out;
    };

    return std::visit(
        overloaded{
            [&](const ProbabilityPayload& p) { return PlausibilityMeasure::probability(bayes(p.p, za.upper)); },
            [&](const CredalPayload& c) {
                if (c.full_simplex) return PlausibilityMeasure::full_simplex(sub);
                // Generators giving A zero probability are dropped.
                std::vector<ProbabilityVector> gens;
                for (const auto& g : c.generators) {
                    const auto pa = detail::mass_of(g, a);
                    if (pa > 0) gens.push_back(bayes(g, pa));
                }
                if (gens.empty()) throw Error(ErrorCode::ZeroPlausibilityEvent, "every generator gives zero mass to " + to_string(a));
                return PlausibilityMeasure::credal(std::move(gens));
            },
            [&](const BeliefPayload& b) {
                // Dempster conditioning: m_A(B) = sum over C with C∩A = B of m(C) / Pl(A).
                std::vector<std::pair<Event, Rational>> masses;
                for (const auto& [focal, m] : b.masses) {
                    const Event inter = focal & a;
                    if (!inter.empty()) masses.emplace_back(reindex(inter, a), m / za.upper);
                }
                return PlausibilityMeasure::belief(sub, masses);
            },
            [&](const PossibilityPayload& p) {
                std::vector<Rational> pi;
                pi.reserve(members.size());
                for (auto s : members) pi.push_back(p.pi[s] / za.upper);
                return PlausibilityMeasure::possibility(std::move(pi));
            },
        },
        delta.payload());
}

} // namespace ignorance
