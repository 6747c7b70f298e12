#pragma once

// Finite state spaces, events, partitions and acts.
//
// States are identified with indices 0..n-1 and events are bitsets over
// them, so a state space is limited to kMaxStates states. Acts are stored as
// dense outcome vectors; the rule-set ("if A_i then w_i") form is derived.

#include "ignorance/error.hpp"
#include "ignorance/rational.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ignorance {

inline constexpr std::size_t kMaxStates = 63;
inline constexpr std::size_t kDefaultPartitionCap = 8;

class StateSpace {
public:
    explicit StateSpace(std::size_t n) : n_(n) {
        if (n == 0 || n > kMaxStates)
            throw Error(ErrorCode::InvalidArgument,
                        "state space size must be in [1, " + std::to_string(kMaxStates) + "], got " +
                            std::to_string(n));
    }

    std::size_t size() const noexcept { return n_; }

    friend bool operator==(const StateSpace&, const StateSpace&) = default;

private:
    std::size_t n_;
};

/// A set of states, stored as a bitmask. Ordering is by mask value, which is
/// the canonical event order used wherever a "first" event is reported.
class Event {
public:
    constexpr Event() = default;
    constexpr explicit Event(std::uint64_t bits) : bits_(bits) {}
    Event(std::initializer_list<std::size_t> states) {
        for (auto s : states) insert(s);
    }
    explicit Event(const std::vector<std::size_t>& states) {
        for (auto s : states) insert(s);
    }

    static Event full(const StateSpace& space) { return Event((std::uint64_t{1} << space.size()) - 1); }
    static Event singleton(std::size_t s) { return Event(std::uint64_t{1} << s); }

    void insert(std::size_t s) {
        if (s >= kMaxStates) throw Error(ErrorCode::DomainMismatch, "state index out of range: " + std::to_string(s));
        bits_ |= std::uint64_t{1} << s;
    }

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool contains(std::size_t s) const noexcept { return s < 64 && ((bits_ >> s) & 1U) != 0; }
    constexpr bool subset_of(Event other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(Event other) const noexcept { return (bits_ & other.bits_) != 0; }
    bool within(const StateSpace& space) const noexcept { return subset_of(full(space)); }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        return out;
    }

    friend constexpr Event operator|(Event a, Event b) noexcept { return Event(a.bits_ | b.bits_); }
    friend constexpr Event operator&(Event a, Event b) noexcept { return Event(a.bits_ & b.bits_); }
    /// Complement relative to a state space.
    Event complement(const StateSpace& space) const noexcept { return Event(full(space).bits_ & ~bits_); }

    friend constexpr auto operator<=>(Event, Event) = default;

private:
    std::uint64_t bits_ = 0;
};

inline std::string to_string(Event e) {
    std::string out = "{";
    bool first = true;
    for (auto s : e.members()) {
        if (!first) out += ",";
        out += std::to_string(s);
        first = false;
    }
    return out + "}";
}

/// Position of `state` among the ascending members of `domain`.
inline std::size_t position_in(Event domain, std::size_t state) {
    return static_cast<std::size_t>(std::popcount(domain.bits() & ((std::uint64_t{1} << state) - 1)));
}

/// Maps an event inside `domain` onto the re-indexed space of size |domain|.
inline Event reindex(Event sub, Event domain) {
    Event out;
    for (auto s : sub.members()) out.insert(position_in(domain, s));
    return out;
}

class Partition {
public:
    Partition(const StateSpace& space, std::vector<Event> blocks) : space_(space), blocks_(std::move(blocks)) {
        Event seen;
        for (const auto& b : blocks_) {
            if (b.empty()) throw Error(ErrorCode::InvalidArgument, "partition block is empty");
            if (!b.within(space_)) throw Error(ErrorCode::DomainMismatch, "partition block outside state space: " + to_string(b));
            if (b.intersects(seen)) throw Error(ErrorCode::InvalidArgument, "partition blocks overlap at " + to_string(b & seen));
            seen = seen | b;
        }
        if (seen != Event::full(space_))
            throw Error(ErrorCode::InvalidArgument, "partition does not cover the state space");
    }

    /// The one-block partition {Ω}.
    static Partition trivial(const StateSpace& space) { return Partition(space, {Event::full(space)}); }

    const StateSpace& space() const noexcept { return space_; }
    const std::vector<Event>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    const Event& operator[](std::size_t k) const { return blocks_.at(k); }

    std::size_t block_of(std::size_t state) const {
        for (std::size_t k = 0; k < blocks_.size(); ++k)
            if (blocks_[k].contains(state)) return k;
        throw Error(ErrorCode::DomainMismatch, "state not covered by partition: " + std::to_string(state));
    }

    /// Union of the blocks whose indices are set in `index_set`.
    Event block_union(Event index_set) const {
        Event out;
        for (auto k : index_set.members()) out = out | blocks_.at(k);
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    StateSpace space_;
    std::vector<Event> blocks_;
};

inline std::string to_string(const Partition& h) {
    std::string out = "{";
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (k) out += ",";
        out += to_string(h[k]);
    }
    return out + "}";
}

using OutcomeSet = std::set<Utility>;

/// A total assignment of utilities in [0,1], one per state.
class Act {
public:
    explicit Act(std::vector<Utility> outcomes) : outcomes_(std::move(outcomes)) {
        if (outcomes_.empty() || outcomes_.size() > kMaxStates)
            throw Error(ErrorCode::InvalidArgument, "act must have between 1 and " + std::to_string(kMaxStates) + " outcomes");
        for (std::size_t s = 0; s < outcomes_.size(); ++s)
            if (!in_unit_interval(outcomes_[s]))
                throw Error(ErrorCode::InvalidArgument,
                            "outcome at state " + std::to_string(s) + " outside [0,1]: " + format_rational(outcomes_[s]));
    }
    Act(std::initializer_list<Utility> outcomes) : Act(std::vector<Utility>(outcomes)) {}

    static Act constant(const StateSpace& space, const Utility& c) { return Act(std::vector<Utility>(space.size(), c)); }

    StateSpace space() const { return StateSpace(outcomes_.size()); }
    std::size_t size() const noexcept { return outcomes_.size(); }
    const Utility& operator[](std::size_t s) const { return outcomes_.at(s); }
    const std::vector<Utility>& outcomes() const noexcept { return outcomes_; }

    /// Rule-set view {f^-1(w) -> w}, ordered by outcome. The events always
    /// form a partition of the state space.
    std::vector<std::pair<Event, Utility>> rules() const {
        std::vector<std::pair<Event, Utility>> out;
        for (const auto& w : OutcomeSet(outcomes_.begin(), outcomes_.end())) {
            Event e;
            for (std::size_t s = 0; s < outcomes_.size(); ++s)
                if (outcomes_[s] == w) e.insert(s);
            out.emplace_back(e, w);
        }
        return out;
    }

    friend bool operator==(const Act&, const Act&) = default;

private:
    std::vector<Utility> outcomes_;
};

inline std::string to_string(const Act& f) {
    std::string out = "(";
    for (std::size_t s = 0; s < f.size(); ++s) {
        if (s) out += ",";
        out += format_rational(f[s]);
    }
    return out + ")";
}

/// An act defined only on the states of a non-empty domain.
class ConditionalAct {
public:
    ConditionalAct(Event domain, std::vector<Utility> outcomes) : domain_(domain), outcomes_(std::move(outcomes)) {
        if (domain_.empty()) throw Error(ErrorCode::EmptyEvent, "conditional act needs a non-empty domain");
        if (outcomes_.size() != domain_.size())
            throw Error(ErrorCode::DomainMismatch, "conditional act needs one outcome per domain state");
        for (const auto& w : outcomes_)
            if (!in_unit_interval(w)) throw Error(ErrorCode::InvalidArgument, "outcome outside [0,1]: " + format_rational(w));
    }

    /// Constant sub-act on `domain`.
    static ConditionalAct constant(Event domain, const Utility& c) {
        return ConditionalAct(domain, std::vector<Utility>(domain.size(), c));
    }

    Event domain() const noexcept { return domain_; }

    const Utility& at(std::size_t state) const {
        if (!domain_.contains(state))
            throw Error(ErrorCode::DomainMismatch, "state " + std::to_string(state) + " not in domain " + to_string(domain_));
        return outcomes_[position_in(domain_, state)];
    }

    /// The same act re-indexed onto a state space of size |domain|.
    Act as_act() const { return Act(outcomes_); }

    friend bool operator==(const ConditionalAct&, const ConditionalAct&) = default;

private:
    Event domain_;
    std::vector<Utility> outcomes_; // aligned with ascending domain members
};

inline OutcomeSet outcome_set(const Act& f) { return OutcomeSet(f.outcomes().begin(), f.outcomes().end()); }

inline ConditionalAct condition_act(const Act& f, Event a) {
    if (a.empty()) throw Error(ErrorCode::EmptyEvent, "cannot condition an act on the empty event");
    if (!a.within(f.space())) throw Error(ErrorCode::DomainMismatch, "event " + to_string(a) + " outside the act's state space");
    std::vector<Utility> out;
    out.reserve(a.size());
    for (auto s : a.members()) out.push_back(f[s]);
    return ConditionalAct(a, std::move(out));
}

/// Assembles {A_k -> f_k} from one conditional act per partition block.
inline Act compose_partition_act(const Partition& h, const std::vector<ConditionalAct>& subacts) {
    if (subacts.size() != h.size())
        throw Error(ErrorCode::DomainMismatch, "expected " + std::to_string(h.size()) + " sub-acts, got " + std::to_string(subacts.size()));
    for (std::size_t k = 0; k < h.size(); ++k)
        if (subacts[k].domain() != h[k])
            throw Error(ErrorCode::DomainMismatch,
                        "sub-act " + std::to_string(k) + " has domain " + to_string(subacts[k].domain()) + ", block is " + to_string(h[k]));
    std::vector<Utility> out(h.space().size());
    for (std::size_t k = 0; k < h.size(); ++k)
        for (auto s : h[k].members()) out[s] = subacts[k].at(s);
    return Act(std::move(out));
}

inline bool acts_equivalent(const Act& f, const Act& g) {
    if (f.size() != g.size())
        throw Error(ErrorCode::SpaceMismatch, "acts over state spaces of size " + std::to_string(f.size()) + " and " + std::to_string(g.size()));
    return f.outcomes() == g.outcomes();
}

/// All set partitions of {0..n-1}, each exactly once, in restricted-growth
/// string order. Blocks are ordered by their smallest state.
inline std::vector<Partition> enumerate_partitions(const StateSpace& space, std::size_t cap = kDefaultPartitionCap) {
    const std::size_t n = space.size();
    if (n > cap)
        throw Error(ErrorCode::CapExceeded, "partition enumeration capped at n=" + std::to_string(cap) + ", got " + std::to_string(n));

    std::vector<Partition> out;
    std::vector<std::size_t> rgs(n, 0);
    std::vector<std::size_t> prefix_max(n, 0); // max of rgs[0..i]
    while (true) {
        std::vector<Event> blocks(prefix_max[n - 1] + 1);
        for (std::size_t s = 0; s < n; ++s) blocks[rgs[s]].insert(s);
        out.emplace_back(space, std::move(blocks));

        // Advance to the next restricted growth string.
        std::size_t i = n - 1;
        while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
        if (i == 0) break;
        ++rgs[i];
        prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    return out;
}

/// Every act on the grid {k/d} over n states, in lexicographic order of the
/// outcome vector.
inline std::vector<Act> enumerate_grid_acts(const StateSpace& space, unsigned denominator) {
    const auto grid = unit_grid(denominator);
    const std::size_t n = space.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<Act> out;
    while (true) {
        std::vector<Utility> v;
        v.reserve(n);
        for (auto i : idx) v.push_back(grid[i]);
        out.emplace_back(std::move(v));
        std::size_t pos = n;
        while (pos > 0 && idx[pos - 1] == denominator) idx[--pos] = 0;
        if (pos == 0) break;
        ++idx[pos - 1];
    }
    return out;
}

} // namespace ignorance
