#pragma once

// Verification harness: folding-back (sequential) consistency, the algebraic
// laws a vacuous-belief γ must obey, the properties of the induced
// certainty-equivalence operator, and the independence/monotonicity
// conditions on set preferences. Every violation is recorded as a witness
// that carries enough information to be replayed through `ce`.
//
// All sweeps are grid-scale certificates: they quantify over acts and pairs
// whose values lie on {k/d}, not over the continuum.

#include "ignorance/acts.hpp"
#include "ignorance/ce_ops.hpp"
#include "ignorance/error.hpp"
#include "ignorance/plausibility.hpp"
#include "ignorance/rational.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ignorance {

struct ConsistencyVerdict {
    bool holds = false;
    Utility direct_value;
    Utility folded_value;
    Partition partition;
    Act act;
    Framework framework = Framework::BeliefFunction;

    friend bool operator==(const ConsistencyVerdict&, const ConsistencyVerdict&) = default;
};

enum class Law {
    Unanimity,
    Range,
    Monotonicity,
    LipschitzContinuity,
    GammaIdempotence,
    GammaMonotone,
    GammaIteration,
    ConditionI,
    ConditionSI,
    ConditionM,
};

inline constexpr Law kAllLaws[] = {Law::Unanimity,        Law::Range,         Law::Monotonicity,   Law::LipschitzContinuity,
                                   Law::GammaIdempotence, Law::GammaMonotone, Law::GammaIteration, Law::ConditionI,
                                   Law::ConditionSI,      Law::ConditionM};

inline std::string_view to_string(Law law) {
    switch (law) {
    case Law::Unanimity: return "Unanimity";
    case Law::Range: return "Range";
    case Law::Monotonicity: return "Monotonicity";
    case Law::LipschitzContinuity: return "LipschitzContinuity";
    case Law::GammaIdempotence: return "GammaIdempotence";
    case Law::GammaMonotone: return "GammaMonotone";
    case Law::GammaIteration: return "GammaIteration";
    case Law::ConditionI: return "ConditionI";
    case Law::ConditionSI: return "ConditionSI";
    case Law::ConditionM: return "ConditionM";
    }
    return "Unknown";
}

inline Law parse_law(std::string_view name) {
    for (auto law : kAllLaws)
        if (to_string(law) == name) return law;
    throw Error(ErrorCode::ParseError, "unknown law \"" + std::string(name) + "\"");
}

/// One evaluation a witness depends on: the direct or folded certainty
/// equivalent of an act under the vacuous measure of a framework.
struct Probe {
    enum class Quantity { Direct, Folded };

    Framework framework = Framework::BeliefFunction;
    Act act;
    std::optional<Partition> partition; // required when quantity is Folded
    Quantity quantity = Quantity::Direct;
    Utility value;

    friend bool operator==(const Probe&, const Probe&) = default;
};

struct Witness {
    std::string label;
    std::vector<Rational> inputs;
    Rational left;
    Rational right;
    std::vector<Probe> probes;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct LawReport {
    Law law = Law::Unanimity;
    bool passed = true;
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::vector<Witness> witnesses; // truncated at the configured maximum

    friend bool operator==(const LawReport&, const LawReport&) = default;
};

struct SearchConfig {
    std::vector<std::size_t> state_sizes{2, 3, 4};
    unsigned grid_denominator = 4;
    std::vector<Framework> frameworks{std::begin(kVacuousFrameworks), std::end(kVacuousFrameworks)};
    std::size_t partition_cap = kDefaultPartitionCap;
    std::size_t max_set_size = 4;
    Rational lipschitz = 1;
    bool stop_at_first = false;
    std::size_t max_witnesses = 64; // per law report; 0 keeps every witness
    unsigned workers = 0;           // 0 picks the hardware concurrency

    void validate() const {
        if (grid_denominator < 1) throw Error(ErrorCode::InvalidArgument, "grid denominator must be >= 1");
        if (state_sizes.empty()) throw Error(ErrorCode::InvalidArgument, "no state-space sizes configured");
        for (auto n : state_sizes) {
            if (n < 1) throw Error(ErrorCode::InvalidArgument, "state-space size must be >= 1");
            if (n > partition_cap)
                throw Error(ErrorCode::CapExceeded, "state-space size " + std::to_string(n) + " exceeds partition cap " +
                                                        std::to_string(partition_cap));
        }
        if (frameworks.empty()) throw Error(ErrorCode::InvalidArgument, "no frameworks configured");
        if (lipschitz < 0) throw Error(ErrorCode::InvalidArgument, "Lipschitz constant must be non-negative");
    }
};

namespace detail {

/// Runs fn(i) for i in [0, count) on up to `workers` threads and returns
/// the results in index order.
template <class R, class Fn>
std::vector<R> ordered_parallel_map(std::size_t count, unsigned workers, Fn fn) {
    std::vector<R> out(count);
    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

class LawRecorder {
public:
    LawRecorder(Law law, std::size_t max_witnesses) : max_(max_witnesses) { report_.law = law; }

    void pass() { ++report_.cases; }

    void fail(Witness w) {
        ++report_.cases;
        ++report_.violations;
        report_.passed = false;
        if (max_ == 0 || report_.witnesses.size() < max_) report_.witnesses.push_back(std::move(w));
    }

    void check(bool ok, const std::function<Witness()>& make_witness) {
        if (ok)
            pass();
        else
            fail(make_witness());
    }

    LawReport take() { return std::move(report_); }

private:
    LawReport report_;
    std::size_t max_;
};

/// Act whose outcomes are the elements of `w` in ascending order.
inline Act act_of(const OutcomeSet& w) { return Act(std::vector<Utility>(w.begin(), w.end())); }

inline Probe direct_probe(Framework fw, Act act, Utility value) {
    return Probe{fw, std::move(act), std::nullopt, Probe::Quantity::Direct, std::move(value)};
}

inline Probe folded_probe(Framework fw, Act act, Partition h, Utility value) {
    return Probe{fw, std::move(act), std::move(h), Probe::Quantity::Folded, std::move(value)};
}

/// Measures needed to fold an act through one partition.
struct FoldContext {
    PlausibilityMeasure coarse;
    bool coarse_vacuous;
    std::vector<PlausibilityMeasure> conditionals;
    std::vector<char> conditional_vacuous;
};

inline bool vacuous_for(const CeOperator& op, const PlausibilityMeasure& m) {
    if (m.framework() == Framework::Probability && op.probabilistic) return false;
    return is_vacuous(m).vacuous;
}

inline FoldContext prepare_fold(const CeOperator& op, const PlausibilityMeasure& delta, const Partition& h) {
    FoldContext ctx{restrict(delta, h), false, {}, {}};
    ctx.coarse_vacuous = vacuous_for(op, ctx.coarse);
    for (const auto& block : h.blocks()) {
        ctx.conditionals.push_back(condition(delta, block));
        ctx.conditional_vacuous.push_back(vacuous_for(op, ctx.conditionals.back()));
    }
    return ctx;
}

inline Utility folded_value(const CeOperator& op, const FoldContext& ctx, const Act& f, const Partition& h) {
    std::vector<Utility> inner;
    inner.reserve(h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
        inner.push_back(ce_known(op, ctx.conditionals[k], ctx.conditional_vacuous[k], condition_act(f, h[k]).as_act()));
    return ce_known(op, ctx.coarse, ctx.coarse_vacuous, Act(std::move(inner)));
}

} // namespace detail

/// Compares the direct certainty equivalent of `f` with the value obtained
/// by folding back through `h`: each block is replaced by the certainty
/// equivalent under the conditional measure, then the coarsened act is
/// evaluated under the restricted measure.
inline ConsistencyVerdict check_sequential(const CeOperator& op, const PlausibilityMeasure& delta, const Act& f, const Partition& h) {
    if (delta.space().size() != f.size() || !(h.space() == delta.space()))
        throw Error(ErrorCode::SpaceMismatch, "measure, act and partition must share a state space");
    const auto direct = ce(op, delta, f);
    const auto folded = detail::folded_value(op, detail::prepare_fold(op, delta, h), f, h);
    return ConsistencyVerdict{direct == folded, direct, folded, h, f, delta.framework()};
}

/// Sweeps every grid act, every partition and every configured framework's
/// vacuous measure. Failures come back ordered by (n, act, partition index,
/// framework); with stop_at_first only the first one is returned.
inline std::vector<ConsistencyVerdict> check_sequential_exhaustive(const CeOperator& op, const SearchConfig& cfg) {
    cfg.validate();
    auto sizes = cfg.state_sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    std::vector<ConsistencyVerdict> failures;
    for (auto n : sizes) {
        const StateSpace space(n);
        const auto partitions = enumerate_partitions(space, cfg.partition_cap);
        const auto acts = enumerate_grid_acts(space, cfg.grid_denominator);

        struct Prepared {
            PlausibilityMeasure measure;
            bool measure_vacuous;
            std::vector<detail::FoldContext> folds; // one per partition
        };
        std::vector<Prepared> prepared;
        for (auto fw : cfg.frameworks) {
            auto delta = vacuous(space, fw);
            std::vector<detail::FoldContext> folds;
            for (const auto& h : partitions) folds.push_back(detail::prepare_fold(op, delta, h));
            const bool vac = detail::vacuous_for(op, delta);
            prepared.push_back(Prepared{std::move(delta), vac, std::move(folds)});
        }

        auto sweep_act = [&](std::size_t i, bool first_only) {
            std::vector<ConsistencyVerdict> out;
            const Act& f = acts[i];
            std::vector<Utility> direct;
            for (const auto& p : prepared) direct.push_back(detail::ce_known(op, p.measure, p.measure_vacuous, f));
            for (std::size_t k = 0; k < partitions.size(); ++k)
                for (std::size_t j = 0; j < prepared.size(); ++j) {
                    auto folded = detail::folded_value(op, prepared[j].folds[k], f, partitions[k]);
                    if (folded != direct[j]) {
                        out.push_back(ConsistencyVerdict{false, direct[j], std::move(folded), partitions[k], f, cfg.frameworks[j]});
                        if (first_only) return out;
                    }
                }
            return out;
        };

        if (cfg.stop_at_first) {
            for (std::size_t i = 0; i < acts.size(); ++i) {
                auto found = sweep_act(i, true);
                if (!found.empty()) return found;
            }
            continue;
        }
        auto per_act = detail::ordered_parallel_map<std::vector<ConsistencyVerdict>>(
            acts.size(), cfg.workers, [&](std::size_t i) { return sweep_act(i, false); });
        for (auto& v : per_act)
            for (auto& verdict : v) failures.push_back(std::move(verdict));
    }
    return failures;
}

struct LawOptions {
    Rational lipschitz = 1;
    std::size_t max_witnesses = 64;
};

/// Checks γ on the grid {k/d}: idempotence on the diagonal, monotonicity in
/// both arguments, the two iteration identities, and the Lipschitz surrogate
/// for continuity. Reports come back in that order.
///
/// The iteration identities nest γ inside γ. The nested arguments are
/// treated as an outcome set (smaller value first), which is exactly what
/// folding a three-state act through a two-block partition computes.
inline std::vector<LawReport> check_gamma_laws(const GammaFunction& gamma, unsigned d, const LawOptions& opts = {}) {
    const auto grid = unit_grid(d);
    const auto fw = Framework::BeliefFunction;
    const StateSpace three(3);
    const Partition split_first(three, {Event{0}, Event{1, 2}});
    const Partition split_last(three, {Event{0, 1}, Event{2}});

    std::map<std::pair<std::size_t, std::size_t>, Utility> value; // grid indices i <= j
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i; j < grid.size(); ++j) value[{i, j}] = gamma_apply(gamma, ZPair(grid[i], grid[j]));
    auto g = [&](std::size_t i, std::size_t j) -> const Utility& { return value.at({i, j}); };

    detail::LawRecorder idempotence(Law::GammaIdempotence, opts.max_witnesses);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& x = grid[i];
        idempotence.check(g(i, i) == x, [&] {
            return Witness{"", {x}, g(i, i), x, {detail::direct_probe(fw, Act{x, x}, g(i, i))}};
        });
    }

    detail::LawRecorder monotone(Law::GammaMonotone, opts.max_witnesses);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i; j < grid.size(); ++j)
            for (std::size_t i2 = 0; i2 <= i; ++i2)
                for (std::size_t j2 = i2; j2 <= j; ++j2) {
                    if (i2 == i && j2 == j) continue;
                    monotone.check(g(i, j) >= g(i2, j2), [&] {
                        return Witness{"",
                                       {grid[i], grid[j], grid[i2], grid[j2]},
                                       g(i, j),
                                       g(i2, j2),
                                       {detail::direct_probe(fw, Act{grid[i], grid[j]}, g(i, j)),
                                        detail::direct_probe(fw, Act{grid[i2], grid[j2]}, g(i2, j2))}};
                    });
                }

    detail::LawRecorder iteration(Law::GammaIteration, opts.max_witnesses);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i; j < grid.size(); ++j) {
            const auto& x = grid[i];
            const auto& y = grid[j];
            const auto& direct = g(i, j);
            const auto first = ce_vacuous(gamma, OutcomeSet{g(i, i), direct});
            const auto second = ce_vacuous(gamma, OutcomeSet{direct, g(j, j)});
            iteration.check(first == direct, [&] {
                return Witness{"first", {x, y}, direct, first,
                               {detail::direct_probe(fw, Act{x, y}, direct),
                                detail::folded_probe(fw, Act{x, x, y}, split_first, first)}};
            });
            iteration.check(second == direct, [&] {
                return Witness{"second", {x, y}, direct, second,
                               {detail::direct_probe(fw, Act{x, y}, direct),
                                detail::folded_probe(fw, Act{x, y, y}, split_last, second)}};
            });
        }

    detail::LawRecorder lipschitz(Law::LipschitzContinuity, opts.max_witnesses);
    auto lipschitz_case = [&](std::size_t i, std::size_t j, std::size_t i2, std::size_t j2, const char* label) {
        const auto diff = abs_diff(g(i, j), g(i2, j2));
        const auto bound = opts.lipschitz * (abs_diff(grid[i], grid[i2]) + abs_diff(grid[j], grid[j2]));
        lipschitz.check(diff <= bound, [&] {
            return Witness{label,
                           {grid[i], grid[j], grid[i2], grid[j2], opts.lipschitz},
                           diff,
                           bound,
                           {detail::direct_probe(fw, Act{grid[i], grid[j]}, g(i, j)),
                            detail::direct_probe(fw, Act{grid[i2], grid[j2]}, g(i2, j2))}};
        });
    };
    for (std::size_t j = 0; j < grid.size(); ++j)
        for (std::size_t i = 0; i <= j; ++i)
            for (std::size_t i2 = i + 1; i2 <= j; ++i2) lipschitz_case(i, j, i2, j, "first");
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i; j < grid.size(); ++j)
            for (std::size_t j2 = j + 1; j2 < grid.size(); ++j2) lipschitz_case(i, j, i, j2, "second");

    return {idempotence.take(), monotone.take(), iteration.take(), lipschitz.take()};
}

inline bool all_passed(const std::vector<LawReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.passed; });
}

/// Non-empty subsets of the grid {k/d} with at most `max_size` elements,
/// ordered by size and then lexicographically.
inline std::vector<OutcomeSet> grid_subsets(unsigned d, std::size_t max_size) {
    const auto grid = unit_grid(d);
    std::vector<OutcomeSet> out;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t start, std::size_t want) {
        if (pick.size() == want) {
            OutcomeSet s;
            for (auto i : pick) s.insert(grid[i]);
            out.push_back(std::move(s));
            return;
        }
        for (std::size_t i = start; i < grid.size(); ++i) {
            pick.push_back(i);
            extend(i + 1, want);
            pick.pop_back();
        }
    };
    for (std::size_t size = 1; size <= std::min(max_size, grid.size()); ++size) extend(0, size);
    return out;
}

/// Unanimity, Range, Monotonicity and the Lipschitz continuity surrogate for
/// the operator under each configured framework's vacuous measure.
inline std::vector<LawReport> check_ev_properties(const CeOperator& op, const SearchConfig& cfg) {
    cfg.validate();
    const auto grid = unit_grid(cfg.grid_denominator);
    const auto subsets = grid_subsets(cfg.grid_denominator, cfg.max_set_size);
    for (const auto& w : subsets)
        if (w.size() > kDefaultVacuityCap) throw Error(ErrorCode::CapExceeded, "outcome set too large for the vacuity check");

    detail::LawRecorder unanimity(Law::Unanimity, cfg.max_witnesses);
    detail::LawRecorder range(Law::Range, cfg.max_witnesses);
    detail::LawRecorder monotone(Law::Monotonicity, cfg.max_witnesses);
    detail::LawRecorder continuity(Law::LipschitzContinuity, cfg.max_witnesses);

    for (auto fw : cfg.frameworks) {
        std::map<std::size_t, std::pair<PlausibilityMeasure, bool>> measures;
        auto eval = [&](const Act& f) {
            auto it = measures.find(f.size());
            if (it == measures.end()) {
                auto m = vacuous(StateSpace(f.size()), fw);
                const bool vac = detail::vacuous_for(op, m);
                it = measures.emplace(f.size(), std::pair{std::move(m), vac}).first;
            }
            return detail::ce_known(op, it->second.first, it->second.second, f);
        };

        for (auto n : cfg.state_sizes)
            for (const auto& c : grid) {
                const auto f = Act::constant(StateSpace(n), c);
                const auto v = eval(f);
                unanimity.check(v == c, [&] { return Witness{"", {c}, v, c, {detail::direct_probe(fw, f, v)}}; });
            }

        for (const auto& w : subsets) {
            const auto f = detail::act_of(w);
            const Act extremes{*w.begin(), *w.rbegin()};
            const auto left = eval(f);
            const auto right = eval(extremes);
            range.check(left == right, [&] {
                return Witness{"", std::vector<Rational>(w.begin(), w.end()), left, right,
                               {detail::direct_probe(fw, f, left), detail::direct_probe(fw, extremes, right)}};
            });
        }

        // Two-state acts (a, b) realize every outcome set {a, b}.
        const std::size_t m = grid.size();
        std::vector<Utility> pair_ce(m * m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) pair_ce[a * m + b] = eval(Act{grid[a], grid[b]});
        auto pce = [&](std::size_t a, std::size_t b) -> const Utility& { return pair_ce[a * m + b]; };

        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t a2 = 0; a2 <= a; ++a2)
                    for (std::size_t b2 = 0; b2 <= b; ++b2)
                        monotone.check(pce(a, b) >= pce(a2, b2), [&] {
                            return Witness{"",
                                           {grid[a], grid[b], grid[a2], grid[b2]},
                                           pce(a, b),
                                           pce(a2, b2),
                                           {detail::direct_probe(fw, Act{grid[a], grid[b]}, pce(a, b)),
                                            detail::direct_probe(fw, Act{grid[a2], grid[b2]}, pce(a2, b2))}};
                        });

        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t x2 = x + 1; x2 < m; ++x2) {
                    const auto diff = abs_diff(pce(x, b), pce(x2, b));
                    const auto bound = cfg.lipschitz * abs_diff(grid[x], grid[x2]);
                    continuity.check(diff <= bound, [&] {
                        return Witness{"",
                                       {grid[x], grid[b], grid[x2], grid[b], cfg.lipschitz},
                                       diff,
                                       bound,
                                       {detail::direct_probe(fw, Act{grid[x], grid[b]}, pce(x, b)),
                                        detail::direct_probe(fw, Act{grid[x2], grid[b]}, pce(x2, b))}};
                    });
                }
    }
    return {unanimity.take(), range.take(), monotone.take(), continuity.take()};
}

/// Context independence (I), strong independence (SI) and set monotonicity
/// (M) for the order induced by γ, over every applicable tuple drawn from
/// `family`. Adjoined points range over the union of the family's sets.
inline std::vector<LawReport> check_set_order_conditions(const GammaFunction& gamma, const std::vector<OutcomeSet>& family,
                                                         std::size_t max_witnesses = 64) {
    OutcomeSet point_set;
    for (const auto& s : family) {
        if (s.empty()) throw Error(ErrorCode::EmptyOutcomeSet, "family contains an empty set");
        point_set.insert(s.begin(), s.end());
    }
    if (point_set.size() > 64) throw Error(ErrorCode::CapExceeded, "set-order family spans more than 64 distinct outcomes");

    // Sets are handled as bitmasks over the sorted points; bit order matches
    // value order, so iterating bits yields the set in ascending order.
    using Mask = std::uint64_t;
    const std::vector<Utility> points(point_set.begin(), point_set.end());
    auto mask_of = [&](const OutcomeSet& s) {
        Mask m = 0;
        for (const auto& x : s) m |= Mask{1} << (std::lower_bound(points.begin(), points.end(), x) - points.begin());
        return m;
    };
    auto set_of = [&](Mask m) {
        OutcomeSet s;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (m >> i & 1) s.insert(points[i]);
        return s;
    };
    std::vector<Mask> masks;
    masks.reserve(family.size());
    for (const auto& s : family) masks.push_back(mask_of(s));

    const auto fw = Framework::BeliefFunction;
    std::unordered_map<Mask, Utility> cache;
    auto value = [&](Mask m) -> const Utility& {
        auto it = cache.find(m);
        if (it == cache.end()) it = cache.emplace(m, ce_vacuous(gamma, set_of(m))).first;
        return it->second;
    };
    auto probe = [&](Mask m) { return detail::direct_probe(fw, detail::act_of(set_of(m)), value(m)); };
    auto values_of = [&](Mask m) {
        std::vector<Rational> out;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (m >> i & 1) out.push_back(points[i]);
        return out;
    };
    const std::size_t np = points.size();

    detail::LawRecorder cond_i(Law::ConditionI, max_witnesses);
    for (const auto a : masks)
        for (std::size_t xi = 0; xi < np; ++xi) {
            if (a >> xi & 1) continue;
            for (std::size_t yi = 0; yi < xi; ++yi) {
                if (a >> yi & 1) continue;
                const Mask ax = a | Mask{1} << xi;
                const Mask ay = a | Mask{1} << yi;
                cond_i.check(value(ax) >= value(ay), [&] {
                    auto inputs = values_of(a);
                    inputs.push_back(points[xi]);
                    inputs.push_back(points[yi]);
                    return Witness{"A|x|y", std::move(inputs), value(ax), value(ay), {probe(ax), probe(ay)}};
                });
            }
        }

    detail::LawRecorder cond_si(Law::ConditionSI, max_witnesses);
    for (const auto a : masks)
        for (const auto b : masks) {
            if (value(a) < value(b)) continue;
            for (std::size_t xi = 0; xi < np; ++xi) {
                if ((a | b) >> xi & 1) continue;
                const Mask ax = a | Mask{1} << xi;
                const Mask bx = b | Mask{1} << xi;
                cond_si.check(value(ax) >= value(bx), [&] {
                    auto inputs = values_of(a);
                    inputs.push_back(points[xi]);
                    auto bv = values_of(b);
                    inputs.insert(inputs.end(), bv.begin(), bv.end());
                    return Witness{"A=" + std::to_string(std::popcount(a)) + "|x|B=" + std::to_string(std::popcount(b)),
                                   std::move(inputs),
                                   value(ax),
                                   value(bx),
                                   {probe(ax), probe(bx), probe(a), probe(b)}};
                });
            }
        }

    detail::LawRecorder cond_m(Law::ConditionM, max_witnesses);
    for (const auto a : masks)
        for (const auto b : masks) {
            if (a == b || (a & b) != a) continue;
            cond_m.check(value(b) >= value(a), [&] {
                auto inputs = values_of(b);
                auto av = values_of(a);
                inputs.insert(inputs.end(), av.begin(), av.end());
                return Witness{"B=" + std::to_string(std::popcount(b)) + "|A=" + std::to_string(std::popcount(a)),
                               std::move(inputs),
                               value(b),
                               value(a),
                               {probe(b), probe(a)}};
            });
        }

    return {cond_i.take(), cond_si.take(), cond_m.take()};
}

// ---------------------------------------------------------------------------
// Replay

using ProbeEvaluator = std::function<Utility(const Probe&)>;

/// Evaluates a probe directly through the engine.
inline Utility evaluate_probe(const CeOperator& op, const Probe& p) {
    const auto delta = vacuous(p.act.space(), p.framework);
    if (p.quantity == Probe::Quantity::Direct) return ce(op, delta, p.act);
    if (!p.partition) throw Error(ErrorCode::InvalidArgument, "folded probe without a partition");
    return check_sequential(op, delta, p.act, *p.partition).folded_value;
}

struct ReplayResult {
    bool probes_match = true;
    Rational left;
    Rational right;
};

/// Re-evaluates every probe of a witness and rebuilds its left/right values
/// from the fresh probe values.
inline ReplayResult replay_witness(Law law, const Witness& w, const ProbeEvaluator& eval) {
    ReplayResult r;
    std::vector<Utility> fresh;
    for (const auto& p : w.probes) {
        fresh.push_back(eval(p));
        if (fresh.back() != p.value) r.probes_match = false;
    }
    auto need = [&](std::size_t probes, std::size_t inputs) {
        if (fresh.size() < probes || w.inputs.size() < inputs)
            throw Error(ErrorCode::InvalidArgument, "witness for " + std::string(to_string(law)) + " is incomplete");
    };
    switch (law) {
    case Law::Unanimity:
    case Law::GammaIdempotence:
        need(1, 1);
        r.left = fresh[0];
        r.right = w.inputs[0];
        break;
    case Law::LipschitzContinuity:
        need(2, 5);
        r.left = abs_diff(fresh[0], fresh[1]);
        r.right = w.inputs[4] * (abs_diff(w.inputs[0], w.inputs[2]) + abs_diff(w.inputs[1], w.inputs[3]));
        break;
    default:
        need(2, 0);
        r.left = fresh[0];
        r.right = fresh[1];
        break;
    }
    return r;
}

/// Re-runs a sequential-consistency verdict; returns {direct, folded}.
inline std::pair<Utility, Utility> replay_verdict(const CeOperator& op, const ConsistencyVerdict& v) {
    const auto again = check_sequential(op, vacuous(v.act.space(), v.framework), v.act, v.partition);
    return {again.direct_value, again.folded_value};
}

// ---------------------------------------------------------------------------
// Synthesis of lawful γ tables

/// Every grid-valued table γ on {k/d} that passes check_gamma_laws. With
/// `require_continuity` false the Lipschitz surrogate is ignored. Cells are
/// filled in lexicographic order and pruned by idempotence and
/// monotonicity against the cells already assigned.
inline std::vector<GammaFunction> enumerate_lawful_gammas(unsigned d, bool require_continuity = true) {
    const auto grid = unit_grid(d);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i; j < grid.size(); ++j) cells.emplace_back(i, j);

    std::vector<std::size_t> assigned(cells.size());
    std::vector<GammaFunction> out;
    const LawOptions opts{1, 1};

    std::function<void(std::size_t)> fill = [&](std::size_t c) {
        if (c == cells.size()) {
            // Cheap screen on grid indices: both iteration identities must
            // hold. Survivors are confirmed by the full law checker.
            std::vector<std::size_t> at(grid.size() * grid.size());
            for (std::size_t k = 0; k < cells.size(); ++k) at[cells[k].first * grid.size() + cells[k].second] = assigned[k];
            auto g = [&](std::size_t a, std::size_t b) { return at[std::min(a, b) * grid.size() + std::max(a, b)]; };
            for (const auto& [i, j] : cells)
                if (g(g(i, i), g(i, j)) != g(i, j) || g(g(i, j), g(j, j)) != g(i, j)) return;

            std::map<std::pair<Rational, Rational>, Utility> table;
            for (std::size_t k = 0; k < cells.size(); ++k)
                table[{grid[cells[k].first], grid[cells[k].second]}] = grid[assigned[k]];
            auto gamma = GammaFunction::tabulated(std::move(table));
            auto reports = check_gamma_laws(gamma, d, opts);
            bool ok = true;
            for (const auto& r : reports)
                if (!r.passed && (require_continuity || r.law != Law::LipschitzContinuity)) ok = false;
            if (ok) out.push_back(std::move(gamma));
            return;
        }
        const auto [i, j] = cells[c];
        for (std::size_t v = 0; v < grid.size(); ++v) {
            if (i == j && v != i) continue;
            bool ok = true;
            for (std::size_t k = 0; k < c && ok; ++k) {
                const auto [i2, j2] = cells[k];
                if (i2 <= i && j2 <= j && assigned[k] > v) ok = false;
                if (i2 >= i && j2 >= j && assigned[k] < v) ok = false;
            }
            if (!ok) continue;
            assigned[c] = v;
            fill(c + 1);
        }
    };
    fill(0);
    return out;
}

/// If γ coincides on the whole grid with the anchored rule for a = γ(0,1),
/// returns that a.
inline std::optional<Utility> matching_anchor(const GammaFunction& gamma, unsigned d) {
    const auto grid = unit_grid(d);
    const auto a = gamma_apply(gamma, ZPair(0, 1));
    const auto anchored = GammaFunction::anchored(a);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i; j < grid.size(); ++j) {
            const ZPair z(grid[i], grid[j]);
            if (gamma_apply(gamma, z) != gamma_apply(anchored, z)) return std::nullopt;
        }
    return a;
}

} // namespace ignorance
