#pragma once

#include "sumrange/core/riemann.hpp"
#include "sumrange/core/schedule.hpp"
#include "sumrange/core/series_spec.hpp"
#include "sumrange/core/value_family.hpp"

#include <memory>

namespace sumrange {

/// x_n - x_m > 0 for family indices n, m.
struct HarvestPair {
    Index n = 0;
    Index m = 0;
    BasisValue difference;
    long double approx = 0.0L;
    /// Stage j collects pairs until their sum exceeds 1.
    std::uint64_t stage = 1;
};

/// Infinite stream of disjoint pairs with differences tending to zero and a
/// divergent sum. Random access, extended lazily; copies share the cache.
class PairHarvest {
public:
    PairHarvest(ValueFamily family, Case2Strategy strategy);

    const HarvestPair& at(Index k) const;
    /// True when family index f belongs to some pair.
    bool harvested(Index f) const;
    /// True when some family index is never harvested.
    bool has_missing() const;

    Case2Strategy strategy() const;
    const ValueFamily& family() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// Throws FamilyNotSupported unless the spec is in symmetric form and its
/// values carry a case-2 certificate.
PairHarvest case2_pair_harvest(const SeriesSpec& spec);

/// Greedy to `target` over the blocks A_k = (x_n, -x_m) and
/// B_k = (x_m, -x_n); unharvested (x_f, -x_f) pairs are injected after
/// every other block.
PermutationSchedule construct_case2_target(const SeriesSpec& spec, const PairHarvest& harvest,
                                           const BasisValue& target, GreedyOptions options = {});

} // namespace sumrange
