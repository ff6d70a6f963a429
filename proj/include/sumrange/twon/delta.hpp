#pragma once

#include "sumrange/core/basis_value.hpp"
#include "sumrange/core/value_family.hpp"

#include <optional>
#include <vector>

namespace sumrange {

/// Delta(M) = inf_a sum_{n in M} |x_n - a| and a minimiser a(M).
struct DeltaResult {
    std::optional<BasisValue> delta;      // nullopt: infinite
    std::optional<BasisValue> minimizer;  // nullopt for empty M or no limit point

    bool infinite() const { return !delta.has_value(); }
};

/// Finite M: a(M) is the lower median.
DeltaResult delta_of_M(const Basis& basis, const std::vector<BasisValue>& values);
/// Described M: explicit values plus tails. With one cluster a(M) is its
/// limit. Throws NoLimitPoint for two or more distinct limits.
DeltaResult delta_of_M(const ValueFamily& family);

struct IndexPair {
    Index n = 0;
    Index m = 0;
    BasisValue magnitude;  // |x_n - x_m|
};

struct PairSelection {
    std::vector<IndexPair> pairs;
    BasisValue cumulative;

    /// Distinct indices and exact cumulative sum.
    bool consistent() const;
};

/// Leftmost-with-rightmost pairing about the median. Indices are 1-based
/// positions in `values`; the cumulative sum equals Delta(M).
PairSelection select_pairs_delta(const Basis& basis, const std::vector<BasisValue>& values);
/// Family with finite Delta: family indices, cumulative > Delta - eps.
PairSelection select_pairs_delta(const ValueFamily& family, const Rational& eps);

/// Family with infinite Delta: cumulative > K. Two or more clusters pair
/// across the two lowest clusters; a single reciprocal cluster pairs far
/// members with near ones.
PairSelection select_pairs_unbounded(const ValueFamily& family, const BasisValue& k);

} // namespace sumrange
