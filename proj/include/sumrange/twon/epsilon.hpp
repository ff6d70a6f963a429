#pragma once

#include "sumrange/core/series_spec.hpp"
#include "sumrange/core/value_family.hpp"
#include "sumrange/twon/delta.hpp"
#include "sumrange/twon/elements.hpp"

#include <optional>
#include <vector>

namespace sumrange {

enum class CellKind { WholeCell, Segment, Merged, Singleton };

/// One set G_k of the covering with the family members M_k it holds.
struct CollectionCell {
    CellKind kind = CellKind::Segment;
    BasisValue lo;
    BasisValue hi;
    bool hi_closed = true;  // whole cells are [lo, hi)
    CellContents members;
    DeltaResult delta;
    Index cell_number = 0;  // index k of the width-eps cell it started in
};

struct EpsilonCollection {
    ValueFamily family;
    Rational eps;
    /// Materialised part, in increasing order.
    std::vector<CollectionCell> cells;
    /// Cells numbered above n0 all have width below eps/4.
    Index n0 = 0;
    /// Members of this tail from this local index on are singletons, one per
    /// set, spaced more than eps/4 apart.
    std::optional<std::pair<std::size_t, Index>> singleton_tail;
    /// Delta_G; nullopt when infinite.
    std::optional<BasisValue> delta_total;

    /// Position of the set containing x: an index into `cells`, or
    /// cells.size() for the singleton region. nullopt when x is not covered.
    std::optional<std::size_t> locate(const BasisValue& x) const;
    BasisValue diameter(std::size_t i) const { return cells[i].hi - cells[i].lo; }
};

/// Covering of the non-negative family X+ by sets of diameter <= eps.
/// Throws TailDeviationDiverges when an unbounded tail lacks a gap
/// certificate above eps/4.
EpsilonCollection build_epsilon_collection(const ValueFamily& xplus, const Rational& eps);

struct Case1Reduction {
    SeriesSpec replacement;
    ElementTable table;
    /// Sum |x_k - y_k| over the whole series is at most this (2 Delta_G).
    BasisValue deviation_bound;
};

/// Replaces every member of G_k by a(M_k). The spec must be in symmetric
/// form with values equal to the collection's family (SymmetricOrdered specs
/// pass through unchanged). Throws DeltaInfinite when Delta_G is infinite.
Case1Reduction case1_separation_reduction(const SeriesSpec& spec, const EpsilonCollection& collection);

} // namespace sumrange
