#pragma once

#include "sumrange/core/classification.hpp"
#include "sumrange/core/series_spec.hpp"

namespace sumrange {

struct Simplified {
    SeriesSpec spec;
    /// SR2(original) = SR2(spec) + shift.
    BasisValue shift;
};

/// Equivalent series x_1, -x_1, x_3, -x_3, ... Needs alpha declared
/// unconditionally convergent with a known sum.
Simplified simplify_to_symmetric(const SeriesSpec& spec);

/// The family of |v| for symmetric values v (pairs may be reordered without
/// changing S_2n). Throws Unsupported for tails whose sign cannot be fixed.
ValueFamily positive_values(const ValueFamily& values);

SumRangeClassification classify_sr2(const SeriesSpec& spec);

} // namespace sumrange
