#pragma once

#include "sumrange/core/classification.hpp"
#include "sumrange/core/riemann.hpp"
#include "sumrange/core/schedule.hpp"
#include "sumrange/core/series_spec.hpp"

namespace sumrange {

/// Schedule whose even partial sums tend to `target`, picked from the SR2
/// classification. Throws TargetNotInRange when the target is not
/// attainable and Unsupported when no constructor covers the spec.
PermutationSchedule construct_target_2n(const SeriesSpec& spec, const BasisValue& target,
                                        const SumRangeClassification& classification, GreedyOptions options = {});
PermutationSchedule construct_target_2n(const SeriesSpec& spec, const BasisValue& target, GreedyOptions options = {});

} // namespace sumrange
