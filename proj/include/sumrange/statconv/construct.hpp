#pragma once

#include "sumrange/core/classification.hpp"
#include "sumrange/core/schedule.hpp"
#include "sumrange/statconv/witness.hpp"

namespace sumrange {

/// Emits the witness's pi-block (m_{k-1}, m_k], then (m_{k+1})^2 zero terms,
/// for k = 1, 2, ... Zero indices taken by a zero block are skipped when pi
/// reaches them later. Throws NotEnoughZeros unless the spec has infinitely
/// many zero terms.
PermutationSchedule construct_stat_rearrangement(const SeriesSpec& spec, const LprWitness& witness);

/// Statistical sum range from declared convergence classes.
SumRangeClassification classify_sr_st(const SeriesSpec& spec);

/// Ordinary sum range: the sum itself under unconditional convergence, all
/// reals under conditional convergence.
SumRangeClassification classify_ordinary(const SeriesSpec& spec);

} // namespace sumrange
