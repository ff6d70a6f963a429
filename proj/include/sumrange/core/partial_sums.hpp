#pragma once

#include "sumrange/core/numeric.hpp"
#include "sumrange/core/schedule.hpp"
#include "sumrange/core/series_spec.hpp"

namespace sumrange {

/// Exact partial sums S_n of a rearranged series.
class PartialSumStream {
public:
    struct Step {
        std::uint64_t n = 0;
        Index index = 0;
        BasisValue sum;
    };

    PartialSumStream(SeriesSpec spec, PermutationSchedule schedule);

    Step next();
    /// Consumes two terms and returns S_{2n}.
    Step next_even();
    const BasisValue& sum() const { return sum_; }
    std::uint64_t n() const { return n_; }
    PermutationSchedule& schedule() { return schedule_; }
    const SeriesSpec& spec() const { return spec_; }

private:
    SeriesSpec spec_;
    PermutationSchedule schedule_;
    BasisValue sum_;
    std::uint64_t n_ = 0;
};

/// Compensated long double partial sums, for series whose exact sums grow
/// unwieldy denominators.
class ApproxPartialSumStream {
public:
    struct Step {
        std::uint64_t n = 0;
        Index index = 0;
        long double sum = 0.0L;
    };

    ApproxPartialSumStream(SeriesSpec spec, PermutationSchedule schedule);

    Step next();
    Step next_even();
    long double sum() const { return sum_.value(); }
    std::uint64_t n() const { return n_; }
    PermutationSchedule& schedule() { return schedule_; }
    const SeriesSpec& spec() const { return spec_; }

private:
    SeriesSpec spec_;
    PermutationSchedule schedule_;
    NeumaierSum sum_;
    std::uint64_t n_ = 0;
};

} // namespace sumrange
