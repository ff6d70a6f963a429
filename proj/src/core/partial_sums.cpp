#include "sumrange/core/partial_sums.hpp"

namespace sumrange {

PartialSumStream::PartialSumStream(SeriesSpec spec, PermutationSchedule schedule)
    : spec_(std::move(spec)), schedule_(std::move(schedule)) {}

PartialSumStream::Step PartialSumStream::next() {
    Emission e = schedule_.next();
    sum_ += spec_.term(e.index);
    ++n_;
    return {n_, e.index, sum_};
}

PartialSumStream::Step PartialSumStream::next_even() {
    if (n_ % 2 == 0) {
        next();
    }
    return next();
}

ApproxPartialSumStream::ApproxPartialSumStream(SeriesSpec spec, PermutationSchedule schedule)
    : spec_(std::move(spec)), schedule_(std::move(schedule)) {}

ApproxPartialSumStream::Step ApproxPartialSumStream::next() {
    Emission e = schedule_.next();
    sum_.add(spec_.approx(e.index));
    ++n_;
    return {n_, e.index, sum_.value()};
}

ApproxPartialSumStream::Step ApproxPartialSumStream::next_even() {
    if (n_ % 2 == 0) {
        next();
    }
    return next();
}

} // namespace sumrange
