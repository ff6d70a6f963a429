#include "sumrange/statconv/reduction.hpp"

#include "sumrange/core/error.hpp"

namespace sumrange {

ZeroSubstitution zero_substitution_reduction(const SeriesSpec& spec, ZeroSubstitutionOptions options) {
    if (spec.has_infinitely_many_zeros()) {
        return {spec, BasisValue(), 0, 0, false};
    }
    const auto& null = spec.metadata().null_subsequence;
    if (!null) {
        throw Error(ErrorCode::NoNullSubsequence, "spec declares no subsequence tending to zero");
    }
    SeriesSpec out = spec.with_zero_substitution(*null);
    if (!out.has_infinitely_many_zeros()) {
        throw Error(ErrorCode::NoNullSubsequence, "designated subsequence is finite");
    }
    std::vector<BasisValue> removed;
    for (std::uint64_t i = 1; i <= options.correction_terms; ++i) {
        auto k = out.zeroed_index(i);
        if (!k) {
            break;
        }
        removed.push_back(spec.term(*k));
    }
    ZeroSubstitution r{out, exact_sum(removed), 1, removed.size(), true};
    if (!removed.empty()) {
        // sum_{i > P} 1/i^2 < 1/P; picks past the index range still count.
        r.remainder_bound = Rational(1, static_cast<unsigned long>(removed.size()));
    }
    return r;
}

} // namespace sumrange
