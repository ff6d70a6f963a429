#pragma once

#include "sumrange/core/series_spec.hpp"

namespace sumrange {

struct ZeroSubstitution {
    SeriesSpec spec;
    /// Sum of the removed terms over the first `summed` picks; the rest sum
    /// to at most `remainder_bound` in absolute value.
    BasisValue correction;
    Rational remainder_bound = 0;
    std::uint64_t summed = 0;
    bool changed = false;
};

struct ZeroSubstitutionOptions {
    std::uint64_t correction_terms = 64;
};

/// Zeroes a sub-subsequence of the designated null subsequence whose terms
/// are absolutely summable (i-th pick below 1/i^2), so the result has
/// infinitely many zero terms. Specs that already have them pass through.
ZeroSubstitution zero_substitution_reduction(const SeriesSpec& spec, ZeroSubstitutionOptions options = {});

} // namespace sumrange
