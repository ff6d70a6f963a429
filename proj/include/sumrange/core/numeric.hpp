#pragma once

#include "sumrange/core/basis.hpp"

#include <cstdint>

namespace sumrange {

/// Compensated (Neumaier) long double accumulator.
class NeumaierSum {
public:
    void add(long double x);
    long double value() const { return sum_ + comp_; }
    void reset(long double v = 0.0L) {
        sum_ = v;
        comp_ = 0.0L;
    }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

long double to_long_double(const Rational& q);

/// H_n = 1 + 1/2 + ... + 1/n, accurate to about long double precision.
long double harmonic_approx(std::uint64_t n);

/// Exact H_n. Cost grows quadratically in n; meant for small n.
Rational harmonic_exact(std::uint64_t n);

/// Saturating helpers for index arithmetic.
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
inline constexpr std::uint64_t kIndexMax = ~std::uint64_t{0};

} // namespace sumrange
