#include "sumrange/core/numeric.hpp"

#include <array>
#include <cmath>

namespace sumrange {

void NeumaierSum::add(long double x) {
    long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

long double to_long_double(const Rational& q) {
    double hi = q.get_d();
    Rational rem = q - Rational(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rem.get_d());
}

namespace {

constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;

const std::array<long double, 65>& harmonic_table() {
    static const std::array<long double, 65> table = [] {
        std::array<long double, 65> t{};
        NeumaierSum s;
        for (std::size_t n = 1; n < t.size(); ++n) {
            s.add(1.0L / static_cast<long double>(n));
            t[n] = s.value();
        }
        return t;
    }();
    return table;
}

} // namespace

long double harmonic_approx(std::uint64_t n) {
    const auto& table = harmonic_table();
    if (n < table.size()) {
        return table[n];
    }
    long double x = static_cast<long double>(n);
    long double inv2 = 1.0L / (x * x);
    // Asymptotic expansion; at n > 64 the omitted term is below 1e-22.
    long double series = 1.0L / (2.0L * x) -
                         inv2 * (1.0L / 12.0L - inv2 * (1.0L / 120.0L - inv2 * (1.0L / 252.0L - inv2 / 240.0L)));
    return std::log(x) + kEulerGamma + series;
}

Rational harmonic_exact(std::uint64_t n) {
    // Common-denominator accumulation: H = p / q with q = n!-like growth kept
    // canonical at the end only.
    Integer p = 0;
    Integer q = 1;
    for (std::uint64_t i = 1; i <= n; ++i) {
        Integer ii(static_cast<unsigned long>(i));
        p = p * ii + q;
        q = q * ii;
        if ((i & 31u) == 0) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            p /= g;
            q /= g;
        }
    }
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s < a ? kIndexMax : s;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kIndexMax / a) {
        return kIndexMax;
    }
    return a * b;
}

} // namespace sumrange
