#pragma once

#include "sumrange/core/basis.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sumrange {

/// Exact rational combination sum_i c_i * b_i over a Basis. Coefficients are
/// stored sorted by basis index with no zero entries, so equality is
/// coefficient-wise.
class BasisValue {
public:
    using Coefficient = std::pair<std::uint32_t, Rational>;

    BasisValue() = default;
    BasisValue(const Rational& q);  // NOLINT(google-explicit-constructor)
    BasisValue(long n) : BasisValue(Rational(n)) {}  // NOLINT(google-explicit-constructor)
    BasisValue(int n) : BasisValue(Rational(n)) {}   // NOLINT(google-explicit-constructor)

    static BasisValue unit(std::uint32_t basis_index, const Rational& coefficient = 1);
    static BasisValue from_coefficients(std::vector<Coefficient> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const { return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0].first == 0); }
    Rational rational_part() const;
    /// Coefficient of basis element `i` (zero when absent).
    Rational coefficient(std::uint32_t i) const;
    std::span<const Coefficient> coefficients() const { return coeffs_; }

    BasisValue& operator+=(const BasisValue& o);
    BasisValue& operator-=(const BasisValue& o);
    BasisValue& operator*=(const Rational& q);

    friend BasisValue operator+(BasisValue a, const BasisValue& b) { return a += b; }
    friend BasisValue operator-(BasisValue a, const BasisValue& b) { return a -= b; }
    friend BasisValue operator*(BasisValue a, const Rational& q) { return a *= q; }
    friend BasisValue operator*(const Rational& q, BasisValue a) { return a *= q; }
    BasisValue operator-() const;

    friend bool operator==(const BasisValue& a, const BasisValue& b);

    /// Floating approximation through the basis decimals; never used to decide
    /// ordering.
    long double approx(const Basis& basis) const;

    std::string to_string(const Basis& basis) const;
    std::size_t hash() const;

private:
    void add_scaled(const BasisValue& o, int sign);

    std::vector<Coefficient> coeffs_;
};

struct BasisValueHash {
    std::size_t operator()(const BasisValue& v) const { return v.hash(); }
};

/// Certified ordering. Exact values short-circuit; otherwise the sign of a - b
/// is read off the interval enclosure of the difference. Throws
/// PrecisionInsufficient when the enclosure straddles zero.
std::strong_ordering compare(const Basis& basis, const BasisValue& a, const BasisValue& b);

int sign(const Basis& basis, const BasisValue& v);
BasisValue abs(const Basis& basis, const BasisValue& v);
const BasisValue& min(const Basis& basis, const BasisValue& a, const BasisValue& b);
const BasisValue& max(const Basis& basis, const BasisValue& a, const BasisValue& b);
inline bool less(const Basis& basis, const BasisValue& a, const BasisValue& b) {
    return compare(basis, a, b) == std::strong_ordering::less;
}

/// Exact sum of many values with pairwise (tree) reduction, which keeps
/// intermediate denominators balanced.
BasisValue exact_sum(std::span<const BasisValue> values);

/// Parses a basis combination such as "1+1*sqrt2", "-3/2*pi + 4", "1/100",
/// "0.01" or "sqrt2". Names bound to exact rationals fold into the rational
/// part.
BasisValue parse_value(const Basis& basis, std::string_view text);

/// Returns a rational r with 0 < r < v (v must be certifiably positive); r is
/// dyadic and within a factor two of v.
Rational rational_lower_bound(const Basis& basis, const BasisValue& v);

} // namespace sumrange
