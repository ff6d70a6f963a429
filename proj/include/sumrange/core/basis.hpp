#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sumrange {

using Rational = mpq_class;
using Integer = mpz_class;

/// Term position in a series, 1-based.
using Index = std::uint64_t;

/// Minimum number of significant decimal digits accepted for an irrational
/// basis element.
inline constexpr int kMinBasisDigits = 50;

struct BasisElement {
    std::string name;
    /// Set when the element is an exact rational alias. Such elements never
    /// carry a coefficient of their own; parsing folds them into the rational
    /// part.
    std::optional<Rational> exact;
    /// Decimal text as declared (irrational elements only).
    std::string decimal;
    /// Exact rational value of `decimal` and the half-width of the interval
    /// known to contain the true real.
    Rational approx;
    Rational radius;
    long double approx_ld = 0.0L;
    int significant_digits = 0;
};

/// Declaration of one basis element as it appears in a spec file.
struct BasisDecl {
    std::string name;
    std::string decimal;            // empty for exact elements or built-ins
    std::optional<Rational> exact;  // exact rational alias

    bool operator==(const BasisDecl&) const = default;
};

/// Ordered list of reals b_0 = 1, b_1, ... over which every BasisValue is an
/// exact rational combination. The irrational elements are assumed linearly
/// independent over the rationals together with 1.
class Basis {
public:
    /// Element 0 (the unit "1") is implicit and must not be declared.
    static std::shared_ptr<const Basis> make(const std::vector<BasisDecl>& decls);

    /// Unit plus sqrt2, sqrt3, sqrt5, pi, e, ln2 from the built-in table.
    static std::shared_ptr<const Basis> standard();
    static std::shared_ptr<const Basis> rationals_only();

    /// Built-in 62-digit decimal for a known constant name, if any.
    static std::optional<std::string_view> builtin_decimal(std::string_view name);

    std::size_t size() const { return elements_.size(); }
    const BasisElement& operator[](std::size_t i) const { return elements_[i]; }
    std::optional<std::uint32_t> find(std::string_view name) const;

    const std::vector<BasisDecl>& declarations() const { return decls_; }

private:
    std::vector<BasisElement> elements_;
    std::vector<BasisDecl> decls_;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// Parses "p", "p/q", "-p/q" or a plain decimal "1.25" into an exact rational.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

} // namespace sumrange
