#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sumrange {

/// Multiplicity of an element in a series: a non-negative count or the
/// distinguished infinite tag.
class Order {
public:
    constexpr Order() = default;
    static constexpr Order finite(std::uint64_t n) { return Order(n, false); }
    static constexpr Order infinite() { return Order(0, true); }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_zero() const { return !infinite_ && count_ == 0; }
    /// Throws InvalidArgument when infinite.
    std::uint64_t count() const;

    std::string to_string() const;
    /// Accepts a decimal count or "inf" / "infinity".
    static std::optional<Order> parse(std::string_view text);

    friend constexpr bool operator==(const Order& a, const Order& b) {
        return a.infinite_ == b.infinite_ && a.count_ == b.count_;
    }

    friend Order operator+(const Order& a, const Order& b);

private:
    constexpr Order(std::uint64_t n, bool inf) : count_(n), infinite_(inf) {}

    std::uint64_t count_ = 0;
    bool infinite_ = false;
};

} // namespace sumrange
