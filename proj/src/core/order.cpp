#include "sumrange/core/order.hpp"

#include "sumrange/core/error.hpp"

#include <charconv>

namespace sumrange {

std::uint64_t Order::count() const {
    if (infinite_) {
        throw Error(ErrorCode::InvalidArgument, "infinite order has no count");
    }
    return count_;
}

std::string Order::to_string() const {
    return infinite_ ? "inf" : std::to_string(count_);
}

std::optional<Order> Order::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Infinity") {
        return infinite();
    }
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return finite(n);
}

Order operator+(const Order& a, const Order& b) {
    if (a.infinite_ || b.infinite_) {
        return Order::infinite();
    }
    std::uint64_t s = a.count_ + b.count_;
    if (s < a.count_) {
        throw Error(ErrorCode::Overflow, "order count overflow");
    }
    return Order::finite(s);
}

} // namespace sumrange
