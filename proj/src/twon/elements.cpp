#include "sumrange/twon/elements.hpp"

#include "sumrange/core/error.hpp"

#include <algorithm>

namespace sumrange {

ElementTable::ElementTable(BasisPtr basis, std::vector<TableElement> elements, Rational separation)
    : basis_(std::move(basis)), elements_(std::move(elements)), separation_(std::move(separation)) {
    if (!basis_) {
        throw Error(ErrorCode::InvalidArgument, "element table needs a basis");
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (elements_[i].value == elements_[j].value || elements_[i].value == -elements_[j].value) {
                throw Error(ErrorCode::InvalidArgument, "element table entries must be distinct up to sign");
            }
        }
    }
}

ElementTable ElementTable::finite(BasisPtr basis, std::vector<TableElement> elements) {
    std::vector<BasisValue> values;
    for (const TableElement& e : elements) {
        values.push_back(e.value);
    }
    Rational sep = separation_radius(*basis, values);
    return ElementTable(std::move(basis), std::move(elements), sep);
}

ElementTable ElementTable::from_spec(const SeriesSpec& spec) {
    if (spec.variant() != SpecVariant::SymmetricOrdered) {
        throw Error(ErrorCode::InvalidArgument, "element tables come from SymmetricOrdered specs");
    }
    std::vector<TableElement> elements;
    for (const auto& e : spec.symmetric_elements()) {
        elements.push_back({e.value, e.order});
    }
    return finite(spec.basis(), std::move(elements));
}

ElementTable ElementTable::from_family(const ValueFamily& family) {
    ElementTable t;
    t.basis_ = family.basis();
    t.family_ = family;
    return t;
}

std::vector<BasisValue> ElementTable::generators() const {
    std::vector<BasisValue> out;
    for (const TableElement& e : elements_) {
        if (e.order.is_infinite() && !e.value.is_zero()) {
            out.push_back(e.value);
        }
    }
    return out;
}

Order element_order(const ElementTable& table, const BasisValue& e) {
    for (const TableElement& el : table.elements()) {
        if (el.value == e || el.value == -e) {
            return el.order;
        }
    }
    if (table.family()) {
        const ValueFamily& f = *table.family();
        std::vector<Index> hits = f.find(e);
        if (!e.is_zero()) {
            std::vector<Index> neg = f.find(-e);
            hits.insert(hits.end(), neg.begin(), neg.end());
        } else {
            return Order::finite(2 * hits.size());
        }
        return Order::finite(hits.size());
    }
    return Order::finite(0);
}

Rational separation_radius(const Basis& basis, const std::vector<BasisValue>& values) {
    std::vector<BasisValue> pts;
    bool zero = false;
    for (const BasisValue& v : values) {
        if (v.is_zero()) {
            zero = true;
            continue;
        }
        pts.push_back(v);
        pts.push_back(-v);
    }
    if (zero) {
        pts.emplace_back();
    }
    if (pts.size() < 2) {
        return 0;
    }
    std::sort(pts.begin(), pts.end(), [&](const BasisValue& a, const BasisValue& b) { return less(basis, a, b); });
    std::optional<BasisValue> best;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        BasisValue d = pts[i] - pts[i - 1];
        if (!best || less(basis, d, *best)) {
            best = d;
        }
    }
    return rational_lower_bound(basis, *best);
}

} // namespace sumrange
