#pragma once

#include "sumrange/core/order.hpp"
#include "sumrange/core/series_spec.hpp"
#include "sumrange/core/value_family.hpp"

#include <optional>
#include <vector>

namespace sumrange {

/// One symmetric element: `value` stands for the pair +-value.
struct TableElement {
    BasisValue value;
    Order order;
};

/// The distinct elements of a simplified series with their orders, and a
/// recorded separation radius (0: not known to be separated).
class ElementTable {
public:
    ElementTable() = default;
    ElementTable(BasisPtr basis, std::vector<TableElement> elements, Rational separation);

    /// Finite table; the separation is computed exhaustively over +-X.
    static ElementTable finite(BasisPtr basis, std::vector<TableElement> elements);
    /// Table of a SymmetricOrdered spec.
    static ElementTable from_spec(const SeriesSpec& spec);
    /// Described infinite table: every family value v contributes +-v once.
    static ElementTable from_family(const ValueFamily& family);

    const BasisPtr& basis() const { return basis_; }
    const std::vector<TableElement>& elements() const { return elements_; }
    const std::optional<ValueFamily>& family() const { return family_; }
    const Rational& separation() const { return separation_; }

    /// Nonzero elements of infinite order, in table order.
    std::vector<BasisValue> generators() const;

private:
    BasisPtr basis_;
    std::vector<TableElement> elements_;
    std::optional<ValueFamily> family_;
    Rational separation_ = 0;
};

/// Multiplicity of e in the simplified series (0 when absent).
Order element_order(const ElementTable& table, const BasisValue& e);

/// Dyadic r with 0 < r < min pairwise distance of +-values (zero counted
/// once); 0 when fewer than two points.
Rational separation_radius(const Basis& basis, const std::vector<BasisValue>& values);

} // namespace sumrange
