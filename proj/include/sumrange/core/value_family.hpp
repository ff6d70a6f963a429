#pragma once

#include "sumrange/core/basis_value.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace sumrange {

enum class TailKind {
    HarmonicNumbers,       // H_i
    Reciprocal,            // limit + 1/(a*i + b)
    Geometric,             // limit + scale * ratio^i
    IntegerPlusGeometric,  // i + ratio^i
};

/// One strictly monotone value stream v_1, v_2, ... inside a family.
struct FamilyTail {
    TailKind kind = TailKind::Geometric;
    BasisValue limit;
    Rational a = 1;
    Rational b = 0;
    Rational scale = 1;
    Rational ratio = Rational(1, 2);

    static FamilyTail harmonic();
    static FamilyTail reciprocal(BasisValue limit, Rational a = 1, Rational b = 0);
    static FamilyTail geometric(BasisValue limit, Rational scale, Rational ratio);
    static FamilyTail integer_plus_geometric(Rational ratio);

    bool has_limit() const { return kind == TailKind::Reciprocal || kind == TailKind::Geometric; }
    /// +1 for increasing, -1 for decreasing.
    int direction() const;

    friend bool operator==(const FamilyTail& x, const FamilyTail& y);
};

struct TailOverride {
    std::size_t tail = 0;
    Index from = 1;  // tail-local index
    BasisValue value;

    friend bool operator==(const TailOverride&, const TailOverride&) = default;
};

/// Replacement of family values: listed family indices and whole tail
/// suffixes map to fixed values. Produced by the case-1 reduction.
struct Quantization {
    std::vector<std::pair<Index, BasisValue>> overrides;  // sorted by index
    std::vector<TailOverride> tails;

    bool empty() const { return overrides.empty() && tails.empty(); }
    friend bool operator==(const Quantization&, const Quantization&) = default;
};

struct Cluster {
    BasisValue limit;
    std::vector<std::size_t> tails;
    /// Sum over the cluster's tails of |v_i - limit|; nullopt when infinite.
    std::optional<Rational> deviation;
};

struct TailRange {
    Index first = 1;
    std::optional<Index> last;  // nullopt: unbounded
};

struct CellContents {
    std::vector<Index> finite;  // family indices, sorted
    std::vector<std::pair<std::size_t, Index>> unbounded;  // (tail, first local index)
    std::optional<BasisValue> inf;
    std::optional<BasisValue> sup;

    bool empty() const { return finite.empty() && unbounded.empty(); }
};

enum class Case2Strategy { HarmonicGaps, ClusterFarNear };

/// Described value sequence: a finite explicit part, then the tails
/// interleaved round-robin. Family index k >= 1.
class ValueFamily {
public:
    ValueFamily() = default;
    ValueFamily(BasisPtr basis, std::vector<BasisValue> explicit_values, std::vector<FamilyTail> tails = {});

    const BasisPtr& basis() const { return basis_; }
    const std::vector<BasisValue>& explicit_values() const { return explicit_; }
    const std::vector<FamilyTail>& tails() const { return tails_; }
    const Quantization& quantization() const { return quant_; }
    ValueFamily with_quantization(Quantization q) const;
    ValueFamily without_quantization() const;

    std::optional<Index> size() const;

    struct Position {
        std::optional<std::size_t> tail;  // nullopt: explicit part
        Index local = 1;
    };
    Position locate(Index k) const;
    Index family_index(std::size_t tail, Index local) const;

    BasisValue value(Index k) const;
    BasisValue raw_value(Index k) const;
    long double approx(Index k) const;
    long double raw_approx(Index k) const;

    BasisValue tail_value(std::size_t tail, Index i) const;
    long double tail_approx(std::size_t tail, Index i) const;

    std::vector<Cluster> clusters() const;
    /// Sum_{i >= from} |v_i - limit| for a tail with a limit.
    std::optional<Rational> tail_deviation(std::size_t tail, Index from) const;

    /// Tail-local indices with value in [lo, hi) (or [lo, hi]); empty when none.
    std::optional<TailRange> tail_members(std::size_t tail, const BasisValue& lo, const BasisValue& hi,
                                          bool hi_closed) const;
    /// All family members in the interval. Throws Unsupported if a finite
    /// range is too long to materialise.
    CellContents cell(const BasisValue& lo, const BasisValue& hi, bool hi_closed) const;

    /// Family indices whose value equals x.
    std::vector<Index> find(const BasisValue& x) const;

    /// Upper bound on all values except those of unbounded tails.
    BasisValue bounded_sup() const;
    bool has_unbounded_tail() const;
    /// Certified lower bound on consecutive gaps of the unbounded tail, when
    /// there is exactly one and it is an IntegerPlusGeometric tail.
    std::optional<Rational> unbounded_gap() const;
    /// True when every value is certifiably positive.
    bool all_positive() const;

    /// Cell width for the covering: at most 1, the unbounded gap, and half
    /// the distance between neighbouring limits.
    Rational recommended_epsilon() const;
    std::optional<Case2Strategy> case2_certificate() const;

    nlohmann::json to_json() const;
    static ValueFamily from_json(const BasisPtr& basis, const nlohmann::json& j);

    friend bool operator==(const ValueFamily& x, const ValueFamily& y);

private:
    BasisPtr basis_;
    std::vector<BasisValue> explicit_;
    std::vector<FamilyTail> tails_;
    Quantization quant_;
};

} // namespace sumrange
