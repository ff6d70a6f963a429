#pragma once

#include "sumrange/core/basis_value.hpp"
#include "sumrange/core/order.hpp"
#include "sumrange/core/value_family.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sumrange {

enum class SpecVariant { ExplicitPrefix, SymmetricOrdered, ClassicalFamily };

enum class FamilyTag {
    AlternatingHarmonic,    // (-1)^{k+1}/k
    HarmonicPairs,          // H_n, -H_n, ...
    UnconditionalGeometric, // a/2^k
    PowerOfTenDipoles,      // lambda at 10^j, -lambda at 10^j + 1
    ConditionalAlphaPairs,  // k, -k + (-1)^k/k
};

enum class ConvergenceClass { Unknown, Unconditional, Conditional, Divergent };

enum class TailRuleKind { AllZeros, SymmetricPairs, FamilyTail };

enum class SumTrack { Exact, Approx };

struct TailRule {
    TailRuleKind kind = TailRuleKind::AllZeros;
    std::optional<ValueFamily> family;

    static TailRule zeros() { return {}; }
    static TailRule symmetric_pairs(ValueFamily f) { return {TailRuleKind::SymmetricPairs, std::move(f)}; }
    static TailRule family_tail(ValueFamily f) { return {TailRuleKind::FamilyTail, std::move(f)}; }

    friend bool operator==(const TailRule&, const TailRule&) = default;
};

struct SymmetricEntry {
    BasisValue value;
    Order order;

    friend bool operator==(const SymmetricEntry&, const SymmetricEntry&) = default;
};

/// A designated subsequence of indices along which the terms tend to zero.
struct NullSubsequence {
    enum class Kind { All, Powers, Explicit };
    Kind kind = Kind::All;
    std::uint64_t base = 2;
    std::vector<Index> indices;

    bool contains(Index k) const;
    friend bool operator==(const NullSubsequence&, const NullSubsequence&) = default;
};

struct ConvergenceMetadata {
    std::optional<ConvergenceClass> ordinary;
    std::optional<BasisValue> ordinary_sum;
    std::optional<BasisValue> stat_limit;
    std::optional<BasisValue> two_n_limit;
    std::optional<ConvergenceClass> alpha;
    std::optional<BasisValue> alpha_sum;
    std::optional<NullSubsequence> null_subsequence;
    std::string provenance;

    /// Declared fields win; unset ones fall back to `defaults`.
    ConvergenceMetadata merged_over(const ConvergenceMetadata& defaults) const;
    friend bool operator==(const ConvergenceMetadata&, const ConvergenceMetadata&) = default;
};

std::string to_string(ConvergenceClass c);
std::string to_string(FamilyTag t);

/// Finite description of an infinite real series. Immutable; copies share
/// state.
class SeriesSpec {
public:
    struct SymElement {
        BasisValue value;
        Order order;
    };

    static SeriesSpec explicit_prefix(BasisPtr basis, std::vector<BasisValue> terms, TailRule tail = {},
                                      ConvergenceMetadata metadata = {});
    /// Entries as in the compact (Y, N) listing. An entry and its negation
    /// describe one symmetric element and must carry equal orders.
    static SeriesSpec symmetric(BasisPtr basis, std::vector<SymmetricEntry> entries,
                                ConvergenceMetadata metadata = {});
    static SeriesSpec classical(BasisPtr basis, FamilyTag tag, BasisValue parameter = 1,
                                ConvergenceMetadata metadata = {});

    SpecVariant variant() const;
    const BasisPtr& basis() const;

    const std::vector<BasisValue>& prefix() const;
    const TailRule& tail() const;
    const std::vector<SymmetricEntry>& entries() const;
    /// Symmetric elements after merging +-y listings, in first-listed order.
    const std::vector<SymElement>& symmetric_elements() const;
    /// Element behind terms (2p - 1, 2p) of a SymmetricOrdered spec; nullopt
    /// past a finite table.
    std::optional<std::size_t> symmetric_element_of_pair(Index p) const;
    FamilyTag family() const;
    const BasisValue& parameter() const;

    const ConvergenceMetadata& metadata() const;
    const ConvergenceMetadata& declared_metadata() const;
    SeriesSpec with_metadata(ConvergenceMetadata declared) const;

    /// Terms at the greedy-selected indices of `source` (|x| < 1/i^2 for the
    /// i-th pick) read as zero.
    SeriesSpec with_zero_substitution(NullSubsequence source) const;
    const std::optional<NullSubsequence>& zero_substitution() const;
    SeriesSpec without_zero_substitution() const;
    bool is_zeroed_index(Index k) const;
    /// The i-th (1-based) zeroed index; nullopt when the selection is finite
    /// or leaves the index range.
    std::optional<Index> zeroed_index(std::uint64_t i) const;

    BasisValue term(Index k) const;
    long double approx(Index k) const;
    int sign(Index k) const;
    BasisValue alpha(Index k) const;
    long double alpha_approx(Index k) const;

    /// Index past which every term is zero, when known.
    std::optional<Index> known_extent() const;
    bool has_infinitely_many_zeros() const;
    std::optional<Index> next_zero_after(Index j, Index scan_limit = 10'000'000) const;

    SumTrack preferred_summation() const;

    /// True when term(2k) = -term(2k - 1) for every k by construction.
    bool is_symmetric_form() const;
    /// For symmetric-form specs other than SymmetricOrdered: v_k = term(2k-1).
    std::optional<ValueFamily> symmetric_values() const;

    nlohmann::json to_json() const;
    static SeriesSpec from_json(const nlohmann::json& j);
    static SeriesSpec from_text(const std::string& text);
    static SeriesSpec from_file(const std::string& path);

    std::string describe() const;

    friend bool operator==(const SeriesSpec& a, const SeriesSpec& b);

    struct Impl;

private:
    explicit SeriesSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

} // namespace sumrange
