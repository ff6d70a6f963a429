#pragma once

#include "sumrange/core/basis_value.hpp"
#include "sumrange/core/partial_sums.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sumrange {

/// Index set given by a membership predicate or a sorted list.
class IndexSet {
public:
    static IndexSet predicate(std::string description, std::function<bool(Index)> contains);
    static IndexSet list(std::string description, std::vector<Index> sorted);

    const std::string& description() const { return description_; }
    bool contains(Index k) const;
    /// |A ∩ {1..n}|.
    Index count_upto(Index n) const;

private:
    std::string description_;
    std::function<bool(Index)> pred_;
    std::optional<std::vector<Index>> list_;
};

enum class DensityVerdict { NegligibleAtDepth, NotNegligibleAtDepth, Inconclusive };

std::string to_string(DensityVerdict v);

struct DensityOptions {
    Rational threshold = Rational(1, 20);
};

struct DensityReport {
    std::string set;
    std::vector<Index> depths;
    std::vector<Rational> ratios;
    DensityVerdict verdict = DensityVerdict::Inconclusive;

    std::vector<std::string> lines() const;
};

/// |A ∩ {1..n}| / n.
Rational natural_density_prefix(const IndexSet& a, Index n);

DensityReport estimate_negligible(const IndexSet& a, const std::vector<Index>& depths, DensityOptions options = {});

/// Verdict from counts at increasing depths. Negligible: final ratio below
/// threshold and non-increasing over the last three depths. Not negligible:
/// final ratio at or above threshold and at least half of the largest of
/// the last three. Everything else is inconclusive.
DensityReport density_report(std::string set, const std::vector<Index>& depths, const std::vector<Index>& counts,
                             DensityOptions options = {});

/// Density of {k <= n : |S_k - s| > eps} at depths n/100, n/10, n.
DensityReport verify_stat_limit(PartialSumStream& sums, const BasisValue& s, const Rational& eps, Index depth,
                                DensityOptions options = {});
DensityReport verify_stat_limit(ApproxPartialSumStream& sums, const BasisValue& s, const Rational& eps, Index depth,
                                DensityOptions options = {});
/// Chooses the exact or the compensated float track from the spec.
DensityReport verify_stat_limit(const SeriesSpec& spec, PermutationSchedule schedule, const BasisValue& s,
                                const Rational& eps, Index depth, DensityOptions options = {});

} // namespace sumrange
