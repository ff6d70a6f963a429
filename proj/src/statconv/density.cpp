#include "sumrange/statconv/density.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/core/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace sumrange {

IndexSet IndexSet::predicate(std::string description, std::function<bool(Index)> contains) {
    IndexSet s;
    s.description_ = std::move(description);
    s.pred_ = std::move(contains);
    return s;
}

IndexSet IndexSet::list(std::string description, std::vector<Index> sorted) {
    if (!std::is_sorted(sorted.begin(), sorted.end())) {
        throw Error(ErrorCode::InvalidArgument, "index list must be sorted");
    }
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    IndexSet s;
    s.description_ = std::move(description);
    s.list_ = std::move(sorted);
    return s;
}

bool IndexSet::contains(Index k) const {
    if (list_) {
        return std::binary_search(list_->begin(), list_->end(), k);
    }
    return pred_ && pred_(k);
}

Index IndexSet::count_upto(Index n) const {
    if (list_) {
        auto it = std::upper_bound(list_->begin(), list_->end(), n);
        auto first = std::lower_bound(list_->begin(), list_->end(), Index{1});
        return static_cast<Index>(it - first);
    }
    Index c = 0;
    for (Index k = 1; k <= n; ++k) {
        if (pred_(k)) {
            ++c;
        }
    }
    return c;
}

std::string to_string(DensityVerdict v) {
    switch (v) {
    case DensityVerdict::NegligibleAtDepth: return "NegligibleAtDepth";
    case DensityVerdict::NotNegligibleAtDepth: return "NotNegligibleAtDepth";
    case DensityVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Rational natural_density_prefix(const IndexSet& a, Index n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "density depth must be positive");
    }
    Rational r(Integer(static_cast<unsigned long>(a.count_upto(n))), Integer(static_cast<unsigned long>(n)));
    r.canonicalize();
    return r;
}

DensityReport density_report(std::string set, const std::vector<Index>& depths, const std::vector<Index>& counts,
                             DensityOptions options) {
    if (depths.empty() || depths.size() != counts.size()) {
        throw Error(ErrorCode::InvalidArgument, "one count per depth expected");
    }
    DensityReport r;
    r.set = std::move(set);
    r.depths = depths;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (depths[i] == 0 || (i > 0 && depths[i] <= depths[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "depths must be positive and strictly increasing");
        }
        Rational q(Integer(static_cast<unsigned long>(counts[i])), Integer(static_cast<unsigned long>(depths[i])));
        q.canonicalize();
        r.ratios.push_back(q);
    }
    std::size_t from = r.ratios.size() > 3 ? r.ratios.size() - 3 : 0;
    const Rational& last = r.ratios.back();
    bool non_increasing = true;
    Rational peak = 0;
    for (std::size_t i = from; i < r.ratios.size(); ++i) {
        if (i > from && r.ratios[i] > r.ratios[i - 1]) {
            non_increasing = false;
        }
        peak = std::max(peak, r.ratios[i]);
    }
    if (last < options.threshold && non_increasing) {
        r.verdict = DensityVerdict::NegligibleAtDepth;
    } else if (last >= options.threshold && last * 2 >= peak) {
        r.verdict = DensityVerdict::NotNegligibleAtDepth;
    } else {
        r.verdict = DensityVerdict::Inconclusive;
    }
    return r;
}

DensityReport estimate_negligible(const IndexSet& a, const std::vector<Index>& depths, DensityOptions options) {
    std::vector<Index> counts;
    for (Index n : depths) {
        counts.push_back(a.count_upto(n));
    }
    return density_report(a.description(), depths, counts, options);
}

std::vector<std::string> DensityReport::lines() const {
    std::vector<std::string> out;
    out.push_back("set=" + set);
    for (std::size_t i = 0; i < depths.size(); ++i) {
        out.push_back("depth=" + std::to_string(depths[i]) + " ratio=" + format_rational(ratios[i]));
    }
    out.push_back("verdict=" + to_string(verdict));
    return out;
}

namespace {

std::vector<Index> stat_depths(Index depth) {
    std::vector<Index> d;
    for (Index n : {depth / 100, depth / 10, depth}) {
        if (n > 0 && (d.empty() || n > d.back())) {
            d.push_back(n);
        }
    }
    if (d.empty()) {
        throw Error(ErrorCode::InvalidArgument, "depth must be positive");
    }
    return d;
}

std::string deviation_set(const BasisValue& s, const Rational& eps, const Basis& basis) {
    return "{k : |S_k - " + s.to_string(basis) + "| > " + format_rational(eps) + "}";
}

} // namespace

DensityReport verify_stat_limit(PartialSumStream& sums, const BasisValue& s, const Rational& eps, Index depth,
                                DensityOptions options) {
    if (eps <= 0) {
        throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    }
    const Basis& basis = *sums.spec().basis();
    std::vector<Index> depths = stat_depths(depth);
    std::vector<Index> counts;
    Index bad = 0;
    BasisValue e(eps);
    for (Index target : depths) {
        while (sums.n() < target) {
            sums.next();
            if (less(basis, e, abs(basis, sums.sum() - s))) {
                ++bad;
            }
        }
        counts.push_back(bad);
    }
    return density_report(deviation_set(s, eps, basis), depths, counts, options);
}

DensityReport verify_stat_limit(ApproxPartialSumStream& sums, const BasisValue& s, const Rational& eps, Index depth,
                                DensityOptions options) {
    if (eps <= 0) {
        throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    }
    const Basis& basis = *sums.spec().basis();
    const long double centre = s.approx(basis);
    const long double e = to_long_double(eps);
    constexpr long double margin = 1e-12L;
    std::vector<Index> depths = stat_depths(depth);
    std::vector<Index> counts;
    Index bad = 0;
    for (Index target : depths) {
        while (sums.n() < target) {
            sums.next();
            long double d = std::fabs(sums.sum() - centre);
            if (std::fabs(d - e) < margin) {
                throw Error(ErrorCode::PrecisionInsufficient,
                            "partial sum " + std::to_string(sums.n()) + " sits on the eps boundary");
            }
            if (d > e) {
                ++bad;
            }
        }
        counts.push_back(bad);
    }
    return density_report(deviation_set(s, eps, basis), depths, counts, options);
}

DensityReport verify_stat_limit(const SeriesSpec& spec, PermutationSchedule schedule, const BasisValue& s,
                                const Rational& eps, Index depth, DensityOptions options) {
    if (spec.preferred_summation() == SumTrack::Exact) {
        PartialSumStream sums(spec, std::move(schedule));
        return verify_stat_limit(sums, s, eps, depth, options);
    }
    ApproxPartialSumStream sums(spec, std::move(schedule));
    return verify_stat_limit(sums, s, eps, depth, options);
}

} // namespace sumrange
