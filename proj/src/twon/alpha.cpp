#include "sumrange/twon/alpha.hpp"

#include "sumrange/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace sumrange {

AlphaSeries alpha_decompose(const SeriesSpec& spec) {
    const ConvergenceMetadata& m = spec.metadata();
    AlphaSeries a{spec, m.alpha.value_or(ConvergenceClass::Unknown), m.alpha_sum, m.provenance};
    if (a.convergence == ConvergenceClass::Divergent) {
        a.convergence = ConvergenceClass::Unknown;
    }
    return a;
}

AlphaSupply::AlphaSupply(SeriesSpec spec) : spec_(std::move(spec)) {}

int AlphaSupply::sign(Index k) const {
    long double a = spec_.alpha_approx(k);
    long double scale = std::fabs(spec_.approx(2 * k - 1)) + std::fabs(spec_.approx(2 * k));
    long double margin = 1e-15L * (1.0L + scale);
    if (a > margin) {
        return 1;
    }
    if (a < -margin) {
        return -1;
    }
    return sumrange::sign(*spec_.basis(), spec_.alpha(k));
}

std::optional<Index> AlphaSupply::extent() const {
    auto e = spec_.known_extent();
    if (!e) {
        return std::nullopt;
    }
    return (*e + 1) / 2;
}

namespace {

class AlphaPairSource final : public ScheduleSource {
public:
    AlphaPairSource(const SeriesSpec& spec, long double target, GreedyOptions options)
        : engine_(std::make_shared<AlphaSupply>(spec), target, options) {}

    Emission next() override {
        if (second_) {
            Index k = second_;
            second_ = 0;
            return {2 * k, {"alpha_pair", block_}};
        }
        GreedyStep s = engine_.next();
        second_ = s.item;
        block_ = s.item;
        return {2 * s.item - 1, {"alpha_pair", block_}};
    }
    Index claimed_prefix() const override {
        Index c = 2 * engine_.claimed();
        return second_ ? std::min(c, 2 * second_ - 1) : c;
    }
    std::string name() const override { return "alpha_greedy"; }

private:
    GreedyEngine engine_;
    Index second_ = 0;
    std::uint64_t block_ = 0;
};

} // namespace

PermutationSchedule construct_target_2n_conditional(const SeriesSpec& spec, const BasisValue& target,
                                                    GreedyOptions options) {
    if (spec.metadata().alpha != ConvergenceClass::Conditional) {
        throw Error(ErrorCode::MetadataMissing, "alpha series must be declared conditionally convergent");
    }
    return PermutationSchedule(std::make_unique<AlphaPairSource>(spec, target.approx(*spec.basis()), options));
}

} // namespace sumrange
