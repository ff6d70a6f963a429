#pragma once

#include "sumrange/core/riemann.hpp"
#include "sumrange/core/schedule.hpp"
#include "sumrange/core/series_spec.hpp"

#include <optional>
#include <string>

namespace sumrange {

/// alpha_k = x_{2k-1} + x_{2k}.
struct AlphaSeries {
    SeriesSpec source;
    ConvergenceClass convergence = ConvergenceClass::Unknown;
    std::optional<BasisValue> sum;
    std::string provenance;

    BasisValue operator()(Index k) const { return source.alpha(k); }
    long double approx(Index k) const { return source.alpha_approx(k); }
};

AlphaSeries alpha_decompose(const SeriesSpec& spec);

/// Signs and magnitudes of alpha_k for the greedy engine.
class AlphaSupply final : public SignedSupply {
public:
    explicit AlphaSupply(SeriesSpec spec);
    int sign(Index k) const override;
    long double approx(Index k) const override { return spec_.alpha_approx(k); }
    std::optional<Index> extent() const override;

private:
    SeriesSpec spec_;
};

/// Greedy on the alpha series, emitted as pair blocks (2k - 1, 2k). Needs
/// declared conditional convergence of alpha.
PermutationSchedule construct_target_2n_conditional(const SeriesSpec& spec, const BasisValue& target,
                                                    GreedyOptions options = {});

} // namespace sumrange
