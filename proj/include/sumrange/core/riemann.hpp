#pragma once

#include "sumrange/core/numeric.hpp"
#include "sumrange/core/schedule.hpp"
#include "sumrange/core/series_spec.hpp"

#include <deque>
#include <memory>
#include <optional>

namespace sumrange {

/// Items with a sign and a float magnitude, consumed by the greedy engine.
class SignedSupply {
public:
    virtual ~SignedSupply() = default;
    virtual int sign(Index k) const = 0;
    virtual long double approx(Index k) const = 0;
    /// Items past this index are all zero, when known.
    virtual std::optional<Index> extent() const { return std::nullopt; }
};

/// The terms of a series.
class TermSupply final : public SignedSupply {
public:
    explicit TermSupply(SeriesSpec spec) : spec_(std::move(spec)) {}
    int sign(Index k) const override { return spec_.sign(k); }
    long double approx(Index k) const override { return spec_.approx(k); }
    std::optional<Index> extent() const override { return spec_.known_extent(); }

private:
    SeriesSpec spec_;
};

struct GreedyOptions {
    /// Consecutive indices a single search may inspect before giving up.
    Index scan_limit = 50'000'000;
};

enum class GreedyKind { Positive, Negative, Zero };

struct GreedyStep {
    Index item = 0;
    GreedyKind kind = GreedyKind::Positive;
    std::uint64_t crossing = 0;
};

/// Classic rearrangement greedy: positive items in source order while the
/// running sum is <= target, negative items while it is above. Zero items
/// are emitted once a scan passes them. Decisions use compensated long
/// double sums.
class GreedyEngine {
public:
    GreedyEngine(std::shared_ptr<const SignedSupply> supply, long double target, GreedyOptions options = {});

    GreedyStep next();
    /// Every item <= claimed() has been emitted.
    Index claimed() const;
    long double sum() const { return sum_.value(); }
    long double target() const { return target_; }
    std::uint64_t crossings() const { return crossings_; }
    long double last_magnitude() const { return last_magnitude_; }

private:
    Index find(int want);

    std::shared_ptr<const SignedSupply> supply_;
    long double target_;
    GreedyOptions options_;
    NeumaierSum sum_;
    Index pos_cursor_ = 0;
    Index neg_cursor_ = 0;
    Index frontier_ = 0;
    std::deque<Index> zeros_;
    int last_sign_ = 0;
    std::uint64_t crossings_ = 0;
    long double last_magnitude_ = 0.0L;
};

/// Rearranges a conditionally convergent series so its partial sums tend to
/// `target`. Needs the spec to declare conditional convergence.
PermutationSchedule riemann_greedy(const SeriesSpec& spec, const BasisValue& target, GreedyOptions options = {});

} // namespace sumrange
