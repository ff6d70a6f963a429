#include "sumrange/core/riemann.hpp"

#include "sumrange/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace sumrange {

GreedyEngine::GreedyEngine(std::shared_ptr<const SignedSupply> supply, long double target, GreedyOptions options)
    : supply_(std::move(supply)), target_(target), options_(options) {
    if (!supply_) {
        throw Error(ErrorCode::InvalidArgument, "greedy engine needs a supply");
    }
}

Index GreedyEngine::find(int want) {
    Index& cursor = want > 0 ? pos_cursor_ : neg_cursor_;
    auto extent = supply_->extent();
    Index start = cursor;
    for (Index k = cursor + 1;; ++k) {
        if (extent && k > *extent) {
            throw Error(ErrorCode::Exhausted, std::string("no more ") + (want > 0 ? "positive" : "negative") +
                                                  " terms past index " + std::to_string(*extent));
        }
        if (k - start > options_.scan_limit) {
            throw Error(ErrorCode::Exhausted, std::string("scan limit reached looking for a ") +
                                                  (want > 0 ? "positive" : "negative") + " term after index " +
                                                  std::to_string(start));
        }
        int s = supply_->sign(k);
        if (k > frontier_) {
            frontier_ = k;
            if (s == 0) {
                zeros_.push_back(k);
            }
        }
        if (s == want) {
            cursor = k;
            return k;
        }
    }
}

GreedyStep GreedyEngine::next() {
    if (!zeros_.empty()) {
        Index z = zeros_.front();
        zeros_.pop_front();
        return {z, GreedyKind::Zero, crossings_};
    }
    int want = sum_.value() <= target_ ? 1 : -1;
    if (last_sign_ != 0 && want != last_sign_) {
        ++crossings_;
    }
    last_sign_ = want;
    Index k = find(want);
    long double v = supply_->approx(k);
    sum_.add(v);
    last_magnitude_ = std::fabs(v);
    return {k, want > 0 ? GreedyKind::Positive : GreedyKind::Negative, crossings_};
}

Index GreedyEngine::claimed() const {
    Index c = std::min(pos_cursor_, neg_cursor_);
    if (!zeros_.empty()) {
        c = std::min(c, zeros_.front() - 1);
    }
    return c;
}

namespace {

class RiemannSource final : public ScheduleSource {
public:
    RiemannSource(const SeriesSpec& spec, long double target, GreedyOptions options)
        : engine_(std::make_shared<TermSupply>(spec), target, options) {}

    Emission next() override {
        GreedyStep s = engine_.next();
        const char* kind = s.kind == GreedyKind::Positive ? "greedy+" : (s.kind == GreedyKind::Negative ? "greedy-" : "zero");
        return {s.item, {kind, s.crossing}};
    }
    Index claimed_prefix() const override { return engine_.claimed(); }
    std::string name() const override { return "riemann_greedy"; }

private:
    GreedyEngine engine_;
};

} // namespace

PermutationSchedule riemann_greedy(const SeriesSpec& spec, const BasisValue& target, GreedyOptions options) {
    if (spec.metadata().ordinary != ConvergenceClass::Conditional) {
        throw Error(ErrorCode::MetadataMissing, "riemann_greedy needs declared conditional convergence");
    }
    return PermutationSchedule(std::make_unique<RiemannSource>(spec, target.approx(*spec.basis()), options));
}

} // namespace sumrange
