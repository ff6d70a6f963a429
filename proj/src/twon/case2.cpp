#include "sumrange/twon/case2.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/core/numeric.hpp"

#include <algorithm>
#include <mutex>

namespace sumrange {

struct PairHarvest::State {
    ValueFamily family;
    Case2Strategy strategy;
    std::size_t tail = 0;  // far/near tail

    mutable std::mutex mu;
    mutable std::vector<HarvestPair> pairs;
    // Far/near block cursor.
    mutable Index block_p = 0;
    mutable Index block_i = 0;
    mutable long double stage_sum = 0.0L;
    mutable std::uint64_t stage = 1;

    void extend() const {
        HarvestPair h;
        if (strategy == Case2Strategy::HarmonicGaps) {
            Index k = pairs.size() + 1;
            h.n = 2 * k;
            h.m = 2 * k - 1;
            h.difference = BasisValue(Rational(1, 2) / Rational(static_cast<unsigned long>(k)));
            h.approx = 1.0L / (2.0L * static_cast<long double>(k));
        } else {
            if (block_i > block_p) {
                if (block_p > (kIndexMax - 2) / 3) {
                    throw Error(ErrorCode::Overflow, "far/near blocks ran past the index range");
                }
                block_p = 3 * block_p + 2;
                block_i = 0;
            }
            Index far = block_p + 1 + block_i;
            Index near = 2 * block_p + 2 + block_i;
            ++block_i;
            const FamilyTail& t = family.tails()[tail];
            Rational df = t.a * Rational(static_cast<unsigned long>(far)) + t.b;
            Rational dn = t.a * Rational(static_cast<unsigned long>(near)) + t.b;
            Rational d = 1 / df - 1 / dn;
            d.canonicalize();
            h.n = family.family_index(tail, far);
            h.m = family.family_index(tail, near);
            h.difference = BasisValue(d);
            h.approx = to_long_double(d);
        }
        if (stage_sum > 1.0L) {
            ++stage;
            stage_sum = 0.0L;
        }
        stage_sum += h.approx;
        h.stage = stage;
        pairs.push_back(std::move(h));
    }
};

PairHarvest::PairHarvest(ValueFamily family, Case2Strategy strategy) : state_(std::make_shared<State>()) {
    state_->family = std::move(family);
    state_->strategy = strategy;
    if (strategy == Case2Strategy::HarmonicGaps) {
        const ValueFamily& f = state_->family;
        if (!(f.explicit_values().empty() && f.tails().size() == 1 &&
              f.tails()[0].kind == TailKind::HarmonicNumbers)) {
            throw Error(ErrorCode::FamilyNotSupported, "harmonic gaps need a single harmonic tail");
        }
    } else {
        const ValueFamily& f = state_->family;
        bool found = false;
        for (const Cluster& c : f.clusters()) {
            if (c.deviation) {
                continue;
            }
            for (std::size_t t : c.tails) {
                if (f.tails()[t].kind == TailKind::Reciprocal) {
                    state_->tail = t;
                    found = true;
                    break;
                }
            }
            if (found) {
                break;
            }
        }
        if (!found) {
            throw Error(ErrorCode::FamilyNotSupported, "far/near harvest needs a reciprocal tail");
        }
    }
}

const HarvestPair& PairHarvest::at(Index k) const {
    if (k == 0) {
        throw Error(ErrorCode::InvalidArgument, "harvest index is 1-based");
    }
    std::lock_guard<std::mutex> lock(state_->mu);
    while (state_->pairs.size() < k) {
        state_->extend();
    }
    return state_->pairs[k - 1];
}

bool PairHarvest::harvested(Index f) const {
    if (state_->strategy == Case2Strategy::HarmonicGaps) {
        return true;
    }
    auto pos = state_->family.locate(f);
    return pos.tail && *pos.tail == state_->tail;
}

bool PairHarvest::has_missing() const {
    if (state_->strategy == Case2Strategy::HarmonicGaps) {
        return false;
    }
    return !state_->family.explicit_values().empty() || state_->family.tails().size() > 1;
}

Case2Strategy PairHarvest::strategy() const { return state_->strategy; }
const ValueFamily& PairHarvest::family() const { return state_->family; }

PairHarvest case2_pair_harvest(const SeriesSpec& spec) {
    auto values = spec.symmetric_values();
    if (!values) {
        throw Error(ErrorCode::FamilyNotSupported, "pair harvest needs a described symmetric-form spec");
    }
    auto strategy = values->case2_certificate();
    if (!strategy) {
        throw Error(ErrorCode::FamilyNotSupported, "values carry no case-2 certificate");
    }
    return PairHarvest(*values, *strategy);
}

namespace {

// Item 2k - 1 is block A_k (+d_k), item 2k is block B_k (-d_k).
class BlockSupply final : public SignedSupply {
public:
    explicit BlockSupply(PairHarvest h) : h_(std::move(h)) {}
    int sign(Index i) const override { return i % 2 == 1 ? 1 : -1; }
    long double approx(Index i) const override {
        long double d = h_.at((i + 1) / 2).approx;
        return i % 2 == 1 ? d : -d;
    }

private:
    PairHarvest h_;
};

class Case2Source final : public ScheduleSource {
public:
    Case2Source(const PairHarvest& h, long double target, GreedyOptions options)
        : h_(h), engine_(std::make_shared<BlockSupply>(h), target, options), missing_left_(h.has_missing()) {
        size_ = h_.family().size();
    }

    Emission next() override {
        if (pending_) {
            Emission e = *pending_;
            pending_.reset();
            cover_.mark(e.index);
            return e;
        }
        Index f = 0;
        if (missing_left_ && blocks_ % 2 == 0 && blocks_ > 0 && !injected_) {
            f = next_missing();
        }
        Emission first;
        Emission second;
        if (f) {
            injected_ = true;
            first = {2 * f - 1, {"missing", f}};
            second = {2 * f, {"missing", f}};
        } else {
            injected_ = false;
            GreedyStep s = engine_.next();
            ++blocks_;
            Index k = (s.item + 1) / 2;
            const HarvestPair& p = h_.at(k);
            if (s.item % 2 == 1) {
                first = {2 * p.n - 1, {"A", k}};
                second = {2 * p.m, {"A", k}};
            } else {
                first = {2 * p.m - 1, {"B", k}};
                second = {2 * p.n, {"B", k}};
            }
        }
        pending_ = second;
        cover_.mark(first.index);
        return first;
    }
    Index claimed_prefix() const override { return cover_.frontier(); }
    std::string name() const override { return "case2_greedy"; }

private:
    Index next_missing() {
        while (true) {
            ++missing_cursor_;
            if (size_ && missing_cursor_ > *size_) {
                missing_left_ = false;
                return 0;
            }
            if (!h_.harvested(missing_cursor_)) {
                return missing_cursor_;
            }
        }
    }

    PairHarvest h_;
    GreedyEngine engine_;
    bool missing_left_;
    std::optional<Index> size_;
    Index missing_cursor_ = 0;
    std::uint64_t blocks_ = 0;
    bool injected_ = false;
    std::optional<Emission> pending_;
    CoverageCursor cover_;
};

} // namespace

PermutationSchedule construct_case2_target(const SeriesSpec& spec, const PairHarvest& harvest,
                                           const BasisValue& target, GreedyOptions options) {
    auto values = spec.symmetric_values();
    if (!values || !(*values == harvest.family())) {
        throw Error(ErrorCode::InvalidArgument, "harvest does not belong to this spec");
    }
    return PermutationSchedule(
        std::make_unique<Case2Source>(harvest, target.approx(*spec.basis()), options));
}

} // namespace sumrange
