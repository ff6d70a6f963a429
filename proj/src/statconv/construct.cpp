#include "sumrange/statconv/construct.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/core/numeric.hpp"
#include "sumrange/twon/lattice.hpp"

#include <set>

namespace sumrange {

namespace {

class ZeroBlockSource final : public ScheduleSource {
public:
    ZeroBlockSource(SeriesSpec spec, LprWitness witness)
        : spec_(std::move(spec)), witness_(std::move(witness)), pi_(witness_.schedule()) {
        block_end_ = witness_.m(1);
    }

    Emission next() override {
        while (true) {
            if (zeros_left_ > 0) {
                --zeros_left_;
                return {next_zero(), {"zeros", block_}};
            }
            if (pi_pos_ == block_end_) {
                ++block_;
                zeros_left_ = sat_mul(witness_.m(block_ + 1), witness_.m(block_ + 1));
                block_end_ = witness_.m(block_ + 1);
                continue;
            }
            Emission e = pi_.next();
            ++pi_pos_;
            if (spec_.sign(e.index) == 0) {
                if (e.index <= zero_cursor_) {
                    continue;  // already emitted inside a zero block
                }
                pi_zeros_.insert(e.index);
            }
            return {e.index, {"pi", block_ + 1}};
        }
    }

    Index claimed_prefix() const override { return pi_.claimed_prefix(); }
    std::string name() const override { return "zero_blocks(" + pi_.name() + ")"; }

private:
    Index next_zero() {
        while (true) {
            auto z = spec_.next_zero_after(zero_cursor_);
            if (!z) {
                throw Error(ErrorCode::NotEnoughZeros, "zero supply ran out after " + std::to_string(zero_cursor_));
            }
            zero_cursor_ = *z;
            while (!pi_zeros_.empty() && *pi_zeros_.begin() < zero_cursor_) {
                pi_zeros_.erase(pi_zeros_.begin());
            }
            if (!pi_zeros_.empty() && *pi_zeros_.begin() == zero_cursor_) {
                pi_zeros_.erase(pi_zeros_.begin());
                continue;
            }
            return zero_cursor_;
        }
    }

    SeriesSpec spec_;
    LprWitness witness_;
    PermutationSchedule pi_;
    std::uint64_t block_ = 0;
    Index block_end_ = 0;
    Index pi_pos_ = 0;
    std::uint64_t zeros_left_ = 0;
    Index zero_cursor_ = 0;
    std::set<Index> pi_zeros_;
};

} // namespace

PermutationSchedule construct_stat_rearrangement(const SeriesSpec& spec, const LprWitness& witness) {
    if (!spec.has_infinitely_many_zeros()) {
        throw Error(ErrorCode::NotEnoughZeros, "the zero-block construction needs infinitely many zero terms");
    }
    return PermutationSchedule(std::make_unique<ZeroBlockSource>(spec, witness));
}

SumRangeClassification classify_sr_st(const SeriesSpec& spec) {
    const auto& md = spec.metadata();
    const Basis& basis = *spec.basis();
    if (!md.stat_limit) {
        throw Error(ErrorCode::MetadataMissing, "statistical convergence of the given order is not declared");
    }
    SumRangeClassification c;
    c.mode = ClassMode::Statistical;
    c.offset = *md.stat_limit;
    if (spec.variant() == SpecVariant::ClassicalFamily && spec.family() == FamilyTag::PowerOfTenDipoles) {
        c.kind = SumRangeKind::ShiftedLattice;
        c.generators = {abs(basis, spec.parameter())};
        c.case_tag = "single-generator";
        c.certificate = "dipoles " + spec.parameter().to_string(basis) + " at 10^j, 10^j+1";
        return c;
    }
    if (spec.variant() == SpecVariant::SymmetricOrdered) {
        std::vector<BasisValue> gens;
        for (const auto& e : spec.symmetric_elements()) {
            if (e.order.is_infinite() && !e.value.is_zero()) {
                gens.push_back(e.value);
            }
        }
        std::size_t rank = lattice_rank(basis, gens);
        if (rank == 0) {
            c.kind = SumRangeKind::Singleton;
            c.case_tag = "no-generators";
        } else if (rank == 1) {
            c.kind = SumRangeKind::ShiftedLattice;
            c.generators = gens;
            c.case_tag = "single-generator";
        } else {
            c.kind = SumRangeKind::AllReals;
            c.generators = gens;
            c.dense = true;
            c.case_tag = "dense-lattice";
        }
        c.certificate = "rank=" + std::to_string(rank);
        return c;
    }
    if (md.ordinary == ConvergenceClass::Unconditional) {
        c.kind = SumRangeKind::Singleton;
        c.case_tag = "unconditional";
        c.certificate = "declared unconditional convergence";
        return c;
    }
    if (md.ordinary == ConvergenceClass::Conditional) {
        c.kind = SumRangeKind::AllReals;
        c.case_tag = "conditional";
        c.certificate = "declared conditional convergence";
        c.offset = BasisValue();
        return c;
    }
    throw Error(ErrorCode::Unsupported, "statistical sum range not decidable for " + spec.describe());
}

SumRangeClassification classify_ordinary(const SeriesSpec& spec) {
    const auto& md = spec.metadata();
    SumRangeClassification c;
    c.mode = ClassMode::Ordinary;
    if (md.ordinary == ConvergenceClass::Unconditional) {
        if (!md.ordinary_sum) {
            throw Error(ErrorCode::MetadataMissing, "unconditional spec without a declared sum");
        }
        c.kind = SumRangeKind::Singleton;
        c.offset = *md.ordinary_sum;
        c.case_tag = "unconditional";
        c.certificate = "declared unconditional convergence";
        return c;
    }
    if (md.ordinary == ConvergenceClass::Conditional) {
        c.kind = SumRangeKind::AllReals;
        c.case_tag = "conditional";
        c.certificate = "declared conditional convergence";
        return c;
    }
    throw Error(ErrorCode::Unsupported, "ordinary sum range needs declared convergence");
}

} // namespace sumrange
