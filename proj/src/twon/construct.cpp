#include "sumrange/twon/construct.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/twon/alpha.hpp"
#include "sumrange/twon/case2.hpp"
#include "sumrange/twon/classify.hpp"
#include "sumrange/twon/elements.hpp"
#include "sumrange/twon/lattice.hpp"

namespace sumrange {

PermutationSchedule construct_target_2n(const SeriesSpec& spec, const BasisValue& target,
                                        const SumRangeClassification& cls, GreedyOptions options) {
    const Basis& basis = *spec.basis();
    const auto& md = spec.metadata();
    switch (cls.kind) {
    case SumRangeKind::AllReals:
        if (md.alpha == ConvergenceClass::Conditional) {
            return construct_target_2n_conditional(spec, target, options);
        }
        if (md.ordinary == ConvergenceClass::Conditional) {
            return riemann_greedy(spec, target, options);
        }
        if (spec.is_symmetric_form()) {
            return construct_case2_target(spec, case2_pair_harvest(spec), target, options);
        }
        throw Error(ErrorCode::Unsupported, "no 2n constructor for " + spec.describe());
    case SumRangeKind::Singleton:
        if (!(target == cls.offset)) {
            throw Error(ErrorCode::TargetNotInRange, "target not in SR2: the range is {" + cls.offset.to_string(basis) + "}");
        }
        return identity_schedule();
    case SumRangeKind::ShiftedLattice: {
        BasisValue z = target - cls.offset;
        MembershipResult r = lattice_membership(basis, cls.generators, z, cls.parity_even);
        if (!r.member) {
            throw Error(ErrorCode::TargetNotInRange, "target not in SR2: " + r.detail);
        }
        if (spec.variant() != SpecVariant::SymmetricOrdered) {
            throw Error(ErrorCode::Unsupported, "lattice construction needs a SymmetricOrdered spec");
        }
        ElementTable table = ElementTable::from_spec(spec);
        MembershipResult cert = sr2_separated_membership(table, z);
        return construct_separated_target(table, spec, z, cert.coefficients);
    }
    }
    throw Error(ErrorCode::Unsupported, "unknown classification");
}

PermutationSchedule construct_target_2n(const SeriesSpec& spec, const BasisValue& target, GreedyOptions options) {
    return construct_target_2n(spec, target, classify_sr2(spec), options);
}

} // namespace sumrange
