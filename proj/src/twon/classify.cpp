#include "sumrange/twon/classify.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/twon/elements.hpp"
#include "sumrange/twon/epsilon.hpp"
#include "sumrange/twon/lattice.hpp"

namespace sumrange {

Simplified simplify_to_symmetric(const SeriesSpec& spec) {
    const ConvergenceMetadata& m = spec.metadata();
    if (m.alpha != ConvergenceClass::Unconditional || !m.alpha_sum) {
        throw Error(ErrorCode::MetadataMissing, "simplification needs an unconditionally convergent alpha with known sum");
    }
    const BasisPtr& basis = spec.basis();
    BasisValue shift = *m.alpha_sum;
    if (spec.zero_substitution()) {
        throw Error(ErrorCode::Unsupported, "simplifying a zero-substituted spec");
    }
    switch (spec.variant()) {
    case SpecVariant::SymmetricOrdered: return {spec, shift};
    case SpecVariant::ClassicalFamily: {
        ValueFamily v;
        switch (spec.family()) {
        case FamilyTag::AlternatingHarmonic:
            v = ValueFamily(basis, {}, {FamilyTail::reciprocal(BasisValue(), 2, -1)});
            break;
        case FamilyTag::HarmonicPairs: return {spec, shift};
        case FamilyTag::UnconditionalGeometric:
            if (!spec.parameter().is_rational()) {
                // a/2^(2k-1) = 2a (1/4)^k; the scale must be rational.
                throw Error(ErrorCode::Unsupported, "geometric family with an irrational parameter");
            }
            v = ValueFamily(basis, {},
                            {FamilyTail::geometric(BasisValue(), spec.parameter().rational_part() * 2, Rational(1, 4))});
            break;
        default: throw Error(ErrorCode::Unsupported, "family has no symmetric form");
        }
        return {SeriesSpec::explicit_prefix(basis, {}, TailRule::symmetric_pairs(v)), shift};
    }
    case SpecVariant::ExplicitPrefix: {
        if (spec.is_symmetric_form()) {
            return {spec, shift};
        }
        const auto& prefix = spec.prefix();
        const TailRule& tail = spec.tail();
        bool zeros = tail.kind == TailRuleKind::AllZeros;
        if (!zeros && !(tail.kind == TailRuleKind::SymmetricPairs && prefix.size() % 2 == 0)) {
            throw Error(ErrorCode::Unsupported, "prefix and tail do not line up into pairs");
        }
        if (!zeros && !tail.family->quantization().empty()) {
            throw Error(ErrorCode::Unsupported, "simplifying a quantised tail");
        }
        std::vector<BasisValue> odd;
        for (std::size_t i = 0; i < prefix.size(); i += 2) {
            odd.push_back(prefix[i]);
        }
        std::vector<FamilyTail> tails;
        if (!zeros) {
            odd.insert(odd.end(), tail.family->explicit_values().begin(), tail.family->explicit_values().end());
            tails = tail.family->tails();
        }
        ValueFamily v(basis, std::move(odd), std::move(tails));
        return {SeriesSpec::explicit_prefix(basis, {}, TailRule::symmetric_pairs(v)), shift};
    }
    }
    throw Error(ErrorCode::Unsupported, "unknown spec variant");
}

ValueFamily positive_values(const ValueFamily& values) {
    const Basis& basis = *values.basis();
    std::vector<BasisValue> ex;
    for (const BasisValue& v : values.explicit_values()) {
        ex.push_back(abs(basis, v));
    }
    std::vector<FamilyTail> tails = values.tails();
    for (std::size_t t = 0; t < tails.size(); ++t) {
        FamilyTail& tail = tails[t];
        if (!tail.has_limit()) {
            continue;
        }
        int s_limit = sign(basis, tail.limit);
        int s_first = sign(basis, values.tail_value(t, 1));
        if (s_limit >= 0 && s_first >= 0) {
            continue;
        }
        if (tail.kind == TailKind::Geometric && s_limit <= 0 && s_first <= 0) {
            tail.limit = -tail.limit;
            tail.scale = -tail.scale;
            continue;
        }
        throw Error(ErrorCode::Unsupported, "tail changes sign or cannot be mirrored");
    }
    if (!values.quantization().empty()) {
        throw Error(ErrorCode::Unsupported, "quantised values");
    }
    return ValueFamily(values.basis(), std::move(ex), std::move(tails));
}

namespace {

SumRangeClassification from_table(const ElementTable& table, const BasisValue& shift, const std::string& tag,
                                  const std::string& certificate) {
    SumRangeClassification c;
    c.mode = ClassMode::TwoN;
    c.offset = shift;
    c.case_tag = tag;
    c.certificate = certificate;
    std::vector<BasisValue> gens = table.generators();
    if (gens.empty()) {
        c.kind = SumRangeKind::Singleton;
        return c;
    }
    c.kind = SumRangeKind::ShiftedLattice;
    c.generators = std::move(gens);
    c.parity_even = true;
    c.separation = table.separation();
    c.dense = lattice_rank(*table.basis(), c.generators) >= 2;
    return c;
}

} // namespace

SumRangeClassification classify_sr2(const SeriesSpec& spec) {
    const ConvergenceMetadata& m = spec.metadata();
    if (!m.two_n_limit) {
        throw Error(ErrorCode::MetadataMissing, "classification needs the 2n limit of the original order");
    }
    SumRangeClassification out;
    out.mode = ClassMode::TwoN;
    if (m.alpha == ConvergenceClass::Conditional) {
        out.kind = SumRangeKind::AllReals;
        out.case_tag = "alpha-conditional";
        out.certificate = "alpha declared conditionally convergent";
        return out;
    }
    if (m.alpha != ConvergenceClass::Unconditional) {
        throw Error(ErrorCode::Unsupported, "alpha convergence class is not declared");
    }
    Simplified s = simplify_to_symmetric(spec);
    if (s.spec.variant() == SpecVariant::SymmetricOrdered) {
        ElementTable table = ElementTable::from_spec(s.spec);
        return from_table(table, s.shift, "case1-separated", "finite element table, separation " +
                                                                 format_rational(table.separation()));
    }
    ValueFamily values = *s.spec.symmetric_values();
    if (auto strategy = values.case2_certificate()) {
        out.kind = SumRangeKind::AllReals;
        out.case_tag = "case2";
        out.certificate = *strategy == Case2Strategy::HarmonicGaps ? "harmonic gaps pair harvest"
                                                                   : "far/near pair harvest around a limit point";
        return out;
    }
    ValueFamily plus = positive_values(values);
    Rational eps = plus.recommended_epsilon();
    EpsilonCollection coll = build_epsilon_collection(plus, eps);
    if (!coll.delta_total) {
        throw Error(ErrorCode::Unsupported, "Delta_G is infinite without a case-2 certificate");
    }
    // Reduce the mirrored values; pairs may be reordered freely.
    SeriesSpec mirrored = SeriesSpec::explicit_prefix(spec.basis(), {}, TailRule::symmetric_pairs(plus));
    Case1Reduction red = case1_separation_reduction(mirrored, coll);
    return from_table(red.table, s.shift, "case1-reduced",
                      "eps-collection eps=" + format_rational(eps) + " Delta_G=" +
                          coll.delta_total->to_string(*spec.basis()));
}

} // namespace sumrange
