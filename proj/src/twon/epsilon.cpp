#include "sumrange/twon/epsilon.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/core/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace sumrange {

namespace {

constexpr Index kMaxCells = 1'000'000;

void require_non_negative(const ValueFamily& f) {
    const Basis& basis = *f.basis();
    for (const BasisValue& v : f.explicit_values()) {
        if (sign(basis, v) < 0) {
            throw Error(ErrorCode::InvalidArgument, "covering needs non-negative values");
        }
    }
    for (std::size_t t = 0; t < f.tails().size(); ++t) {
        const FamilyTail& tail = f.tails()[t];
        if (!tail.has_limit()) {
            continue;
        }
        bool ok = tail.direction() < 0 ? sign(basis, tail.limit) >= 0 : sign(basis, f.tail_value(t, 1)) >= 0;
        if (!ok) {
            throw Error(ErrorCode::InvalidArgument, "covering needs non-negative values");
        }
    }
}

DeltaResult cell_delta(const ValueFamily& f, const CellContents& c) {
    const Basis& basis = *f.basis();
    std::vector<BasisValue> vals;
    for (Index k : c.finite) {
        vals.push_back(f.value(k));
    }
    if (c.unbounded.empty()) {
        return delta_of_M(basis, vals);
    }
    const BasisValue& limit = f.tails()[c.unbounded.front().first].limit;
    std::vector<BasisValue> dev;
    for (const auto& [t, from] : c.unbounded) {
        if (!(f.tails()[t].limit == limit)) {
            return {std::nullopt, std::nullopt};
        }
        auto d = f.tail_deviation(t, from);
        if (!d) {
            return {std::nullopt, limit};
        }
        dev.emplace_back(*d);
    }
    for (const BasisValue& v : vals) {
        dev.push_back(abs(basis, v - limit));
    }
    return {exact_sum(dev), limit};
}

void absorb(CellContents& into, const CellContents& from) {
    into.finite.insert(into.finite.end(), from.finite.begin(), from.finite.end());
    std::sort(into.finite.begin(), into.finite.end());
    into.unbounded.insert(into.unbounded.end(), from.unbounded.begin(), from.unbounded.end());
}

} // namespace

EpsilonCollection build_epsilon_collection(const ValueFamily& xplus, const Rational& eps) {
    if (eps <= 0) {
        throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    }
    require_non_negative(xplus);
    const Basis& basis = *xplus.basis();
    EpsilonCollection out;
    out.family = xplus;
    out.eps = eps;
    Rational quarter = eps / 4;

    std::optional<std::size_t> unbounded;
    for (std::size_t t = 0; t < xplus.tails().size(); ++t) {
        if (!xplus.tails()[t].has_limit()) {
            unbounded = t;
        }
    }
    if (unbounded) {
        auto gap = xplus.unbounded_gap();
        if (!gap || *gap <= quarter) {
            throw Error(ErrorCode::TailDeviationDiverges,
                        "unbounded tail has no gap certificate above eps/4; cell deviations are not summable");
        }
    }

    // Cells 1..K cover [0, K eps) which contains every bounded value.
    BasisValue top = xplus.bounded_sup();
    long double ratio = top.approx(basis) / to_long_double(eps);
    if (!(ratio < static_cast<long double>(kMaxCells))) {
        throw Error(ErrorCode::Unsupported, "covering needs more than a million cells");
    }
    Index k_max = static_cast<Index>(std::floor(std::max(0.0L, ratio))) + 1;
    while (!less(basis, top, BasisValue(eps * Rational(static_cast<unsigned long>(k_max))))) {
        ++k_max;
    }
    while (k_max > 1 && less(basis, top, BasisValue(eps * Rational(static_cast<unsigned long>(k_max - 1))))) {
        --k_max;
    }

    struct Raw {
        Index k;
        CellContents c;
        BasisValue width;
    };
    std::vector<Raw> raw;
    for (Index k = 1; k <= k_max; ++k) {
        BasisValue lo(eps * Rational(static_cast<unsigned long>(k - 1)));
        BasisValue hi(eps * Rational(static_cast<unsigned long>(k)));
        CellContents c = xplus.cell(lo, hi, false);
        if (c.empty()) {
            continue;
        }
        BasisValue w = *c.sup - *c.inf;
        if (!less(basis, w, BasisValue(quarter))) {
            out.n0 = k;
        }
        raw.push_back({k, std::move(c), std::move(w)});
    }

    std::vector<CollectionCell> segs;
    for (Raw& r : raw) {
        CollectionCell cell;
        cell.cell_number = r.k;
        if (r.k <= out.n0) {
            cell.kind = CellKind::WholeCell;
            cell.lo = BasisValue(eps * Rational(static_cast<unsigned long>(r.k - 1)));
            cell.hi = BasisValue(eps * Rational(static_cast<unsigned long>(r.k)));
            cell.hi_closed = false;
        } else {
            cell.kind = CellKind::Segment;
            cell.lo = *r.c.inf;
            cell.hi = *r.c.sup;
        }
        cell.members = std::move(r.c);
        segs.push_back(std::move(cell));
    }

    if (unbounded) {
        std::size_t t = *unbounded;
        BasisValue edge(eps * Rational(static_cast<unsigned long>(k_max)));
        Index first = 1;
        // First local index at or beyond the edge.
        {
            Index lo = 1;
            Index hi = 1;
            while (less(basis, xplus.tail_value(t, hi), edge)) {
                lo = hi;
                hi *= 2;
            }
            while (lo < hi) {
                Index mid = lo + (hi - lo) / 2;
                if (less(basis, xplus.tail_value(t, mid), edge)) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            first = lo;
        }
        CollectionCell s;
        s.kind = CellKind::Singleton;
        s.lo = xplus.tail_value(t, first);
        s.hi = s.lo;
        s.members.finite.push_back(xplus.family_index(t, first));
        s.members.inf = s.lo;
        s.members.sup = s.lo;
        s.cell_number = k_max + 1;
        segs.push_back(std::move(s));
        out.singleton_tail = std::make_pair(t, first + 1);
    }

    // Merge neighbouring short segments whose gap is at most eps/4.
    for (CollectionCell& c : segs) {
        bool mergeable = c.kind != CellKind::WholeCell;
        if (mergeable && !out.cells.empty() && out.cells.back().kind != CellKind::WholeCell &&
            !less(basis, BasisValue(quarter), c.lo - out.cells.back().hi)) {
            CollectionCell& prev = out.cells.back();
            prev.kind = CellKind::Merged;
            prev.hi = c.hi;
            absorb(prev.members, c.members);
            prev.members.sup = c.members.sup;
            continue;
        }
        out.cells.push_back(std::move(c));
    }

    std::vector<BasisValue> parts;
    bool infinite = false;
    for (CollectionCell& c : out.cells) {
        c.delta = cell_delta(xplus, c.members);
        if (c.delta.infinite()) {
            infinite = true;
        } else {
            parts.push_back(*c.delta.delta);
        }
    }
    if (!infinite) {
        out.delta_total = exact_sum(parts);
    }
    return out;
}

std::optional<std::size_t> EpsilonCollection::locate(const BasisValue& x) const {
    const Basis& basis = *family.basis();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const CollectionCell& c = cells[i];
        int a = sign(basis, x - c.lo);
        int b = sign(basis, x - c.hi);
        if (a >= 0 && (b < 0 || (c.hi_closed && b == 0))) {
            return i;
        }
    }
    if (singleton_tail) {
        auto hits = family.tail_members(singleton_tail->first, x, x, true);
        if (hits && hits->first >= singleton_tail->second) {
            return cells.size();
        }
    }
    return std::nullopt;
}

Case1Reduction case1_separation_reduction(const SeriesSpec& spec, const EpsilonCollection& collection) {
    if (spec.variant() == SpecVariant::SymmetricOrdered) {
        return {spec, ElementTable::from_spec(spec), BasisValue()};
    }
    auto values = spec.symmetric_values();
    if (!values || !(values->without_quantization() == collection.family.without_quantization())) {
        throw Error(ErrorCode::InvalidArgument, "collection was not built from this spec's values");
    }
    if (!collection.delta_total) {
        throw Error(ErrorCode::DeltaInfinite, "Delta_G is infinite; no separated replacement exists");
    }
    const ValueFamily& f = collection.family;
    const BasisPtr& basis = f.basis();
    Quantization q;
    std::vector<TableElement> elements;
    std::vector<BasisValue> points;
    for (const CollectionCell& c : collection.cells) {
        const BasisValue& a = *c.delta.minimizer;
        Index count = 0;
        for (Index k : c.members.finite) {
            if (!(f.value(k) == a)) {
                q.overrides.emplace_back(k, a);
            }
            ++count;
        }
        for (const auto& [t, from] : c.members.unbounded) {
            q.tails.push_back({t, from, a});
        }
        Order order = c.members.unbounded.empty() ? Order::finite(count) : Order::infinite();
        elements.push_back({a, order});
        points.push_back(a);
    }
    Rational sep = separation_radius(*basis, points);
    Rational quarter = collection.eps / 4;
    if (sep == 0 || quarter < sep) {
        sep = quarter;
    }
    ValueFamily y = f.with_quantization(std::move(q));
    SeriesSpec replacement = SeriesSpec::explicit_prefix(basis, {}, TailRule::symmetric_pairs(y));
    return {replacement, ElementTable(basis, std::move(elements), sep),
            *collection.delta_total * Rational(2)};
}

} // namespace sumrange
