#include "sumrange/twon/delta.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/core/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace sumrange {

namespace {

std::vector<std::size_t> sorted_order(const Basis& basis, const std::vector<BasisValue>& values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return less(basis, values[a], values[b]); });
    return idx;
}

void require_plain(const ValueFamily& f) {
    if (!f.quantization().empty()) {
        throw Error(ErrorCode::Unsupported, "Delta of a quantised family");
    }
}

} // namespace

DeltaResult delta_of_M(const Basis& basis, const std::vector<BasisValue>& values) {
    if (values.empty()) {
        return {BasisValue(), std::nullopt};
    }
    auto idx = sorted_order(basis, values);
    const BasisValue& a = values[idx[(idx.size() - 1) / 2]];
    std::vector<BasisValue> dev;
    dev.reserve(values.size());
    for (const BasisValue& x : values) {
        dev.push_back(abs(basis, x - a));
    }
    return {exact_sum(dev), a};
}

DeltaResult delta_of_M(const ValueFamily& family) {
    require_plain(family);
    const Basis& basis = *family.basis();
    if (family.tails().empty()) {
        return delta_of_M(basis, family.explicit_values());
    }
    if (family.has_unbounded_tail()) {
        return {std::nullopt, std::nullopt};
    }
    std::vector<Cluster> cl = family.clusters();
    if (cl.size() >= 2) {
        throw Error(ErrorCode::NoLimitPoint, "family has " + std::to_string(cl.size()) + " limit points");
    }
    const Cluster& c = cl.front();
    if (!c.deviation) {
        return {std::nullopt, c.limit};
    }
    std::vector<BasisValue> dev;
    for (const BasisValue& x : family.explicit_values()) {
        dev.push_back(abs(basis, x - c.limit));
    }
    dev.emplace_back(*c.deviation);
    return {exact_sum(dev), c.limit};
}

bool PairSelection::consistent() const {
    std::unordered_set<Index> seen;
    std::vector<BasisValue> mags;
    for (const IndexPair& p : pairs) {
        if (p.n == p.m || !seen.insert(p.n).second || !seen.insert(p.m).second) {
            return false;
        }
        mags.push_back(p.magnitude);
    }
    return exact_sum(mags) == cumulative;
}

PairSelection select_pairs_delta(const Basis& basis, const std::vector<BasisValue>& values) {
    PairSelection out;
    auto idx = sorted_order(basis, values);
    std::vector<BasisValue> mags;
    for (std::size_t i = 0, j = idx.size(); i + 1 < j; ++i) {
        --j;
        BasisValue d = values[idx[j]] - values[idx[i]];
        out.pairs.push_back({idx[i] + 1, idx[j] + 1, d});
        mags.push_back(d);
    }
    out.cumulative = exact_sum(mags);
    return out;
}

PairSelection select_pairs_delta(const ValueFamily& family, const Rational& eps) {
    require_plain(family);
    const Basis& basis = *family.basis();
    DeltaResult full = delta_of_M(family);
    if (full.infinite()) {
        throw Error(ErrorCode::DeltaInfinite, "pair selection needs finite Delta");
    }
    if (family.tails().empty()) {
        return select_pairs_delta(basis, family.explicit_values());
    }
    BasisValue goal = *full.delta - BasisValue(eps);
    for (Index per_tail = 8; per_tail <= (Index{1} << 20); per_tail *= 2) {
        std::vector<BasisValue> vals;
        std::vector<Index> fam;
        Index count = family.explicit_values().size() + per_tail * family.tails().size();
        for (Index k = 1; k <= count; ++k) {
            vals.push_back(family.value(k));
            fam.push_back(k);
        }
        PairSelection local = select_pairs_delta(basis, vals);
        if (less(basis, goal, local.cumulative)) {
            for (IndexPair& p : local.pairs) {
                p.n = fam[p.n - 1];
                p.m = fam[p.m - 1];
            }
            return local;
        }
    }
    throw Error(ErrorCode::Exhausted, "truncations did not reach Delta - eps");
}

namespace {

// Members of a cluster in a fixed order: local index 1 of each tail, then 2...
class ClusterStream {
public:
    ClusterStream(const ValueFamily& f, const Cluster& c) : f_(f), tails_(c.tails) {}
    Index next() {
        std::size_t t = tails_[pos_ % tails_.size()];
        Index local = pos_ / tails_.size() + 1;
        ++pos_;
        return f_.family_index(t, local);
    }

private:
    const ValueFamily& f_;
    std::vector<std::size_t> tails_;
    Index pos_ = 0;
};

} // namespace

PairSelection select_pairs_unbounded(const ValueFamily& family, const BasisValue& k) {
    require_plain(family);
    const Basis& basis = *family.basis();
    std::vector<Cluster> cl = family.clusters();
    PairSelection out;
    std::vector<BasisValue> mags;
    long double goal = k.approx(basis);
    NeumaierSum running;
    auto finish = [&]() {
        out.cumulative = exact_sum(mags);
        return less(basis, k, out.cumulative);
    };
    if (cl.size() >= 2) {
        ClusterStream lo(family, cl[0]);
        ClusterStream hi(family, cl[1]);
        while (true) {
            do {
                Index n = lo.next();
                Index m = hi.next();
                BasisValue d = abs(basis, family.value(m) - family.value(n));
                running.add(d.approx(basis));
                out.pairs.push_back({n, m, d});
                mags.push_back(std::move(d));
            } while (running.value() <= goal);
            if (finish()) {
                return out;
            }
        }
    }
    if (cl.size() == 1 && !cl[0].deviation) {
        auto rt = std::find_if(cl[0].tails.begin(), cl[0].tails.end(),
                               [&](std::size_t t) { return family.tails()[t].kind == TailKind::Reciprocal; });
        if (rt != cl[0].tails.end()) {
            std::size_t t = *rt;
            const BasisValue& a = cl[0].limit;
            // Far members 1..F carry deviation > K + 1/2; the near partners
            // sit beyond F / delta with delta = 1/2, so their deviations add
            // up to less than 1/2.
            long double need = goal + 0.5L;
            NeumaierSum far;
            Index f = 0;
            while (far.value() <= need + 1e-9L) {
                ++f;
                far.add(family.tail_approx(t, f) - a.approx(basis));
                if (f > (Index{1} << 26)) {
                    throw Error(ErrorCode::Exhausted, "far members needed exceed the materialisation cap");
                }
            }
            while (true) {
                Index near0 = 2 * f + 1;
                const FamilyTail& ft = family.tails()[t];
                // 1/(a i + b) < 1/(2F) once a i + b > 2F.
                Rational start = (Rational(static_cast<unsigned long>(2 * f)) - ft.b) / ft.a;
                Integer s = start.get_num() / start.get_den() + 1;
                if (s > 0 && s.fits_ulong_p() && s.get_ui() > near0) {
                    near0 = s.get_ui();
                }
                out.pairs.clear();
                mags.clear();
                for (Index i = 1; i <= f; ++i) {
                    Index n = family.family_index(t, i);
                    Index m = family.family_index(t, near0 + i);
                    BasisValue d = family.tail_value(t, i) - family.tail_value(t, near0 + i);
                    out.pairs.push_back({n, m, d});
                    mags.push_back(std::move(d));
                }
                if (finish()) {
                    return out;
                }
                f += f / 4 + 1;
            }
        }
    }
    throw Error(ErrorCode::FamilyNotSupported, "no unbounded pairing for this family");
}

} // namespace sumrange
