#include "sumrange/core/value_family.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/core/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace sumrange {

namespace {

constexpr std::size_t kMaxCellMaterialise = std::size_t{1} << 22;

Rational rational_pow(const Rational& r, Index n) {
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(den.get_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(n));
    Rational out(num, den);
    out.canonicalize();
    return out;
}

template <class Pred>
std::optional<Index> first_true(Pred pred, bool eventually) {
    if (pred(Index{1})) {
        return Index{1};
    }
    if (!eventually) {
        return std::nullopt;
    }
    Index lo = 1;
    Index hi = 2;
    while (!pred(hi)) {
        lo = hi;
        if (hi > (Index{1} << 61)) {
            throw Error(ErrorCode::Overflow, "monotone search ran past the index range");
        }
        hi *= 2;
    }
    while (hi - lo > 1) {
        Index mid = lo + (hi - lo) / 2;
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::string tail_kind_name(TailKind k) {
    switch (k) {
    case TailKind::HarmonicNumbers: return "harmonic_numbers";
    case TailKind::Reciprocal: return "reciprocal";
    case TailKind::Geometric: return "geometric";
    case TailKind::IntegerPlusGeometric: return "integer_plus_geometric";
    }
    return "?";
}

} // namespace

FamilyTail FamilyTail::harmonic() {
    FamilyTail t;
    t.kind = TailKind::HarmonicNumbers;
    return t;
}

FamilyTail FamilyTail::reciprocal(BasisValue limit, Rational a, Rational b) {
    if (a <= 0 || a + b <= 0) {
        throw Error(ErrorCode::InvalidArgument, "reciprocal tail needs a > 0 and a + b > 0");
    }
    FamilyTail t;
    t.kind = TailKind::Reciprocal;
    t.limit = std::move(limit);
    t.a = std::move(a);
    t.b = std::move(b);
    return t;
}

FamilyTail FamilyTail::geometric(BasisValue limit, Rational scale, Rational ratio) {
    if (scale == 0 || ratio <= 0 || ratio >= 1) {
        throw Error(ErrorCode::InvalidArgument, "geometric tail needs scale != 0 and 0 < ratio < 1");
    }
    FamilyTail t;
    t.kind = TailKind::Geometric;
    t.limit = std::move(limit);
    t.scale = std::move(scale);
    t.ratio = std::move(ratio);
    return t;
}

FamilyTail FamilyTail::integer_plus_geometric(Rational ratio) {
    if (ratio <= 0 || ratio >= 1) {
        throw Error(ErrorCode::InvalidArgument, "integer_plus_geometric tail needs 0 < ratio < 1");
    }
    FamilyTail t;
    t.kind = TailKind::IntegerPlusGeometric;
    t.ratio = std::move(ratio);
    return t;
}

int FamilyTail::direction() const {
    switch (kind) {
    case TailKind::HarmonicNumbers:
    case TailKind::IntegerPlusGeometric: return 1;
    case TailKind::Reciprocal: return -1;
    case TailKind::Geometric: return scale > 0 ? -1 : 1;
    }
    return 1;
}

bool operator==(const FamilyTail& x, const FamilyTail& y) {
    if (x.kind != y.kind) {
        return false;
    }
    switch (x.kind) {
    case TailKind::HarmonicNumbers: return true;
    case TailKind::Reciprocal: return x.limit == y.limit && x.a == y.a && x.b == y.b;
    case TailKind::Geometric: return x.limit == y.limit && x.scale == y.scale && x.ratio == y.ratio;
    case TailKind::IntegerPlusGeometric: return x.ratio == y.ratio;
    }
    return false;
}

ValueFamily::ValueFamily(BasisPtr basis, std::vector<BasisValue> explicit_values, std::vector<FamilyTail> tails)
    : basis_(std::move(basis)), explicit_(std::move(explicit_values)), tails_(std::move(tails)) {
    if (!basis_) {
        throw Error(ErrorCode::InvalidArgument, "value family needs a basis");
    }
}

ValueFamily ValueFamily::with_quantization(Quantization q) const {
    ValueFamily out = *this;
    std::sort(q.overrides.begin(), q.overrides.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.quant_ = std::move(q);
    return out;
}

ValueFamily ValueFamily::without_quantization() const {
    ValueFamily out = *this;
    out.quant_ = {};
    return out;
}

std::optional<Index> ValueFamily::size() const {
    if (tails_.empty()) {
        return static_cast<Index>(explicit_.size());
    }
    return std::nullopt;
}

ValueFamily::Position ValueFamily::locate(Index k) const {
    if (k == 0) {
        throw Error(ErrorCode::InvalidArgument, "family index is 1-based");
    }
    if (k <= explicit_.size()) {
        return {std::nullopt, k};
    }
    if (tails_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "family index past the end of a finite family");
    }
    Index j = k - explicit_.size() - 1;
    return {static_cast<std::size_t>(j % tails_.size()), j / tails_.size() + 1};
}

Index ValueFamily::family_index(std::size_t tail, Index local) const {
    return explicit_.size() + (local - 1) * tails_.size() + tail + 1;
}

BasisValue ValueFamily::tail_value(std::size_t tail, Index i) const {
    const FamilyTail& t = tails_.at(tail);
    switch (t.kind) {
    case TailKind::HarmonicNumbers: return BasisValue(harmonic_exact(i));
    case TailKind::Reciprocal: {
        Rational d = t.a * Rational(static_cast<unsigned long>(i)) + t.b;
        Rational inv = 1 / d;
        return t.limit + BasisValue(inv);
    }
    case TailKind::Geometric: return t.limit + BasisValue(Rational(t.scale * rational_pow(t.ratio, i)));
    case TailKind::IntegerPlusGeometric:
        return BasisValue(Rational(Rational(static_cast<unsigned long>(i)) + rational_pow(t.ratio, i)));
    }
    return {};
}

long double ValueFamily::tail_approx(std::size_t tail, Index i) const {
    const FamilyTail& t = tails_.at(tail);
    long double x = static_cast<long double>(i);
    switch (t.kind) {
    case TailKind::HarmonicNumbers: return harmonic_approx(i);
    case TailKind::Reciprocal:
        return t.limit.approx(*basis_) + 1.0L / (to_long_double(t.a) * x + to_long_double(t.b));
    case TailKind::Geometric:
        return t.limit.approx(*basis_) + to_long_double(t.scale) * std::pow(to_long_double(t.ratio), x);
    case TailKind::IntegerPlusGeometric: return x + std::pow(to_long_double(t.ratio), x);
    }
    return 0.0L;
}

BasisValue ValueFamily::raw_value(Index k) const {
    Position p = locate(k);
    if (!p.tail) {
        return explicit_[p.local - 1];
    }
    return tail_value(*p.tail, p.local);
}

long double ValueFamily::raw_approx(Index k) const {
    Position p = locate(k);
    if (!p.tail) {
        return explicit_[p.local - 1].approx(*basis_);
    }
    return tail_approx(*p.tail, p.local);
}

BasisValue ValueFamily::value(Index k) const {
    if (!quant_.empty()) {
        Position p = locate(k);
        if (p.tail) {
            for (const TailOverride& o : quant_.tails) {
                if (o.tail == *p.tail && p.local >= o.from) {
                    return o.value;
                }
            }
        }
        auto it = std::lower_bound(quant_.overrides.begin(), quant_.overrides.end(), k,
                                   [](const auto& e, Index key) { return e.first < key; });
        if (it != quant_.overrides.end() && it->first == k) {
            return it->second;
        }
    }
    return raw_value(k);
}

long double ValueFamily::approx(Index k) const {
    if (quant_.empty()) {
        return raw_approx(k);
    }
    return value(k).approx(*basis_);
}

std::vector<Cluster> ValueFamily::clusters() const {
    std::vector<Cluster> out;
    for (std::size_t t = 0; t < tails_.size(); ++t) {
        if (!tails_[t].has_limit()) {
            continue;
        }
        auto it = std::find_if(out.begin(), out.end(), [&](const Cluster& c) { return c.limit == tails_[t].limit; });
        if (it == out.end()) {
            out.push_back({tails_[t].limit, {}, Rational(0)});
            it = out.end() - 1;
        }
        it->tails.push_back(t);
        auto dev = tail_deviation(t, 1);
        if (!dev || !it->deviation) {
            it->deviation.reset();
        } else {
            *it->deviation += *dev;
        }
    }
    const Basis& basis = *basis_;
    std::sort(out.begin(), out.end(), [&](const Cluster& a, const Cluster& b) { return less(basis, a.limit, b.limit); });
    return out;
}

std::optional<Rational> ValueFamily::tail_deviation(std::size_t tail, Index from) const {
    const FamilyTail& t = tails_.at(tail);
    if (t.kind == TailKind::Geometric) {
        Rational s = abs(t.scale) * rational_pow(t.ratio, from) / (1 - t.ratio);
        s.canonicalize();
        return s;
    }
    if (t.kind == TailKind::Reciprocal) {
        return std::nullopt;
    }
    throw Error(ErrorCode::InvalidArgument, "tail has no limit");
}

namespace {

// Sign of v_i - x for a tail. Harmonic numbers are compared through the
// float approximation when the margin is wide, exactly otherwise.
int tail_cmp(const ValueFamily& fam, std::size_t tail, Index i, const BasisValue& x) {
    const Basis& basis = *fam.basis();
    if (fam.tails()[tail].kind == TailKind::HarmonicNumbers) {
        long double a = fam.tail_approx(tail, i);
        long double b = x.approx(basis);
        long double margin = 1e-12L * std::max(1.0L, std::fabs(b));
        if (a - b > margin) {
            return 1;
        }
        if (b - a > margin) {
            return -1;
        }
    }
    return sign(basis, fam.tail_value(tail, i) - x);
}

} // namespace

std::optional<TailRange> ValueFamily::tail_members(std::size_t tail, const BasisValue& lo, const BasisValue& hi,
                                                   bool hi_closed) const {
    const FamilyTail& t = tails_.at(tail);
    const Basis& basis = *basis_;
    auto cmp = [&](Index i, const BasisValue& x) { return tail_cmp(*this, tail, i, x); };
    std::optional<Index> start;
    std::optional<Index> end;  // first index past the range
    if (t.direction() > 0) {
        bool bounded = t.has_limit();
        bool reach_lo = !bounded || less(basis, lo, t.limit);
        start = first_true([&](Index i) { return cmp(i, lo) >= 0; }, reach_lo);
        if (!start) {
            return std::nullopt;
        }
        bool reach_hi = !bounded || less(basis, hi, t.limit);
        if (hi_closed) {
            end = first_true([&](Index i) { return cmp(i, hi) > 0; }, reach_hi);
        } else {
            end = first_true([&](Index i) { return cmp(i, hi) >= 0; }, reach_hi);
        }
    } else {
        bool reach_hi = less(basis, t.limit, hi);
        if (hi_closed) {
            start = first_true([&](Index i) { return cmp(i, hi) <= 0; }, reach_hi);
        } else {
            start = first_true([&](Index i) { return cmp(i, hi) < 0; }, reach_hi);
        }
        if (!start) {
            return std::nullopt;
        }
        bool reach_lo = less(basis, t.limit, lo);
        end = first_true([&](Index i) { return cmp(i, lo) < 0; }, reach_lo);
    }
    if (end) {
        if (*end <= *start) {
            return std::nullopt;
        }
        return TailRange{*start, *end - 1};
    }
    return TailRange{*start, std::nullopt};
}

CellContents ValueFamily::cell(const BasisValue& lo, const BasisValue& hi, bool hi_closed) const {
    const Basis& basis = *basis_;
    CellContents out;
    auto widen = [&](const BasisValue& v) {
        if (!out.inf || less(basis, v, *out.inf)) {
            out.inf = v;
        }
        if (!out.sup || less(basis, *out.sup, v)) {
            out.sup = v;
        }
    };
    for (std::size_t i = 0; i < explicit_.size(); ++i) {
        const BasisValue& v = explicit_[i];
        int a = sign(basis, v - lo);
        int b = sign(basis, v - hi);
        if (a >= 0 && (b < 0 || (hi_closed && b == 0))) {
            out.finite.push_back(i + 1);
            widen(v);
        }
    }
    for (std::size_t t = 0; t < tails_.size(); ++t) {
        auto range = tail_members(t, lo, hi, hi_closed);
        if (!range) {
            continue;
        }
        widen(tail_value(t, range->first));
        if (range->last) {
            Index count = *range->last - range->first + 1;
            if (out.finite.size() + count > kMaxCellMaterialise) {
                throw Error(ErrorCode::Unsupported, "cell holds too many family members to materialise");
            }
            for (Index i = range->first; i <= *range->last; ++i) {
                out.finite.push_back(family_index(t, i));
            }
            widen(tail_value(t, *range->last));
        } else {
            out.unbounded.emplace_back(t, range->first);
            widen(tails_[t].limit);
        }
    }
    std::sort(out.finite.begin(), out.finite.end());
    return out;
}

std::vector<Index> ValueFamily::find(const BasisValue& x) const {
    std::vector<Index> out;
    for (std::size_t i = 0; i < explicit_.size(); ++i) {
        if (explicit_[i] == x) {
            out.push_back(i + 1);
        }
    }
    for (std::size_t t = 0; t < tails_.size(); ++t) {
        auto range = tail_members(t, x, x, true);
        if (range && range->last) {
            for (Index i = range->first; i <= *range->last; ++i) {
                out.push_back(family_index(t, i));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BasisValue ValueFamily::bounded_sup() const {
    const Basis& basis = *basis_;
    BasisValue best;
    bool any = false;
    auto take = [&](const BasisValue& v) {
        if (!any || less(basis, best, v)) {
            best = v;
            any = true;
        }
    };
    for (const BasisValue& v : explicit_) {
        take(v);
    }
    for (std::size_t t = 0; t < tails_.size(); ++t) {
        if (tails_[t].has_limit()) {
            take(tails_[t].limit);
            take(tail_value(t, 1));
        }
    }
    return best;
}

bool ValueFamily::has_unbounded_tail() const {
    return std::any_of(tails_.begin(), tails_.end(), [](const FamilyTail& t) { return !t.has_limit(); });
}

std::optional<Rational> ValueFamily::unbounded_gap() const {
    const FamilyTail* found = nullptr;
    for (const FamilyTail& t : tails_) {
        if (!t.has_limit()) {
            if (found) {
                return std::nullopt;
            }
            found = &t;
        }
    }
    if (!found || found->kind != TailKind::IntegerPlusGeometric) {
        return std::nullopt;
    }
    // v_{i+1} - v_i = 1 - r^i (1 - r) >= 1 - r (1 - r).
    Rational g = 1 - found->ratio * (1 - found->ratio);
    g.canonicalize();
    return g;
}

bool ValueFamily::all_positive() const {
    const Basis& basis = *basis_;
    for (const BasisValue& v : explicit_) {
        if (sign(basis, v) <= 0) {
            return false;
        }
    }
    for (std::size_t t = 0; t < tails_.size(); ++t) {
        const FamilyTail& tail = tails_[t];
        if (tail.has_limit()) {
            if (tail.direction() < 0 ? sign(basis, tail.limit) < 0 : sign(basis, tail_value(t, 1)) <= 0) {
                return false;
            }
        }
    }
    return true;
}

Rational ValueFamily::recommended_epsilon() const {
    Rational eps = 1;
    if (auto g = unbounded_gap(); g && *g < eps) {
        eps = *g;
    }
    // Distinct accumulation points must land in distinct cells.
    const Basis& basis = *basis_;
    std::vector<Cluster> cl = clusters();
    for (std::size_t i = 1; i < cl.size(); ++i) {
        BasisValue half = (cl[i].limit - cl[i - 1].limit) * Rational(1, 2);
        Rational r = half.is_rational() ? half.rational_part() : rational_lower_bound(basis, half);
        if (r < eps) {
            eps = r;
        }
    }
    return eps;
}

std::optional<Case2Strategy> ValueFamily::case2_certificate() const {
    if (explicit_.empty() && tails_.size() == 1 && tails_[0].kind == TailKind::HarmonicNumbers) {
        return Case2Strategy::HarmonicGaps;
    }
    for (const Cluster& c : clusters()) {
        if (!c.deviation) {
            for (std::size_t t : c.tails) {
                if (tails_[t].kind == TailKind::Reciprocal) {
                    return Case2Strategy::ClusterFarNear;
                }
            }
        }
    }
    return std::nullopt;
}

nlohmann::json ValueFamily::to_json() const {
    nlohmann::json j;
    const Basis& basis = *basis_;
    j["explicit"] = nlohmann::json::array();
    for (const BasisValue& v : explicit_) {
        j["explicit"].push_back(v.to_string(basis));
    }
    j["tails"] = nlohmann::json::array();
    for (const FamilyTail& t : tails_) {
        nlohmann::json tj;
        tj["kind"] = tail_kind_name(t.kind);
        switch (t.kind) {
        case TailKind::HarmonicNumbers: break;
        case TailKind::Reciprocal:
            tj["limit"] = t.limit.to_string(basis);
            tj["a"] = format_rational(t.a);
            tj["b"] = format_rational(t.b);
            break;
        case TailKind::Geometric:
            tj["limit"] = t.limit.to_string(basis);
            tj["scale"] = format_rational(t.scale);
            tj["ratio"] = format_rational(t.ratio);
            break;
        case TailKind::IntegerPlusGeometric: tj["ratio"] = format_rational(t.ratio); break;
        }
        j["tails"].push_back(tj);
    }
    if (!quant_.empty()) {
        nlohmann::json q;
        q["overrides"] = nlohmann::json::array();
        for (const auto& [k, v] : quant_.overrides) {
            q["overrides"].push_back({k, v.to_string(basis)});
        }
        q["tails"] = nlohmann::json::array();
        for (const TailOverride& o : quant_.tails) {
            q["tails"].push_back({{"tail", o.tail}, {"from", o.from}, {"value", o.value.to_string(basis)}});
        }
        j["quantization"] = q;
    }
    return j;
}

ValueFamily ValueFamily::from_json(const BasisPtr& basis, const nlohmann::json& j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::SpecParse, "value family must be an object");
    }
    auto str = [](const nlohmann::json& obj, const char* key, const char* fallback) -> std::string {
        if (!obj.contains(key)) {
            if (fallback) {
                return fallback;
            }
            throw Error(ErrorCode::SpecParse, std::string("value family tail missing '") + key + "'");
        }
        const auto& v = obj.at(key);
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_number_integer()) {
            return std::to_string(v.get<long long>());
        }
        throw Error(ErrorCode::SpecParse, std::string("field '") + key + "' must be a string or integer");
    };
    std::vector<BasisValue> explicit_values;
    if (j.contains("explicit")) {
        for (const auto& v : j.at("explicit")) {
            explicit_values.push_back(parse_value(*basis, v.is_string() ? v.get<std::string>() : v.dump()));
        }
    }
    std::vector<FamilyTail> tails;
    if (j.contains("tails")) {
        for (const auto& tj : j.at("tails")) {
            std::string kind = str(tj, "kind", nullptr);
            if (kind == "harmonic_numbers") {
                tails.push_back(FamilyTail::harmonic());
            } else if (kind == "reciprocal") {
                tails.push_back(FamilyTail::reciprocal(parse_value(*basis, str(tj, "limit", "0")),
                                                       parse_rational(str(tj, "a", "1")),
                                                       parse_rational(str(tj, "b", "0"))));
            } else if (kind == "geometric") {
                tails.push_back(FamilyTail::geometric(parse_value(*basis, str(tj, "limit", "0")),
                                                      parse_rational(str(tj, "scale", "1")),
                                                      parse_rational(str(tj, "ratio", nullptr))));
            } else if (kind == "integer_plus_geometric") {
                tails.push_back(FamilyTail::integer_plus_geometric(parse_rational(str(tj, "ratio", nullptr))));
            } else {
                throw Error(ErrorCode::SpecParse, "unknown value family tail kind '" + kind + "'");
            }
        }
    }
    ValueFamily fam(basis, std::move(explicit_values), std::move(tails));
    if (j.contains("quantization")) {
        const auto& q = j.at("quantization");
        Quantization quant;
        if (q.contains("overrides")) {
            for (const auto& e : q.at("overrides")) {
                quant.overrides.emplace_back(e.at(0).get<Index>(), parse_value(*basis, e.at(1).get<std::string>()));
            }
        }
        if (q.contains("tails")) {
            for (const auto& e : q.at("tails")) {
                quant.tails.push_back({e.at("tail").get<std::size_t>(), e.at("from").get<Index>(),
                                       parse_value(*basis, e.at("value").get<std::string>())});
            }
        }
        fam = fam.with_quantization(std::move(quant));
    }
    return fam;
}

bool operator==(const ValueFamily& x, const ValueFamily& y) {
    return x.explicit_ == y.explicit_ && x.tails_ == y.tails_ && x.quant_ == y.quant_;
}

} // namespace sumrange
