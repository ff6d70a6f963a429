#include "sumrange/twon/lattice.hpp"

#include "sumrange/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

namespace sumrange {

namespace {

using Row = std::vector<Integer>;

struct Echelon {
    std::vector<Row> rows;     // U * A
    std::vector<Row> u;        // unimodular transform
    std::vector<std::size_t> pivot_col;  // per leading row
};

Echelon echelon(std::vector<Row> a) {
    std::size_t r = a.size();
    std::size_t d = r ? a[0].size() : 0;
    Echelon e;
    e.u.assign(r, Row(r, Integer(0)));
    for (std::size_t i = 0; i < r; ++i) {
        e.u[i][i] = 1;
    }
    std::size_t piv = 0;
    for (std::size_t col = 0; col < d && piv < r; ++col) {
        std::size_t nz = piv;
        while (nz < r && a[nz][col] == 0) {
            ++nz;
        }
        if (nz == r) {
            continue;
        }
        std::swap(a[piv], a[nz]);
        std::swap(e.u[piv], e.u[nz]);
        for (std::size_t j = piv + 1; j < r; ++j) {
            if (a[j][col] == 0) {
                continue;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[piv][col].get_mpz_t(), a[j][col].get_mpz_t());
            Integer p = a[piv][col] / g;
            Integer q = a[j][col] / g;
            auto combine = [&](Row& x, Row& y) {
                for (std::size_t c = 0; c < x.size(); ++c) {
                    Integer nx = s * x[c] + t * y[c];
                    Integer ny = -q * x[c] + p * y[c];
                    x[c] = nx;
                    y[c] = ny;
                }
            };
            combine(a[piv], a[j]);
            combine(e.u[piv], e.u[j]);
        }
        e.pivot_col.push_back(col);
        ++piv;
    }
    e.rows = std::move(a);
    return e;
}

Integer lcm_den(const std::vector<BasisValue>& values) {
    Integer l = 1;
    for (const BasisValue& v : values) {
        for (const auto& [i, c] : v.coefficients()) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    return l;
}

Row integer_row(const BasisValue& v, const Integer& scale, std::size_t d) {
    Row row(d, Integer(0));
    for (const auto& [i, c] : v.coefficients()) {
        Rational q = c * Rational(scale);
        q.canonicalize();
        row.at(i) = q.get_num();
    }
    return row;
}

} // namespace

MembershipResult lattice_membership(const Basis& basis, const std::vector<BasisValue>& generators,
                                    const BasisValue& z, bool even_parity) {
    MembershipResult out;
    std::size_t r = generators.size();
    if (r == 0) {
        out.member = z.is_zero();
        out.detail = out.member ? "empty sum" : "only 0 is reachable without generators";
        return out;
    }
    // Even-sum sublattice is generated by 2 g_1 and g_i - g_1.
    std::vector<BasisValue> h;
    if (even_parity) {
        h.push_back(generators[0] * Rational(2));
        for (std::size_t i = 1; i < r; ++i) {
            h.push_back(generators[i] - generators[0]);
        }
    } else {
        h = generators;
    }
    std::vector<BasisValue> all = h;
    all.push_back(z);
    Integer scale = lcm_den(all);
    std::size_t d = basis.size();
    std::vector<Row> a;
    for (const BasisValue& v : h) {
        a.push_back(integer_row(v, scale, d));
    }
    Row t = integer_row(z, scale, d);
    Echelon e = echelon(std::move(a));

    Row y(r, Integer(0));
    for (std::size_t i = 0; i < e.pivot_col.size(); ++i) {
        std::size_t col = e.pivot_col[i];
        const Integer& p = e.rows[i][col];
        if (t[col] % p != 0) {
            out.detail = "coefficient system has no integer solution";
            return out;
        }
        y[i] = t[col] / p;
        for (std::size_t c = 0; c < d; ++c) {
            t[c] -= y[i] * e.rows[i][c];
        }
    }
    if (std::any_of(t.begin(), t.end(), [](const Integer& x) { return x != 0; })) {
        out.detail = "target leaves the span of the generators";
        return out;
    }
    Row coeff(r, Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            coeff[j] += y[i] * e.u[i][j];
        }
    }
    if (even_parity) {
        Integer rest = 0;
        for (std::size_t i = 1; i < r; ++i) {
            rest += coeff[i];
        }
        coeff[0] = 2 * coeff[0] - rest;
    }
    out.member = true;
    out.coefficients = std::move(coeff);
    out.detail = "solved exactly";
    return out;
}

std::size_t lattice_rank(const Basis& basis, const std::vector<BasisValue>& generators) {
    if (generators.empty()) {
        return 0;
    }
    Integer scale = lcm_den(generators);
    std::vector<Row> a;
    for (const BasisValue& g : generators) {
        a.push_back(integer_row(g, scale, basis.size()));
    }
    return echelon(std::move(a)).pivot_col.size();
}

std::vector<BasisValue> lattice_enumerate(const Basis& basis, const std::vector<BasisValue>& generators,
                                          const BasisValue& lo, const BasisValue& hi, const Integer& bound,
                                          bool even_parity) {
    std::unordered_set<BasisValue, BasisValueHash> seen;
    if (bound < 0) {
        throw Error(ErrorCode::InvalidArgument, "coefficient bound must be non-negative");
    }
    if (!bound.fits_slong_p()) {
        throw Error(ErrorCode::InvalidArgument, "coefficient bound too large");
    }
    long b = bound.get_si();
    std::size_t r = generators.size();
    std::vector<long double> g(r);
    std::vector<long double> reach(r + 1, 0.0L);
    for (std::size_t i = 0; i < r; ++i) {
        g[i] = generators[i].approx(basis);
    }
    for (std::size_t i = r; i-- > 0;) {
        reach[i] = reach[i + 1] + static_cast<long double>(b) * std::fabs(g[i]);
    }
    long double lo_a = lo.approx(basis);
    long double hi_a = hi.approx(basis);
    long double slack = 1e-9L * (1.0L + std::fabs(lo_a) + std::fabs(hi_a) + reach[0]);
    std::vector<long> c(r, 0);
    auto leaf = [&]() {
        long sum = 0;
        BasisValue v;
        for (std::size_t i = 0; i < r; ++i) {
            sum += c[i];
            if (c[i] != 0) {
                v += generators[i] * Rational(c[i]);
            }
        }
        if (even_parity && sum % 2 != 0) {
            return;
        }
        if (less(basis, v, lo) || less(basis, hi, v)) {
            return;
        }
        seen.insert(std::move(v));
    };
    auto rec = [&](auto&& self, std::size_t i, long double partial) -> void {
        if (partial + reach[i] < lo_a - slack || partial - reach[i] > hi_a + slack) {
            return;
        }
        if (i == r) {
            leaf();
            return;
        }
        for (long k = -b; k <= b; ++k) {
            c[i] = k;
            self(self, i + 1, partial + static_cast<long double>(k) * g[i]);
        }
        c[i] = 0;
    };
    rec(rec, 0, 0.0L);
    std::vector<BasisValue> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const BasisValue& x, const BasisValue& y) { return less(basis, x, y); });
    return out;
}

MembershipResult sr2_separated_membership(const ElementTable& table, const BasisValue& z) {
    return lattice_membership(*table.basis(), table.generators(), z, true);
}

std::vector<BasisValue> sr2_separated_enumerate(const ElementTable& table, const BasisValue& lo, const BasisValue& hi,
                                                const Integer& coeff_bound) {
    return lattice_enumerate(*table.basis(), table.generators(), lo, hi, coeff_bound, true);
}

namespace {

class SeparatedSource final : public ScheduleSource {
public:
    SeparatedSource(SeriesSpec spec, std::vector<Index> prefix)
        : spec_(std::move(spec)), prefix_(std::move(prefix)), used_(prefix_.begin(), prefix_.end()),
          plus_(spec_.symmetric_elements().size()), minus_(spec_.symmetric_elements().size()) {
        extent_ = spec_.known_extent();
    }

    Emission next() override {
        Emission e = produce();
        cover_.mark(e.index);
        return e;
    }
    Index claimed_prefix() const override { return cover_.frontier(); }
    std::string name() const override { return "separated"; }

private:
    Emission produce() {
        if (prefix_pos_ < prefix_.size()) {
            return {prefix_[prefix_pos_++], {"prefix", prefix_pos_}};
        }
        while (ready_.empty()) {
            advance();
        }
        Emission e = ready_.front();
        ready_.pop_front();
        return e;
    }

    void advance() {
        Index k = ++scan_;
        if (used_.count(k)) {
            used_.erase(k);
            return;
        }
        if (extent_ && k > *extent_) {
            Index k2 = ++scan_;
            ++pairs_;
            ready_.push_back({k, {"zero_pair", pairs_}});
            ready_.push_back({k2, {"zero_pair", pairs_}});
            return;
        }
        std::size_t el = *spec_.symmetric_element_of_pair((k + 1) / 2);
        auto& mine = (k % 2 == 1) ? plus_[el] : minus_[el];
        auto& other = (k % 2 == 1) ? minus_[el] : plus_[el];
        if (other.empty()) {
            mine.push_back(k);
            return;
        }
        Index o = other.front();
        other.pop_front();
        Index p = (k % 2 == 1) ? k : o;
        Index m = (k % 2 == 1) ? o : k;
        ++pairs_;
        ready_.push_back({p, {"pair", pairs_}});
        ready_.push_back({m, {"pair", pairs_}});
    }

    SeriesSpec spec_;
    std::vector<Index> prefix_;
    std::size_t prefix_pos_ = 0;
    std::unordered_set<Index> used_;
    std::vector<std::deque<Index>> plus_;
    std::vector<std::deque<Index>> minus_;
    std::deque<Emission> ready_;
    std::optional<Index> extent_;
    Index scan_ = 0;
    std::uint64_t pairs_ = 0;
    CoverageCursor cover_;
};

} // namespace

PermutationSchedule separated_schedule(const SeriesSpec& spec, const std::vector<BasisValue>& generators,
                                       const std::vector<Integer>& coefficients) {
    if (spec.variant() != SpecVariant::SymmetricOrdered) {
        throw Error(ErrorCode::CertificateInvalid, "separated construction needs a SymmetricOrdered spec");
    }
    if (generators.size() != coefficients.size()) {
        throw Error(ErrorCode::CertificateInvalid, "one coefficient per generator expected");
    }
    const auto& elements = spec.symmetric_elements();
    // Per generator: (element index, term parity wanted, copies).
    struct Need {
        std::size_t element;
        bool odd;
        Index copies;
    };
    std::vector<Need> needs;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (coefficients[i] == 0) {
            continue;
        }
        auto it = std::find_if(elements.begin(), elements.end(), [&](const auto& e) {
            return e.value == generators[i] || e.value == -generators[i];
        });
        if (it == elements.end() || !it->order.is_infinite() || it->value.is_zero()) {
            throw Error(ErrorCode::CertificateInvalid, "generator is not a nonzero element of infinite order");
        }
        bool same = it->value == generators[i];
        bool positive = coefficients[i] > 0;
        Integer mag = abs(coefficients[i]);
        if (!mag.fits_ulong_p()) {
            throw Error(ErrorCode::Overflow, "coefficient too large");
        }
        needs.push_back({static_cast<std::size_t>(it - elements.begin()), same == positive, mag.get_ui()});
    }
    std::vector<std::vector<Index>> found(needs.size());
    Index remaining = 0;
    for (const Need& n : needs) {
        remaining += n.copies;
    }
    for (Index p = 1; remaining > 0; ++p) {
        auto el = spec.symmetric_element_of_pair(p);
        if (!el) {
            throw Error(ErrorCode::CertificateInvalid, "ran out of pairs while collecting generator copies");
        }
        for (std::size_t i = 0; i < needs.size(); ++i) {
            if (needs[i].element == *el && found[i].size() < needs[i].copies) {
                found[i].push_back(needs[i].odd ? 2 * p - 1 : 2 * p);
                --remaining;
                break;
            }
        }
    }
    std::vector<Index> prefix;
    for (const auto& f : found) {
        prefix.insert(prefix.end(), f.begin(), f.end());
    }
    return PermutationSchedule(std::make_unique<SeparatedSource>(spec, std::move(prefix)));
}

PermutationSchedule construct_separated_target(const ElementTable& table, const SeriesSpec& spec,
                                               const BasisValue& z, const std::vector<Integer>& certificate) {
    std::vector<BasisValue> gens = table.generators();
    if (certificate.size() != gens.size()) {
        throw Error(ErrorCode::CertificateInvalid, "certificate length differs from the generator count");
    }
    Integer parity = 0;
    BasisValue v;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        parity += certificate[i];
        v += gens[i] * Rational(certificate[i]);
    }
    if (parity % 2 != 0) {
        throw Error(ErrorCode::CertificateInvalid, "coefficient sum is odd");
    }
    if (!(v == z)) {
        throw Error(ErrorCode::CertificateInvalid, "certificate does not sum to the target");
    }
    return separated_schedule(spec, gens, certificate);
}

} // namespace sumrange
