#include "sumrange/core/basis_value.hpp"

#include "sumrange/core/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace sumrange {

BasisValue::BasisValue(const Rational& q) {
    if (q != 0) {
        coeffs_.emplace_back(0u, q);
    }
}

BasisValue BasisValue::unit(std::uint32_t basis_index, const Rational& coefficient) {
    BasisValue v;
    if (coefficient != 0) {
        v.coeffs_.emplace_back(basis_index, coefficient);
    }
    return v;
}

BasisValue BasisValue::from_coefficients(std::vector<Coefficient> coeffs) {
    std::sort(coeffs.begin(), coeffs.end(),
              [](const Coefficient& a, const Coefficient& b) { return a.first < b.first; });
    BasisValue v;
    for (auto& [idx, c] : coeffs) {
        if (!v.coeffs_.empty() && v.coeffs_.back().first == idx) {
            v.coeffs_.back().second += c;
            if (v.coeffs_.back().second == 0) {
                v.coeffs_.pop_back();
            }
        } else if (c != 0) {
            v.coeffs_.emplace_back(idx, std::move(c));
        }
    }
    return v;
}

Rational BasisValue::rational_part() const {
    return coefficient(0);
}

Rational BasisValue::coefficient(std::uint32_t i) const {
    for (const auto& [idx, c] : coeffs_) {
        if (idx == i) {
            return c;
        }
        if (idx > i) {
            break;
        }
    }
    return Rational(0);
}

void BasisValue::add_scaled(const BasisValue& o, int sign) {
    if (o.coeffs_.empty()) {
        return;
    }
    // Fast path for the common single-coefficient case.
    if (coeffs_.size() == 1 && o.coeffs_.size() == 1 && coeffs_[0].first == o.coeffs_[0].first) {
        if (sign > 0) {
            coeffs_[0].second += o.coeffs_[0].second;
        } else {
            coeffs_[0].second -= o.coeffs_[0].second;
        }
        if (coeffs_[0].second == 0) {
            coeffs_.clear();
        }
        return;
    }
    std::vector<Coefficient> out;
    out.reserve(coeffs_.size() + o.coeffs_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < coeffs_.size() || j < o.coeffs_.size()) {
        if (j == o.coeffs_.size() || (i < coeffs_.size() && coeffs_[i].first < o.coeffs_[j].first)) {
            out.push_back(std::move(coeffs_[i++]));
        } else if (i == coeffs_.size() || o.coeffs_[j].first < coeffs_[i].first) {
            out.emplace_back(o.coeffs_[j].first, sign > 0 ? o.coeffs_[j].second : Rational(-o.coeffs_[j].second));
            ++j;
        } else {
            Rational c = sign > 0 ? Rational(coeffs_[i].second + o.coeffs_[j].second)
                                  : Rational(coeffs_[i].second - o.coeffs_[j].second);
            if (c != 0) {
                out.emplace_back(coeffs_[i].first, std::move(c));
            }
            ++i;
            ++j;
        }
    }
    coeffs_ = std::move(out);
}

BasisValue& BasisValue::operator+=(const BasisValue& o) {
    add_scaled(o, +1);
    return *this;
}

BasisValue& BasisValue::operator-=(const BasisValue& o) {
    add_scaled(o, -1);
    return *this;
}

BasisValue& BasisValue::operator*=(const Rational& q) {
    if (q == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [idx, c] : coeffs_) {
        c *= q;
    }
    return *this;
}

BasisValue BasisValue::operator-() const {
    BasisValue v = *this;
    for (auto& [idx, c] : v.coeffs_) {
        c = -c;
    }
    return v;
}

bool operator==(const BasisValue& a, const BasisValue& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].first != b.coeffs_[i].first || a.coeffs_[i].second != b.coeffs_[i].second) {
            return false;
        }
    }
    return true;
}

long double BasisValue::approx(const Basis& basis) const {
    long double total = 0.0L;
    for (const auto& [idx, c] : coeffs_) {
        long double cd = static_cast<long double>(c.get_d());
        // get_d truncates large rationals to double; refine with the
        // remainder so long double precision is retained.
        Rational rem = c - Rational(static_cast<double>(cd));
        cd += static_cast<long double>(rem.get_d());
        total += idx == 0 ? cd : cd * basis[idx].approx_ld;
    }
    return total;
}

std::string BasisValue::to_string(const Basis& basis) const {
    if (coeffs_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [idx, c] : coeffs_) {
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) {
                out += "-";
            }
        } else {
            out += negative ? " - " : " + ";
        }
        if (idx == 0) {
            out += format_rational(mag);
        } else {
            if (mag != 1) {
                out += format_rational(mag) + "*";
            }
            out += basis[idx].name;
        }
        first = false;
    }
    return out;
}

std::size_t BasisValue::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [idx, c] : coeffs_) {
        std::size_t hn = mpz_get_ui(c.get_num_mpz_t()) ^ (mpz_get_ui(c.get_den_mpz_t()) << 1);
        hn ^= static_cast<std::size_t>(mpz_sgn(c.get_num_mpz_t()) + 1) << 61;
        h ^= std::hash<std::size_t>{}(hn + idx * 0x100000001b3ull) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::strong_ordering compare(const Basis& basis, const BasisValue& a, const BasisValue& b) {
    if (a == b) {
        return std::strong_ordering::equal;
    }
    BasisValue diff = a - b;
    if (diff.is_rational()) {
        int s = sgn(diff.rational_part());
        return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    Rational center = 0;
    Rational radius = 0;
    for (const auto& [idx, c] : diff.coefficients()) {
        if (idx >= basis.size()) {
            throw Error(ErrorCode::InvalidArgument, "value references basis element outside the context");
        }
        const BasisElement& el = basis[idx];
        center += c * el.approx;
        radius += abs(c) * el.radius;
    }
    if (center > radius) {
        return std::strong_ordering::greater;
    }
    if (center < -radius) {
        return std::strong_ordering::less;
    }
    throw Error(ErrorCode::PrecisionInsufficient,
                "cannot certify sign of " + diff.to_string(basis) + " at stored precision");
}

int sign(const Basis& basis, const BasisValue& v) {
    auto c = compare(basis, v, BasisValue());
    return c == std::strong_ordering::less ? -1 : (c == std::strong_ordering::equal ? 0 : 1);
}

BasisValue abs(const Basis& basis, const BasisValue& v) {
    return sign(basis, v) < 0 ? -v : v;
}

const BasisValue& min(const Basis& basis, const BasisValue& a, const BasisValue& b) {
    return less(basis, b, a) ? b : a;
}

const BasisValue& max(const Basis& basis, const BasisValue& a, const BasisValue& b) {
    return less(basis, a, b) ? b : a;
}

BasisValue exact_sum(std::span<const BasisValue> values) {
    if (values.empty()) {
        return BasisValue();
    }
    if (values.size() == 1) {
        return values[0];
    }
    if (values.size() <= 8) {
        BasisValue s = values[0];
        for (std::size_t i = 1; i < values.size(); ++i) {
            s += values[i];
        }
        return s;
    }
    std::size_t mid = values.size() / 2;
    return exact_sum(values.first(mid)) + exact_sum(values.subspan(mid));
}

namespace {

class ValueParser {
public:
    ValueParser(const Basis& basis, std::string_view text) : basis_(basis), text_(text) {}

    BasisValue parse() {
        skip_ws();
        if (pos_ == text_.size()) {
            fail("empty value");
        }
        BasisValue total;
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            bool had_sign = false;
            while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                if (text_[pos_] == '-') {
                    sign = -sign;
                }
                had_sign = true;
                ++pos_;
                skip_ws();
            }
            if (!first && !had_sign) {
                fail("expected '+' or '-'");
            }
            BasisValue term = parse_term();
            if (sign < 0) {
                term = -term;
            }
            total += term;
            first = false;
            skip_ws();
            if (pos_ == text_.size()) {
                break;
            }
        }
        return total;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw Error(ErrorCode::InvalidArgument, why + " in value '" + std::string(text_) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    BasisValue parse_term() {
        Rational coeff = 1;
        std::optional<std::uint32_t> name;
        parse_factor(coeff, name);
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                skip_ws();
                parse_factor(coeff, name);
            } else if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_ws();
                Rational d = parse_number();
                if (d == 0) {
                    fail("division by zero");
                }
                coeff /= d;
            } else {
                break;
            }
        }
        if (!name) {
            return BasisValue(coeff);
        }
        return BasisValue::unit(*name, coeff);
    }

    void parse_factor(Rational& coeff, std::optional<std::uint32_t>& name) {
        if (pos_ >= text_.size()) {
            fail("unexpected end");
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            coeff *= parse_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string_view id = text_.substr(start, pos_ - start);
            auto idx = basis_.find(id);
            if (!idx) {
                fail("unknown basis name '" + std::string(id) + "'");
            }
            const BasisElement& el = basis_[*idx];
            if (el.exact) {
                coeff *= *el.exact;
                return;
            }
            if (name) {
                fail("product of two irrational basis elements");
            }
            name = *idx;
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Rational parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected number");
        }
        Rational q = parse_rational(text_.substr(start, pos_ - start));
        // Optional exponent, only when digits follow.
        if (pos_ + 1 < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            int esign = 1;
            if (text_[p] == '+' || text_[p] == '-') {
                esign = text_[p] == '-' ? -1 : 1;
                ++p;
            }
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                long exp = 0;
                while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                    exp = exp * 10 + (text_[p] - '0');
                    if (exp > 100000) {
                        fail("exponent too large");
                    }
                    ++p;
                }
                Integer ten;
                mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(exp));
                if (esign > 0) {
                    q *= Rational(ten);
                } else {
                    q /= Rational(ten);
                }
                q.canonicalize();
                pos_ = p;
            }
        }
        return q;
    }

    const Basis& basis_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

BasisValue parse_value(const Basis& basis, std::string_view text) {
    return ValueParser(basis, text).parse();
}

Rational rational_lower_bound(const Basis& basis, const BasisValue& v) {
    if (sign(basis, v) <= 0) {
        throw Error(ErrorCode::InvalidArgument, "rational_lower_bound needs a positive value");
    }
    Rational lo = v.rational_part();
    for (const auto& [idx, c] : v.coefficients()) {
        if (idx != 0) {
            lo += c * basis[idx].approx - abs(c) * basis[idx].radius;
        }
    }
    if (lo <= 0) {
        throw Error(ErrorCode::PrecisionInsufficient, "lower enclosure of value is not positive");
    }
    // Largest power of two not exceeding lo.
    long num_bits = static_cast<long>(mpz_sizeinbase(lo.get_num_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(lo.get_den_mpz_t(), 2));
    long e = num_bits - den_bits;
    auto pow2 = [](long k) {
        Rational r = 1;
        if (k >= 0) {
            mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
        } else {
            mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
        }
        return r;
    };
    Rational r = pow2(e + 1);
    while (r > lo) {
        r /= 2;
    }
    if (BasisValue(r) == v) {
        r /= 2;
    }
    return r;
}

} // namespace sumrange
