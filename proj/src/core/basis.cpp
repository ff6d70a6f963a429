#include "sumrange/core/basis.hpp"

#include "sumrange/core/error.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <utility>

namespace sumrange {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kBuiltins{{
    {"sqrt2", "1.4142135623730950488016887242096980785696718753769480731766797"},
    {"sqrt3", "1.732050807568877293527446341505872366942805253810380628055807"},
    {"sqrt5", "2.2360679774997896964091736687312762354406183596115257242708972"},
    {"pi", "3.1415926535897932384626433832795028841971693993751058209749446"},
    {"e", "2.7182818284590452353602874713526624977572470936999595749669676"},
    {"ln2", "0.69314718055994530941723212145817656807550013436025525412068001"},
}};

bool valid_name(std::string_view name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
        return false;
    }
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

// Parses an unsigned or signed plain decimal into (value, unit in the last
// place, significant digit count).
void parse_decimal(std::string_view text, Rational& value, Rational& ulp, int& digits) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string mantissa;
    int frac_digits = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_point) {
                throw Error(ErrorCode::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
            }
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa.push_back(c);
            if (seen_point) {
                ++frac_digits;
            }
        } else {
            throw Error(ErrorCode::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
        }
    }
    if (mantissa.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty decimal");
    }
    std::size_t first = mantissa.find_first_not_of('0');
    digits = first == std::string::npos ? 0 : static_cast<int>(mantissa.size() - first);
    Integer num(mantissa, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
    value = Rational(num, den);
    value.canonicalize();
    if (negative) {
        value = -value;
    }
    ulp = Rational(Integer(1), den);
    ulp.canonicalize();
}

} // namespace

std::optional<std::string_view> Basis::builtin_decimal(std::string_view name) {
    for (const auto& [n, d] : kBuiltins) {
        if (n == name) {
            return d;
        }
    }
    return std::nullopt;
}

std::shared_ptr<const Basis> Basis::make(const std::vector<BasisDecl>& decls) {
    auto basis = std::make_shared<Basis>();
    BasisElement one;
    one.name = "1";
    one.exact = Rational(1);
    one.approx = 1;
    one.radius = 0;
    one.approx_ld = 1.0L;
    basis->elements_.push_back(one);

    for (const BasisDecl& decl : decls) {
        if (!valid_name(decl.name)) {
            throw Error(ErrorCode::InvalidArgument, "invalid basis name '" + decl.name + "'");
        }
        if (basis->find(decl.name)) {
            throw Error(ErrorCode::InvalidArgument, "duplicate basis name '" + decl.name + "'");
        }
        BasisElement el;
        el.name = decl.name;
        if (decl.exact) {
            el.exact = *decl.exact;
            el.approx = *decl.exact;
            el.radius = 0;
            el.approx_ld = static_cast<long double>(decl.exact->get_d());
        } else {
            std::string text = decl.decimal;
            if (text.empty()) {
                auto builtin = builtin_decimal(decl.name);
                if (!builtin) {
                    throw Error(ErrorCode::InvalidArgument,
                                "basis element '" + decl.name + "' needs a decimal or exact value");
                }
                text = std::string(*builtin);
            }
            Rational ulp;
            parse_decimal(text, el.approx, ulp, el.significant_digits);
            if (el.significant_digits < kMinBasisDigits) {
                throw Error(ErrorCode::InvalidArgument,
                            "basis element '" + decl.name + "' has " +
                                std::to_string(el.significant_digits) + " significant digits; at least " +
                                std::to_string(kMinBasisDigits) + " required");
            }
            el.decimal = text;
            el.radius = ulp;
            el.approx_ld = std::strtold(text.c_str(), nullptr);
        }
        basis->elements_.push_back(std::move(el));
    }
    basis->decls_ = decls;
    return basis;
}

std::shared_ptr<const Basis> Basis::standard() {
    static const std::shared_ptr<const Basis> instance = [] {
        std::vector<BasisDecl> decls;
        for (const auto& [n, d] : kBuiltins) {
            decls.push_back({std::string(n), "", std::nullopt});
        }
        return make(decls);
    }();
    return instance;
}

std::shared_ptr<const Basis> Basis::rationals_only() {
    static const std::shared_ptr<const Basis> instance = make({});
    return instance;
}

std::optional<std::uint32_t> Basis::find(std::string_view name) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i].name == name) {
            return static_cast<std::uint32_t>(i);
        }
    }
    return std::nullopt;
}

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty rational");
    }
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) {
            throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
        }
        Rational q = num / den;
        q.canonicalize();
        return q;
    }
    Rational value;
    Rational ulp;
    int digits = 0;
    parse_decimal(text, value, ulp, digits);
    return value;
}

std::string format_rational(const Rational& q) {
    return q.get_str(10);
}

} // namespace sumrange
