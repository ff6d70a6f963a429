#include "sumrange/statconv/witness.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/core/partial_sums.hpp"
#include "sumrange/core/riemann.hpp"
#include "sumrange/twon/lattice.hpp"

#include <cmath>
#include <deque>
#include <mutex>

namespace sumrange {

struct LprWitness::State {
    State(SeriesSpec s, BasisValue t, Factory f, std::string fam)
        : spec(std::move(s)), target(std::move(t)), pi(std::move(f)), family(std::move(fam)) {}

    SeriesSpec spec;
    BasisValue target;
    Factory pi;
    std::string family;
    WitnessOptions options;
    Positions user;
    bool growth = true;
    std::size_t k0 = 2;

    mutable std::mutex mu;
    mutable std::vector<Index> m;
    mutable std::unique_ptr<PartialSumStream> exact;
    mutable std::unique_ptr<ApproxPartialSumStream> approx;

    Index position() const { return exact ? exact->n() : approx->n(); }
    bool close(std::size_t k) const;
    void step() const {
        if (exact) {
            exact->next();
        } else {
            approx->next();
        }
    }
};

namespace {

Rational pow2_inv(std::size_t e) {
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return Rational(Integer(1), d);
}

bool within(const Basis& basis, const BasisValue& sum, const BasisValue& target, const Rational& tol) {
    return less(basis, abs(basis, sum - target), BasisValue(tol));
}

bool within_approx(long double sum, long double target, const Rational& tol) {
    long double slack = 1e-15L * (1.0L + std::fabs(target));
    return std::fabs(sum - target) + slack < to_long_double(tol);
}

} // namespace

bool LprWitness::State::close(std::size_t k) const {
    Rational tol = pow2_inv(k + 10);
    const Basis& basis = *spec.basis();
    if (exact) {
        return within(basis, exact->sum(), target, tol);
    }
    return within_approx(approx->sum(), target.approx(basis), tol);
}

LprWitness::LprWitness(SeriesSpec spec, BasisValue target, Factory pi, std::string family, WitnessOptions options)
    : state_(std::make_shared<State>(std::move(spec), std::move(target), std::move(pi), std::move(family))) {
    state_->options = options;
}

LprWitness LprWitness::user_supplied(SeriesSpec spec, BasisValue target, Factory pi, Positions m, std::size_t k0,
                                     std::size_t validate_upto) {
    if (!m) {
        throw Error(ErrorCode::GrowthViolation, "no positions supplied");
    }
    std::optional<Index> prev;
    for (std::size_t k = 1; k <= validate_upto; ++k) {
        auto mk = m(k);
        if (!mk) {
            break;
        }
        if (prev && *mk <= *prev) {
            throw Error(ErrorCode::GrowthViolation, "m_" + std::to_string(k) + " does not increase");
        }
        if (prev && k - 1 >= k0 && *mk / 2 < *prev) {
            throw Error(ErrorCode::GrowthViolation, "m_" + std::to_string(k) + " < 2 m_" + std::to_string(k - 1));
        }
        prev = mk;
    }
    auto s = std::make_shared<State>(std::move(spec), std::move(target), std::move(pi), "user");
    s->user = std::move(m);
    s->k0 = k0;
    return LprWitness(std::move(s));
}

const SeriesSpec& LprWitness::spec() const { return state_->spec; }
const BasisValue& LprWitness::target() const { return state_->target; }
const std::string& LprWitness::family() const { return state_->family; }
PermutationSchedule LprWitness::schedule() const { return state_->pi(); }
bool LprWitness::growth_certified() const { return state_->growth; }
std::size_t LprWitness::k0() const { return state_->k0; }

Index LprWitness::m(std::size_t k) const {
    if (k == 0) {
        throw Error(ErrorCode::InvalidArgument, "m_k is 1-based");
    }
    State& s = *state_;
    if (s.user) {
        auto v = s.user(k);
        if (!v) {
            throw Error(ErrorCode::Exhausted, "user witness has no m_" + std::to_string(k));
        }
        return *v;
    }
    std::lock_guard<std::mutex> lock(s.mu);
    if (!s.exact && !s.approx) {
        if (s.spec.preferred_summation() == SumTrack::Exact) {
            s.exact = std::make_unique<PartialSumStream>(s.spec, s.pi());
        } else {
            s.approx = std::make_unique<ApproxPartialSumStream>(s.spec, s.pi());
        }
    }
    while (s.m.size() < k) {
        std::size_t j = s.m.size() + 1;
        Index lower = 1;
        if (!s.m.empty()) {
            lower = std::max(s.m.back() + 1, sat_mul(j - 1, s.m.back()));
        }
        while (s.position() + 1 < lower) {
            s.step();
        }
        Index start = s.position();
        while (true) {
            if (s.position() - start > s.options.scan_limit) {
                throw Error(ErrorCode::Exhausted, "no position for m_" + std::to_string(j) + " within the scan limit");
            }
            s.step();
            if (s.close(j)) {
                break;
            }
        }
        s.m.push_back(s.position());
    }
    return s.m[k - 1];
}

std::vector<WitnessCheck> LprWitness::validate(std::size_t k_max) const {
    std::vector<WitnessCheck> out;
    const Basis& basis = *spec().basis();
    const long double b = target().approx(basis);
    bool exact = spec().preferred_summation() == SumTrack::Exact;
    PartialSumStream es(spec(), exact ? schedule() : list_schedule({}));
    ApproxPartialSumStream as(spec(), exact ? list_schedule({}) : schedule());
    for (std::size_t k = 1; k <= k_max; ++k) {
        Index mk = m(k);
        WitnessCheck c{k, mk};
        Rational tol = pow2_inv(k);
        if (exact) {
            while (es.n() < mk) {
                es.next();
            }
            c.deviation = std::fabs(es.sum().approx(basis) - b);
            c.within = within(basis, es.sum(), target(), tol);
        } else {
            while (as.n() < mk) {
                as.next();
            }
            c.deviation = std::fabs(as.sum() - b);
            c.within = within_approx(as.sum(), b, tol);
        }
        out.push_back(c);
    }
    return out;
}

namespace {

bool power_of_ten(Index k) {
    if (k < 10) {
        return false;
    }
    while (k % 10 == 0) {
        k /= 10;
    }
    return k == 1;
}

class DipoleLagSource final : public ScheduleSource {
public:
    explicit DipoleLagSource(std::int64_t lag) : lag_(lag), depth_(static_cast<std::uint64_t>(lag < 0 ? -lag : lag)) {}

    Emission next() override {
        while (out_.empty()) {
            advance();
        }
        Emission e = out_.front();
        out_.pop_front();
        cover_.mark(e.index);
        return e;
    }
    Index claimed_prefix() const override { return cover_.frontier(); }
    std::string name() const override { return "dipole_lag(" + std::to_string(lag_) + ")"; }

private:
    void advance() {
        if (k_ == kIndexMax) {
            throw Error(ErrorCode::Exhausted, "index range exhausted");
        }
        Index k = ++k_;
        bool plus = power_of_ten(k);
        bool minus = power_of_ten(k - 1);
        if (lag_ == 0 || !(plus || minus)) {
            out_.push_back({k, {"identity", 0}});
            return;
        }
        bool hold = lag_ > 0 ? minus : plus;
        if (hold) {
            held_.push_back(k);
            return;
        }
        out_.push_back({k, {"open", ++opened_}});
        if (opened_ > depth_) {
            out_.push_back({held_.front(), {"close", opened_ - depth_}});
            held_.pop_front();
        }
    }

    std::int64_t lag_;
    std::uint64_t depth_;
    Index k_ = 0;
    std::uint64_t opened_ = 0;
    std::deque<Index> held_;
    std::deque<Emission> out_;
    CoverageCursor cover_;
};

} // namespace

PermutationSchedule dipole_lag_schedule(std::int64_t lag) {
    return PermutationSchedule(std::make_unique<DipoleLagSource>(lag));
}

namespace {

/// q with v = q * unit, when it exists.
std::optional<Rational> ratio_to(const BasisValue& v, const BasisValue& unit) {
    if (unit.is_zero()) {
        return std::nullopt;
    }
    auto lead = unit.coefficients().front();
    Rational q = v.coefficient(lead.first) / lead.second;
    if (!(unit * q == v)) {
        return std::nullopt;
    }
    return q;
}

} // namespace

LprWitness build_lpr_witness(const SeriesSpec& spec, const BasisValue& target, WitnessOptions options) {
    const Basis& basis = *spec.basis();
    const auto& md = spec.metadata();
    if (spec.variant() == SpecVariant::ClassicalFamily && spec.family() == FamilyTag::PowerOfTenDipoles) {
        auto q = ratio_to(target, spec.parameter());
        if (!q || q->get_den() != 1 || !q->get_num().fits_slong_p()) {
            throw Error(ErrorCode::TargetNotInLPR,
                        target.to_string(basis) + " is not an integer multiple of " + spec.parameter().to_string(basis));
        }
        std::int64_t lag = q->get_num().get_si();
        return LprWitness(spec, target, [lag] { return dipole_lag_schedule(lag); }, "dipole-lag", options);
    }
    if (spec.variant() == SpecVariant::SymmetricOrdered) {
        std::vector<BasisValue> gens;
        for (const auto& e : spec.symmetric_elements()) {
            if (e.order.is_infinite() && !e.value.is_zero()) {
                gens.push_back(e.value);
            }
        }
        MembershipResult r = lattice_membership(basis, gens, target, false);
        if (!r.member) {
            throw Error(ErrorCode::TargetNotInLPR, target.to_string(basis) + " is not a lattice point: " + r.detail);
        }
        auto coeffs = r.coefficients;
        return LprWitness(spec, target, [spec, gens, coeffs] { return separated_schedule(spec, gens, coeffs); },
                          "symmetric-lattice", options);
    }
    if (md.ordinary == ConvergenceClass::Conditional) {
        return LprWitness(spec, target, [spec, target] { return riemann_greedy(spec, target); }, "riemann-greedy",
                          options);
    }
    if (md.ordinary == ConvergenceClass::Unconditional) {
        if (!md.ordinary_sum) {
            throw Error(ErrorCode::MetadataMissing, "unconditional spec without a declared sum");
        }
        if (!(*md.ordinary_sum == target)) {
            throw Error(ErrorCode::TargetNotInLPR, "an unconditionally convergent series only reaches its sum " +
                                                      md.ordinary_sum->to_string(basis));
        }
        return LprWitness(spec, target, [] { return identity_schedule(); }, "identity", options);
    }
    throw Error(ErrorCode::Unsupported, "no witness family for " + spec.describe());
}

} // namespace sumrange
