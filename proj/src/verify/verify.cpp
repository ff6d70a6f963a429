#include "sumrange/verify/verify.hpp"

#include "sumrange/core/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace sumrange {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::vector<std::string> VerificationReport::lines() const {
    char rt[64];
    std::snprintf(rt, sizeof rt, "%.3f", runtime_ms);
    std::vector<std::string> out{
        "subject=" + subject,     "check=" + check,         "depth=" + std::to_string(depth),
        "measured=" + measured,   "tolerance=" + tolerance, "verdict=" + to_string(verdict),
    };
    if (!detail.empty()) {
        out.push_back("detail=" + detail);
    }
    out.push_back(std::string("runtime_ms=") + rt);
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string decimal(long double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6Lg", x);
    return buf;
}

// Rational deviations can sit far below the double range.
std::string decimal(const Basis& basis, const BasisValue& v) {
    if (!v.is_rational()) {
        return decimal(v.approx(basis));
    }
    mpf_class f(v.rational_part(), 128);
    char buf[96];
    gmp_snprintf(buf, sizeof buf, "%.6Fg", f.get_mpf_t());
    return buf;
}

void check_depth(std::uint64_t total, const SimulateOptions& o) {
    if (total > o.max_depth) {
        throw Error(ErrorCode::InvalidArgument, "depth exceeds the configured maximum " + std::to_string(o.max_depth));
    }
}

Index pull(PermutationSchedule& schedule, std::unordered_set<Index>& seen, std::uint64_t n) {
    Index k = schedule.next().index;
    if (!seen.insert(k).second) {
        throw Error(ErrorCode::BijectionViolation,
                    "index " + std::to_string(k) + " repeats at emission " + std::to_string(n));
    }
    return k;
}

} // namespace

PartialSumSimulator::PartialSumSimulator(SeriesSpec spec, PermutationSchedule schedule, SimulateOptions options)
    : spec_(std::move(spec)), schedule_(std::move(schedule)), options_(options) {}

std::vector<SumPoint> PartialSumSimulator::advance(std::uint64_t count) {
    check_depth(n_ + count, options_);
    std::vector<SumPoint> out;
    for (std::uint64_t i = 0; i < count; ++i) {
        ++n_;
        sum_ += spec_.term(pull(schedule_, seen_, n_));
        if (!options_.even_only || n_ % 2 == 0) {
            out.push_back({n_, sum_});
        }
    }
    return out;
}

ApproxPartialSumSimulator::ApproxPartialSumSimulator(SeriesSpec spec, PermutationSchedule schedule,
                                                     SimulateOptions options)
    : spec_(std::move(spec)), schedule_(std::move(schedule)), options_(options) {}

std::vector<ApproxSumPoint> ApproxPartialSumSimulator::advance(std::uint64_t count) {
    check_depth(n_ + count, options_);
    std::vector<ApproxSumPoint> out;
    for (std::uint64_t i = 0; i < count; ++i) {
        ++n_;
        sum_.add(spec_.approx(pull(schedule_, seen_, n_)));
        if (!options_.even_only || n_ % 2 == 0) {
            out.push_back({n_, sum_.value()});
        }
    }
    return out;
}

std::vector<SumPoint> simulate_partial_sums(const SeriesSpec& spec, PermutationSchedule schedule,
                                            std::uint64_t depth, SimulateOptions options) {
    PartialSumSimulator sim(spec, std::move(schedule), options);
    return sim.advance(depth);
}

std::vector<ApproxSumPoint> simulate_partial_sums_approx(const SeriesSpec& spec, PermutationSchedule schedule,
                                                         std::uint64_t depth, SimulateOptions options) {
    ApproxPartialSumSimulator sim(spec, std::move(schedule), options);
    return sim.advance(depth);
}

namespace {

VerificationReport limit_check(const SeriesSpec& spec, PermutationSchedule schedule, const BasisValue& target,
                               const Rational& tol, std::uint64_t depth, bool even, const char* name) {
    auto t0 = Clock::now();
    const Basis& basis = *spec.basis();
    VerificationReport r;
    r.subject = spec.describe() + " / " + schedule.name();
    r.check = name;
    r.depth = depth;
    r.tolerance = tol == 0 ? "exact" : format_rational(tol);
    if (tol < 0) {
        throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");
    }
    std::uint64_t from = depth - depth / 4;
    std::uint64_t checked = 0;
    bool ok = true;
    std::uint64_t first_bad = 0;
    long double worst = 0.0L;
    auto counts = [&](std::uint64_t n) { return n >= from && (!even || n % 2 == 0); };
    std::unordered_set<Index> seen;
    if (spec.preferred_summation() == SumTrack::Exact) {
        BasisValue sum;
        BasisValue worst_exact;
        BasisValue t(tol);
        for (std::uint64_t n = 1; n <= depth; ++n) {
            sum += spec.term(pull(schedule, seen, n));
            if (!counts(n)) {
                continue;
            }
            ++checked;
            BasisValue d = sum - target;
            BasisValue ad = abs(basis, d);
            if (less(basis, worst_exact, ad)) {
                worst_exact = std::move(ad);
            }
            bool good = tol == 0 ? d.is_zero() : less(basis, abs(basis, d), t);
            if (!good && ok) {
                ok = false;
                first_bad = n;
            }
        }
        r.measured = decimal(basis, worst_exact);
    } else {
        if (tol == 0) {
            throw Error(ErrorCode::PrecisionInsufficient, "exact comparison needs an exactly summable spec");
        }
        NeumaierSum sum;
        const long double t = to_long_double(tol);
        const long double b = target.approx(basis);
        for (std::uint64_t n = 1; n <= depth; ++n) {
            sum.add(spec.approx(pull(schedule, seen, n)));
            if (!counts(n)) {
                continue;
            }
            ++checked;
            long double d = std::fabs(sum.value() - b);
            worst = std::max(worst, d);
            if (!(d < t) && ok) {
                ok = false;
                first_bad = n;
            }
        }
        r.measured = decimal(worst);
    }
    if (checked == 0) {
        r.verdict = Verdict::Inconclusive;
        r.detail = "no partial sums in the window";
    } else {
        r.verdict = ok ? Verdict::Pass : Verdict::Fail;
        r.detail = ok ? "window=[" + std::to_string(from) + "," + std::to_string(depth) + "]"
                      : "first violation at n=" + std::to_string(first_bad);
    }
    r.runtime_ms = elapsed_ms(t0);
    return r;
}

} // namespace

VerificationReport verify_2n_limit(const SeriesSpec& spec, PermutationSchedule schedule, const BasisValue& target,
                                   const Rational& tol, std::uint64_t depth) {
    return limit_check(spec, std::move(schedule), target, tol, depth, true, "2n_limit");
}

VerificationReport verify_limit(const SeriesSpec& spec, PermutationSchedule schedule, const BasisValue& target,
                                const Rational& tol, std::uint64_t depth) {
    return limit_check(spec, std::move(schedule), target, tol, depth, false, "limit");
}

BruteDelta brute_force_delta(const Basis& basis, const std::vector<BasisValue>& values) {
    if (values.empty() || values.size() > 14) {
        throw Error(ErrorCode::InvalidArgument, "brute force delta takes 1 to 14 values");
    }
    std::vector<BasisValue> cand = values;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            cand.push_back((values[i] + values[j]) * Rational(1, 2));
        }
    }
    std::sort(cand.begin(), cand.end(), [&](const BasisValue& a, const BasisValue& b) { return less(basis, a, b); });
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::optional<BasisValue> best;
    std::vector<BasisValue> at;
    for (const BasisValue& a : cand) {
        BasisValue f;
        for (const BasisValue& x : values) {
            f += abs(basis, x - a);
        }
        if (!best || less(basis, f, *best)) {
            best = f;
            at = {a};
        } else if (f == *best) {
            at.push_back(a);
        }
    }
    return {*best, at};
}

std::vector<BasisValue> brute_force_lattice(const Basis& basis, const std::vector<BasisValue>& generators,
                                            const BasisValue& lo, const BasisValue& hi, int bound,
                                            bool even_parity) {
    if (generators.size() > 4 || bound < 0 || bound > 8) {
        throw Error(ErrorCode::InvalidArgument, "brute force lattice takes at most 4 generators and bound <= 8");
    }
    std::vector<int> c(generators.size(), -bound);
    std::unordered_set<BasisValue, BasisValueHash> hits;
    while (true) {
        int total = 0;
        BasisValue v;
        for (std::size_t i = 0; i < c.size(); ++i) {
            total += c[i];
            v += generators[i] * Rational(c[i]);
        }
        if ((!even_parity || total % 2 == 0) && !less(basis, v, lo) && !less(basis, hi, v)) {
            hits.insert(v);
        }
        std::size_t i = 0;
        while (i < c.size() && c[i] == bound) {
            c[i] = -bound;
            ++i;
        }
        if (i == c.size()) {
            break;
        }
        ++c[i];
    }
    std::vector<BasisValue> out(hits.begin(), hits.end());
    std::sort(out.begin(), out.end(), [&](const BasisValue& a, const BasisValue& b) { return less(basis, a, b); });
    return out;
}

VerificationReport check_bijection_prefix(PermutationSchedule& schedule, std::uint64_t depth, std::string subject) {
    auto t0 = Clock::now();
    VerificationReport r;
    r.subject = std::move(subject);
    r.check = "bijection_prefix";
    r.depth = depth;
    r.tolerance = "exact";
    std::unordered_set<Index> seen;
    seen.reserve(depth);
    r.verdict = Verdict::Pass;
    for (std::uint64_t n = 1; n <= depth; ++n) {
        Index k = schedule.next().index;
        if (k == 0 || !seen.insert(k).second) {
            r.verdict = Verdict::Fail;
            r.detail = "index " + std::to_string(k) + " repeats at emission " + std::to_string(n);
            r.measured = std::to_string(n);
            r.runtime_ms = elapsed_ms(t0);
            return r;
        }
    }
    Index claim = schedule.claimed_prefix();
    Index covered = 0;
    while (covered < depth && seen.count(covered + 1)) {
        ++covered;
    }
    r.measured = "covered=" + std::to_string(covered) + " claimed=" + std::to_string(claim);
    if (claim > covered) {
        r.verdict = Verdict::Fail;
        r.detail = "claimed prefix exceeds the indices seen";
    }
    r.runtime_ms = elapsed_ms(t0);
    return r;
}

} // namespace sumrange
