#pragma once

#include "sumrange/core/basis_value.hpp"
#include "sumrange/core/numeric.hpp"
#include "sumrange/core/schedule.hpp"
#include "sumrange/core/series_spec.hpp"

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace sumrange {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct VerificationReport {
    std::string subject;
    std::string check;
    std::uint64_t depth = 0;
    std::string measured;
    std::string tolerance;
    Verdict verdict = Verdict::Inconclusive;
    std::string detail;
    double runtime_ms = 0.0;

    /// One "key=value" record per line; the runtime line comes last.
    std::vector<std::string> lines() const;
};

struct SumPoint {
    std::uint64_t n = 0;
    BasisValue sum;
};

struct ApproxSumPoint {
    std::uint64_t n = 0;
    long double sum = 0.0L;
};

struct SimulateOptions {
    bool even_only = false;
    std::uint64_t max_depth = 50'000'000;
};

/// Resumable exact simulation; throws BijectionViolation on a repeated index.
class PartialSumSimulator {
public:
    PartialSumSimulator(SeriesSpec spec, PermutationSchedule schedule, SimulateOptions options = {});

    /// Consumes `count` more terms and returns the recorded points.
    std::vector<SumPoint> advance(std::uint64_t count);
    std::uint64_t n() const { return n_; }
    const BasisValue& sum() const { return sum_; }

private:
    SeriesSpec spec_;
    PermutationSchedule schedule_;
    SimulateOptions options_;
    std::unordered_set<Index> seen_;
    BasisValue sum_;
    std::uint64_t n_ = 0;
};

/// Compensated long double counterpart.
class ApproxPartialSumSimulator {
public:
    ApproxPartialSumSimulator(SeriesSpec spec, PermutationSchedule schedule, SimulateOptions options = {});

    std::vector<ApproxSumPoint> advance(std::uint64_t count);
    std::uint64_t n() const { return n_; }
    long double sum() const { return sum_.value(); }

private:
    SeriesSpec spec_;
    PermutationSchedule schedule_;
    SimulateOptions options_;
    std::unordered_set<Index> seen_;
    NeumaierSum sum_;
    std::uint64_t n_ = 0;
};

std::vector<SumPoint> simulate_partial_sums(const SeriesSpec& spec, PermutationSchedule schedule,
                                            std::uint64_t depth, SimulateOptions options = {});
std::vector<ApproxSumPoint> simulate_partial_sums_approx(const SeriesSpec& spec, PermutationSchedule schedule,
                                                         std::uint64_t depth, SimulateOptions options = {});

/// Pass iff |S_2n - target| < tol for every even 2n in the last quarter of
/// [1, depth]. tol = 0 asks for exact equality.
VerificationReport verify_2n_limit(const SeriesSpec& spec, PermutationSchedule schedule, const BasisValue& target,
                                   const Rational& tol, std::uint64_t depth);

/// Pass iff |S_n - target| < tol over the last quarter of [1, depth].
VerificationReport verify_limit(const SeriesSpec& spec, PermutationSchedule schedule, const BasisValue& target,
                                const Rational& tol, std::uint64_t depth);

struct BruteDelta {
    BasisValue delta;
    /// Candidates (data points and midpoints) attaining the minimum, sorted.
    std::vector<BasisValue> minimizers;
};

/// Evaluates sum |x - a| at every data point and midpoint. At most 14 values.
BruteDelta brute_force_delta(const Basis& basis, const std::vector<BasisValue>& values);

/// Every sum c_1 g_1 + ... with |c_i| <= bound (even coefficient sum when
/// asked) that lies in [lo, hi]. At most 4 generators, bound at most 8.
std::vector<BasisValue> brute_force_lattice(const Basis& basis, const std::vector<BasisValue>& generators,
                                            const BasisValue& lo, const BasisValue& hi, int bound,
                                            bool even_parity = true);

/// Pass iff the first `depth` emissions are distinct and cover
/// {1..claimed_prefix()}.
VerificationReport check_bijection_prefix(PermutationSchedule& schedule, std::uint64_t depth,
                                          std::string subject = "schedule");

} // namespace sumrange
