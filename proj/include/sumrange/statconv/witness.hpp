#pragma once

#include "sumrange/core/schedule.hpp"
#include "sumrange/core/series_spec.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sumrange {

struct WitnessOptions {
    /// Positions a single m_k search may inspect.
    Index scan_limit = 200'000'000;
};

struct WitnessCheck {
    std::size_t k = 0;
    Index m = 0;
    long double deviation = 0.0L;
    bool within = false;  // |S_{m_k} - b| < 2^-k
};

/// A permutation pi and positions m_1 < m_2 < ... with
/// sum_{j <= m_k} x_{pi(j)} -> target. Built witnesses pick the first
/// position past max(m_{k-1}, (k-1) m_{k-1}) with |S - b| < 2^{-k-10}.
class LprWitness {
public:
    using Factory = std::function<PermutationSchedule()>;
    using Positions = std::function<std::optional<Index>(std::size_t)>;

    /// m_k found lazily by scanning pi's partial sums.
    LprWitness(SeriesSpec spec, BasisValue target, Factory pi, std::string family, WitnessOptions options = {});

    /// Caller-provided m_k. The first `validate_upto` positions are checked:
    /// strictly increasing, and m_{k+1} >= 2 m_k for k >= k0. Throws
    /// GrowthViolation otherwise.
    static LprWitness user_supplied(SeriesSpec spec, BasisValue target, Factory pi, Positions m, std::size_t k0,
                                    std::size_t validate_upto = 20);

    const SeriesSpec& spec() const;
    const BasisValue& target() const;
    const std::string& family() const;
    /// A fresh copy of pi.
    PermutationSchedule schedule() const;
    /// m_k for k >= 1. Throws Exhausted when the search gives up.
    Index m(std::size_t k) const;
    bool growth_certified() const;
    std::size_t k0() const;

    /// Simulates pi and compares S_{m_k} with the target for k <= k_max.
    std::vector<WitnessCheck> validate(std::size_t k_max) const;

    struct State;

private:
    explicit LprWitness(std::shared_ptr<State> s) : state_(std::move(s)) {}
    std::shared_ptr<State> state_;
};

/// Witness for a target of the limit-point range. Handles conditionally
/// convergent classical families, power-of-ten dipoles, unconditionally
/// convergent specs (target = the sum) and SymmetricOrdered lattices.
LprWitness build_lpr_witness(const SeriesSpec& spec, const BasisValue& target, WitnessOptions options = {});

/// The dipole permutation: each -lambda (or +lambda for negative lag)
/// is held back until |lag| further dipoles have opened.
PermutationSchedule dipole_lag_schedule(std::int64_t lag);

} // namespace sumrange
