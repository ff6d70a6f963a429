#pragma once

#include "sumrange/core/schedule.hpp"
#include "sumrange/core/series_spec.hpp"
#include "sumrange/twon/elements.hpp"

#include <string>
#include <vector>

namespace sumrange {

struct MembershipResult {
    bool member = false;
    /// One integer per generator with z = sum c_i g_i; empty when not a member.
    std::vector<Integer> coefficients;
    std::string detail;
};

/// Exact membership of z in { sum c_i g_i : c_i in Z } (with sum c_i even when
/// `even_parity`). Solved through a Hermite normal form of the generators'
/// basis coefficients, so no search bound is involved.
MembershipResult lattice_membership(const Basis& basis, const std::vector<BasisValue>& generators,
                                    const BasisValue& z, bool even_parity);

/// Rank over Q of the generators.
std::size_t lattice_rank(const Basis& basis, const std::vector<BasisValue>& generators);

/// Lattice points in [lo, hi] with |c_i| <= bound, sorted and deduplicated.
std::vector<BasisValue> lattice_enumerate(const Basis& basis, const std::vector<BasisValue>& generators,
                                          const BasisValue& lo, const BasisValue& hi, const Integer& bound,
                                          bool even_parity);

MembershipResult sr2_separated_membership(const ElementTable& table, const BasisValue& z);
std::vector<BasisValue> sr2_separated_enumerate(const ElementTable& table, const BasisValue& lo, const BasisValue& hi,
                                                const Integer& coeff_bound);

/// Prefix of |c_i| copies of sign(c_i) g_i taken from a SymmetricOrdered
/// spec, then every other term in (x, -x) pairs. Generators must be elements
/// of infinite order (up to sign).
PermutationSchedule separated_schedule(const SeriesSpec& spec, const std::vector<BasisValue>& generators,
                                       const std::vector<Integer>& coefficients);

/// Checks the certificate (even sum, exact value) and builds the schedule.
/// S_{2n} equals z from the end of the prefix on.
PermutationSchedule construct_separated_target(const ElementTable& table, const SeriesSpec& spec,
                                               const BasisValue& z, const std::vector<Integer>& certificate);

} // namespace sumrange
