#pragma once

#include "sumrange/core/basis_value.hpp"

#include <string>
#include <vector>

namespace sumrange {

enum class SumRangeKind { Singleton, ShiftedLattice, AllReals };
enum class ClassMode { Ordinary, Statistical, TwoN };

struct SumRangeClassification {
    SumRangeKind kind = SumRangeKind::Singleton;
    ClassMode mode = ClassMode::TwoN;
    /// Singleton value, or the lattice offset.
    BasisValue offset;
    std::vector<BasisValue> generators;
    /// Lattice points need an even coefficient sum.
    bool parity_even = false;
    /// Recorded separation radius of the generators (0 when not applicable).
    Rational separation = 0;
    /// Rank of the generators over Q is at least two.
    bool dense = false;
    std::string case_tag;
    std::string certificate;

    /// First line is the headline, e.g.
    /// "ShiftedLattice offset=0 generators=[1] parity=even".
    std::vector<std::string> report_lines(const Basis& basis) const;
    std::string headline(const Basis& basis) const;
};

std::string to_string(SumRangeKind k);
std::string to_string(ClassMode m);

} // namespace sumrange
