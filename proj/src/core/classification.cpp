#include "sumrange/core/classification.hpp"

namespace sumrange {

std::string to_string(SumRangeKind k) {
    switch (k) {
    case SumRangeKind::Singleton: return "Singleton";
    case SumRangeKind::ShiftedLattice: return "ShiftedLattice";
    case SumRangeKind::AllReals: return "AllReals";
    }
    return "?";
}

std::string to_string(ClassMode m) {
    switch (m) {
    case ClassMode::Ordinary: return "ordinary";
    case ClassMode::Statistical: return "stat";
    case ClassMode::TwoN: return "2n";
    }
    return "?";
}

std::string SumRangeClassification::headline(const Basis& basis) const {
    switch (kind) {
    case SumRangeKind::Singleton: return "Singleton value=" + offset.to_string(basis);
    case SumRangeKind::AllReals: return "AllReals";
    case SumRangeKind::ShiftedLattice: {
        std::string g;
        for (std::size_t i = 0; i < generators.size(); ++i) {
            g += (i ? "," : "") + generators[i].to_string(basis);
        }
        return "ShiftedLattice offset=" + offset.to_string(basis) + " generators=[" + g +
               "] parity=" + (parity_even ? "even" : "none");
    }
    }
    return "?";
}

std::vector<std::string> SumRangeClassification::report_lines(const Basis& basis) const {
    std::vector<std::string> out;
    out.push_back(headline(basis));
    out.push_back("mode=" + to_string(mode));
    if (!case_tag.empty()) {
        out.push_back("case=" + case_tag);
    }
    if (kind == SumRangeKind::ShiftedLattice) {
        out.push_back(std::string("dense=") + (dense ? "true" : "false"));
        out.push_back("separation=" + format_rational(separation));
    }
    if (!certificate.empty()) {
        out.push_back("certificate=" + certificate);
    }
    return out;
}

} // namespace sumrange
