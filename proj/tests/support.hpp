#pragma once

#include "sumrange/core/series_spec.hpp"

#include <string>

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(SUMRANGE_FIXTURE_DIR) + "/" + name + ".json"; }

inline sumrange::SeriesSpec load(const std::string& name) { return sumrange::SeriesSpec::from_file(path(name)); }

inline sumrange::BasisValue value(const sumrange::SeriesSpec& spec, const std::string& text) {
    return sumrange::parse_value(*spec.basis(), text);
}

} // namespace fixtures
