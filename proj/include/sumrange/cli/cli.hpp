#pragma once

#include "sumrange/core/classification.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumrange::cli {

enum class Verb { Analyze, Construct, Verify, Enumerate };

struct CommandRequest {
    Verb verb = Verb::Analyze;
    ClassMode mode = ClassMode::TwoN;
    std::string spec_path;
    std::optional<std::string> target;
    std::optional<std::string> eps;
    std::optional<std::uint64_t> depth;
    std::optional<std::pair<std::string, std::string>> window;
    std::optional<int> coeff_bound;
    std::optional<std::string> out;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int spec_parse = 2;
inline constexpr int unsupported = 3;
inline constexpr int not_attainable = 4;
inline constexpr int internal = 70;
inline constexpr int usage = 64;
} // namespace exit_code

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws UsageError on bad flags or a verb/flag combination that the verb
/// does not accept.
CommandRequest parse_command_line(const std::vector<std::string>& args);
void check_compatibility(const CommandRequest& request);

/// Runs one request. Reports go to `out` (or the --out file), diagnostics
/// to `err`. Returns the process exit status.
int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

/// parse_command_line + run, with usage errors mapped to exit 64.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Drops runtime lines so reports can be compared byte for byte.
std::string canonicalize(const std::string& report);

} // namespace sumrange::cli
