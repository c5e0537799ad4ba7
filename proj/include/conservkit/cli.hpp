#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace conservkit::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kInputError = 2 };

struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json verdict = nlohmann::json::object();
    int exit_code = kSuccess;

    // Canonical serialization: sorted keys, rationals as "p/q" strings.
    std::string dump() const;
};

// Runs one subcommand. `args` excludes the program name. Human-readable
// output goes to `out`, diagnostics to `err`; with --report FILE the JSON
// report is also written (relative paths resolve under $CONSERVKIT_REPORT_DIR
// when set).
RunReport run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conservkit::cli
