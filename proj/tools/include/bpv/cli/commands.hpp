#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bpv/cli/config.hpp"
#include "bpv/cli/csv.hpp"

namespace bpv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Data table plus command-specific entries for the metadata sidecar.
struct CommandResult {
    CsvTable table;
    nlohmann::json annotations = nlohmann::json::object();
};

/// Membership curve p,mu of one investor at deviation delta.
[[nodiscard]] CommandResult membership_command(const RunConfig& config, const std::string& investor,
                                               double delta, std::size_t points);

/// Average PPV over a deviation sweep, for one investor or all of them. Each
/// investor's regime bounds are merged into its grid.
[[nodiscard]] CommandResult avg_ppv_command(const RunConfig& config,
                                            const std::optional<std::string>& investor,
                                            const GridSpec& sweep);

/// Every stance threshold in the scanned behavioural regime.
[[nodiscard]] CommandResult threshold_command(const RunConfig& config,
                                              const std::optional<std::string>& investor);

/// Stance of every investor at a market price.
[[nodiscard]] CommandResult stance_command(const RunConfig& config, double price);

/// Price band(s) where `buyer` buys while `seller` sells.
[[nodiscard]] CommandResult coexist_command(const RunConfig& config, const std::string& buyer,
                                            const std::string& seller);

/// Hiroto sampling and the expected return-rate membership.
[[nodiscard]] CommandResult returns_command(const RunConfig& config, const std::string& investor,
                                            double delta, const ReturnsConfig& returns,
                                            bool with_scenarios);

/// FNV-1a 64-bit digest of the raw config bytes, as "fnv1a64:<16 hex digits>".
[[nodiscard]] std::string config_hash(std::string_view bytes);

/// Full command-line entry point. args[0] is the program name. Data goes to
/// `out` (or --out), diagnostics to `err`. Returns 0, 1 (validation) or 2
/// (numerical failure).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bpv::cli
