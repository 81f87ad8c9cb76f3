#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "resiq/estimation.hpp"
#include "resiq/pointproc.hpp"
#include "resiq/resiliency.hpp"
#include "resiq/risk.hpp"

namespace resiq {

/// Shortest round-trip decimal rendering; identical input doubles always
/// produce identical bytes.
std::string format_double(double value);

/// Write via a temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Event-history CSV:
///   # horizon=<h>
///   # seed=<s>            (simulated histories only)
///   # provenance=simulated|observed
///   fail_time,repair_complete_time
///   <fail>,<repair>
std::string event_history_to_csv(const EventHistory& history);

struct ParsedEventLog {
    std::vector<double> fail_times;
    std::vector<double> repair_times; // empty when the column is absent
    std::optional<double> horizon;
    std::optional<std::uint64_t> seed;
    bool observed = false;
};

/// Parses the event-history CSV; the repair column is optional for
/// observed logs (instantaneous repair assumed when absent).
ParsedEventLog parse_event_log_csv(std::istream& in, const std::string& source_name);

/// Portfolio CSV with header `id,description,consequence,probability`.
/// Double-quoted fields may contain commas. Malformed rows raise
/// ConfigError carrying the row's line number.
RiskPortfolio parse_portfolio_csv(std::istream& in, bool normalized,
                                  const std::string& source_name);

/// Trajectory CSV with header `t,level,segment`.
std::string trajectory_to_csv(const PerformanceTrajectory& trajectory);

} // namespace resiq
