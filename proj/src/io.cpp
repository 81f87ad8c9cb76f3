#include "resiq/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "resiq/error.hpp"

namespace resiq {

std::string format_double(double value)
{
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) throw std::runtime_error("failed to format double");
    return std::string(buffer, ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    const std::filesystem::path tmp = path.parent_path() / (".tmp." + path.filename().string());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        if (!out.flush()) {
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string event_history_to_csv(const EventHistory& history)
{
    std::ostringstream out;
    out << "# horizon=" << format_double(history.horizon()) << "\n";
    if (const auto* sim = std::get_if<SimulatedProvenance>(&history.provenance())) {
        out << "# seed=" << sim->seed << "\n";
        out << "# provenance=simulated\n";
    } else {
        out << "# provenance=observed\n";
    }
    out << "fail_time,repair_complete_time\n";
    for (const auto& e : history.events()) {
        out << format_double(e.fail_time) << "," << format_double(e.repair_complete_time)
            << "\n";
    }
    return out.str();
}

namespace {

double parse_number(const std::string& text, const std::string& source, int line,
                    const char* what)
{
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(source + ": expected a number for " + what + ", got '" + text + "'",
                          line);
    }
    return value;
}

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Splits one CSV record; double-quoted fields may contain commas and
// doubled quotes.
std::vector<std::string> split_csv_row(const std::string& line, const std::string& source,
                                       int line_no)
{
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (quoted) {
        throw ConfigError(source + ": unterminated quoted field", line_no);
    }
    fields.push_back(trim(current));
    return fields;
}

} // namespace

ParsedEventLog parse_event_log_csv(std::istream& in, const std::string& source_name)
{
    ParsedEventLog log;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    bool has_repair_column = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (text[0] == '#') {
            const std::string meta = trim(text.substr(1));
            const auto eq = meta.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = trim(meta.substr(0, eq));
            const std::string value = trim(meta.substr(eq + 1));
            if (key == "horizon") {
                log.horizon = parse_number(value, source_name, line_no, "horizon");
            } else if (key == "seed") {
                log.seed = static_cast<std::uint64_t>(
                    parse_number(value, source_name, line_no, "seed"));
            } else if (key == "provenance") {
                log.observed = value == "observed";
            }
            continue;
        }
        if (!header_seen) {
            if (text == "fail_time,repair_complete_time") {
                has_repair_column = true;
            } else if (text == "fail_time") {
                has_repair_column = false;
            } else {
                throw ConfigError(source_name +
                                      ": expected header 'fail_time[,repair_complete_time]'",
                                  line_no);
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_row(text, source_name, line_no);
        const std::size_t expected = has_repair_column ? 2 : 1;
        if (fields.size() != expected) {
            throw ConfigError(source_name + ": expected " + std::to_string(expected) +
                                  " columns, got " + std::to_string(fields.size()),
                              line_no);
        }
        log.fail_times.push_back(parse_number(fields[0], source_name, line_no, "fail_time"));
        if (has_repair_column) {
            log.repair_times.push_back(
                parse_number(fields[1], source_name, line_no, "repair_complete_time"));
        }
    }
    if (!header_seen) {
        throw ConfigError(source_name + ": missing event-log header", 0);
    }
    return log;
}

RiskPortfolio parse_portfolio_csv(std::istream& in, bool normalized,
                                  const std::string& source_name)
{
    std::vector<Scenario> scenarios;
    std::string line;
    int line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (!header_seen) {
            if (text != "id,description,consequence,probability") {
                throw ConfigError(
                    source_name + ": expected header 'id,description,consequence,probability'",
                    line_no);
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_row(text, source_name, line_no);
        if (fields.size() != 4) {
            throw ConfigError(source_name + ": expected 4 columns, got " +
                                  std::to_string(fields.size()),
                              line_no);
        }
        try {
            scenarios.emplace_back(fields[0], fields[1],
                                   parse_number(fields[2], source_name, line_no, "consequence"),
                                   parse_number(fields[3], source_name, line_no, "probability"));
        } catch (const std::invalid_argument& error) {
            throw ConfigError(source_name + ": " + error.what(), line_no);
        }
    }
    if (!header_seen) {
        throw ConfigError(source_name + ": missing portfolio header", 0);
    }
    try {
        return RiskPortfolio(std::move(scenarios), normalized);
    } catch (const std::invalid_argument& error) {
        throw ConfigError(source_name + ": " + error.what());
    }
}

std::string trajectory_to_csv(const PerformanceTrajectory& trajectory)
{
    std::ostringstream out;
    out << "t,level,segment\n";
    for (const auto& sample : trajectory.samples) {
        out << format_double(sample.t) << "," << format_double(sample.level) << ","
            << to_string(sample.segment) << "\n";
    }
    return out.str();
}

} // namespace resiq
