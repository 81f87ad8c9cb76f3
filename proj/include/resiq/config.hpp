#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace resiq {

/// Key-value configuration with nested `[section]` tables and repeated
/// `[[event]]` blocks (a TOML subset: bare or quoted string values,
/// numbers, booleans, `#` comments). Values are kept as raw text and
/// converted on access so error messages can carry the source line.
class Config {
  public:
    struct Value {
        std::string raw;
        int line = -1;
    };

    using Table = std::map<std::string, Value>;

    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& source_name);

    /// Applies a `section.key=value` override (the CLI --set flag).
    void apply_override(const std::string& assignment);

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    std::optional<std::string> find_string(const std::string& section,
                                           const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    /// The repeated [[event]] blocks, in file order.
    const std::vector<Table>& events() const { return events_; }

    const std::string& source_name() const { return source_name_; }

  private:
    const Value* lookup(const std::string& section, const std::string& key) const;
    [[noreturn]] void missing(const std::string& section, const std::string& key) const;

    std::map<std::string, Table> sections_;
    std::vector<Table> events_;
    std::string source_name_ = "<none>";
};

} // namespace resiq
