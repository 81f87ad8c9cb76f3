#include "resiq/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "resiq/error.hpp"

namespace resiq {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Strips a trailing comment that is not inside a quoted value.
std::string strip_comment(const std::string& line)
{
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& value, const std::string& source, int line)
{
    if (value.size() >= 2 && value.front() == '"') {
        if (value.back() != '"') {
            throw ConfigError(source + ": unterminated string value", line);
        }
        return value.substr(1, value.size() - 2);
    }
    return value;
}

bool valid_key(const std::string& key)
{
    if (key.empty()) return false;
    for (char c : key) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    }
    return true;
}

} // namespace

Config Config::parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& source_name)
{
    Config config;
    config.source_name_ = source_name;

    std::istringstream in(text);
    std::string raw_line;
    int line_no = 0;
    Table* current = nullptr;
    std::string current_name;

    while (std::getline(in, raw_line)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw_line));
        if (line.empty()) continue;

        if (line.size() >= 4 && line.substr(0, 2) == "[[" &&
            line.substr(line.size() - 2) == "]]") {
            const std::string name = trim(line.substr(2, line.size() - 4));
            if (name != "event") {
                throw ConfigError(source_name + ": only [[event]] blocks may repeat, got [[" +
                                      name + "]]",
                                  line_no);
            }
            config.events_.emplace_back();
            current = &config.events_.back();
            current_name = name;
            continue;
        }
        if (line.front() == '[' && line.back() == ']') {
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!valid_key(name)) {
                throw ConfigError(source_name + ": invalid section name '" + name + "'",
                                  line_no);
            }
            current = &config.sections_[name];
            current_name = name;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source_name + ": expected 'key = value' or a [section] header",
                              line_no);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) {
            throw ConfigError(source_name + ": invalid key '" + key + "'", line_no);
        }
        if (value.empty()) {
            throw ConfigError(source_name + ": empty value for '" + key + "'", line_no);
        }
        if (current == nullptr) {
            throw ConfigError(source_name + ": key '" + key + "' appears before any [section]",
                              line_no);
        }
        (*current)[key] = Value{unquote(value, source_name, line_no), line_no};
    }
    return config;
}

void Config::apply_override(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    }
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos) {
        throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    }
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    if (!valid_key(section) || !valid_key(key)) {
        throw ConfigError("--set: invalid path '" + path + "'");
    }
    if (value.empty()) {
        throw ConfigError("--set: empty value for '" + path + "'");
    }
    sections_[section][key] = Value{unquote(value, "<override>", -1), -1};
}

bool Config::has(const std::string& section, const std::string& key) const
{
    return lookup(section, key) != nullptr;
}

bool Config::has_section(const std::string& section) const
{
    return sections_.count(section) != 0;
}

const Config::Value* Config::lookup(const std::string& section, const std::string& key) const
{
    const auto it = sections_.find(section);
    if (it == sections_.end()) return nullptr;
    const auto kit = it->second.find(key);
    if (kit == it->second.end()) return nullptr;
    return &kit->second;
}

void Config::missing(const std::string& section, const std::string& key) const
{
    throw ConfigError(source_name_ + ": missing required key " + section + "." + key);
}

std::optional<std::string> Config::find_string(const std::string& section,
                                               const std::string& key) const
{
    const Value* v = lookup(section, key);
    if (v == nullptr) return std::nullopt;
    return v->raw;
}

std::string Config::get_string(const std::string& section, const std::string& key) const
{
    const Value* v = lookup(section, key);
    if (v == nullptr) missing(section, key);
    return v->raw;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const
{
    const Value* v = lookup(section, key);
    return v == nullptr ? fallback : v->raw;
}

double Config::get_double(const std::string& section, const std::string& key) const
{
    const Value* v = lookup(section, key);
    if (v == nullptr) missing(section, key);
    double out = 0.0;
    const char* begin = v->raw.data();
    const char* end = begin + v->raw.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(source_name_ + ": expected a number for " + section + "." + key +
                              ", got '" + v->raw + "'",
                          v->line);
    }
    return out;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const
{
    return has(section, key) ? get_double(section, key) : fallback;
}

std::int64_t Config::get_int(const std::string& section, const std::string& key) const
{
    const Value* v = lookup(section, key);
    if (v == nullptr) missing(section, key);
    std::int64_t out = 0;
    const char* begin = v->raw.data();
    const char* end = begin + v->raw.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(source_name_ + ": expected an integer for " + section + "." + key +
                              ", got '" + v->raw + "'",
                          v->line);
    }
    return out;
}

std::int64_t Config::get_int(const std::string& section, const std::string& key,
                             std::int64_t fallback) const
{
    return has(section, key) ? get_int(section, key) : fallback;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const
{
    const Value* v = lookup(section, key);
    if (v == nullptr) return fallback;
    if (v->raw == "true") return true;
    if (v->raw == "false") return false;
    throw ConfigError(source_name_ + ": expected true/false for " + section + "." + key +
                          ", got '" + v->raw + "'",
                      v->line);
}

} // namespace resiq
