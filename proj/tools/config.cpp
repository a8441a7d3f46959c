#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wignerkin::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
    Config c;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": bad section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        c.kv_[section.empty() ? key : section + "." + key] = val;
    }
    return c;
}

std::string Config::get(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config key " + key + ": not a number: " + v);
    return x;
}

double Config::get_double_or(const std::string& key, double dflt) const {
    return has(key) ? get_double(key) : dflt;
}

int Config::get_int(const std::string& key) const {
    const double x = get_double(key);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x) throw ConfigError("config key " + key + ": not an integer");
    return i;
}

int Config::get_int_or(const std::string& key, int dflt) const {
    return has(key) ? get_int(key) : dflt;
}

std::uint64_t Config::get_u64_or(const std::string& key, std::uint64_t dflt) const {
    if (!has(key)) return dflt;
    return std::strtoull(get(key).c_str(), nullptr, 10);
}

bool Config::get_bool_or(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    const std::string v = get(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key " + key + ": not a boolean: " + v);
}

std::vector<double> Config::get_list_or(const std::string& key,
                                        const std::vector<double>& dflt) const {
    if (!has(key)) return dflt;
    std::vector<double> out;
    std::istringstream is(get(key));
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(std::strtod(tok.c_str(), nullptr));
    }
    if (out.empty()) throw ConfigError("config key " + key + ": empty list");
    return out;
}

}  // namespace wignerkin::cli
