#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wignerkin::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat sectioned key = value text; '#' and ';' start comments. Section
// headers are [name]; keys are addressed as "section.key".
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& dflt) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double dflt) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int dflt) const;
    std::uint64_t get_u64_or(const std::string& key, std::uint64_t dflt) const;
    bool get_bool_or(const std::string& key, bool dflt) const;
    std::vector<double> get_list_or(const std::string& key,
                                    const std::vector<double>& dflt) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace wignerkin::cli
