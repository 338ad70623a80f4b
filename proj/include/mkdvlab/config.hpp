#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mkdv::cfg {

// Flat key = value file with one level of [section] tables. Comments start
// with '#'. Serialization is deterministic (sections and keys in insertion
// order), so the resolved config written next to each run's outputs is
// byte-stable.
class Config {
  public:
    static Config parse(std::string_view text);
    static Config load(const std::filesystem::path& path);
    std::string serialize() const;
    void save(const std::filesystem::path& path) const;

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_number(const std::string& section, const std::string& key) const;
    double get_number(const std::string& section, const std::string& key, double fallback) const;
    long get_integer(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    // comma-separated numbers
    std::vector<double> get_numbers(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);
    void set_number(const std::string& section, const std::string& key, double value);
    void set_integer(const std::string& section, const std::string& key, long value);
    void set_bool(const std::string& section, const std::string& key, bool value);

    std::vector<std::string> sections() const;
    std::vector<std::string> keys(const std::string& section) const;

  private:
    struct Section {
        std::vector<std::string> order;
        std::map<std::string, std::string> values;
    };
    std::vector<std::string> section_order_;
    std::map<std::string, Section> sections_;

    const std::string* find(const std::string& section, const std::string& key) const;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mkdv::cfg
