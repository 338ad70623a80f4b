#include "mkdvlab/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mkdvlab/io.hpp"

namespace mkdv::cfg {
namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

Config Config::parse(std::string_view text) {
    Config out;
    std::string section;  // top-level keys live in the unnamed section
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        std::string line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("config line " + std::to_string(lineno) +
                                 ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!out.sections_.count(section)) {
                out.section_order_.push_back(section);
                out.sections_[section] = {};
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        out.set(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string Config::serialize() const {
    std::ostringstream out;
    for (const std::string& name : section_order_) {
        const Section& s = sections_.at(name);
        if (!name.empty()) out << "[" << name << "]\n";
        for (const std::string& key : s.order) out << key << " = " << s.values.at(key) << "\n";
        out << "\n";
    }
    return out.str();
}

void Config::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    out << serialize();
}

const std::string* Config::find(const std::string& section, const std::string& key) const {
    const auto sit = sections_.find(section);
    if (sit == sections_.end()) return nullptr;
    const auto kit = sit->second.values.find(key);
    return kit == sit->second.values.end() ? nullptr : &kit->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    const std::string* v = find(section, key);
    if (!v) throw ParseError("missing config key [" + section + "] " + key);
    return *v;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    const std::string* v = find(section, key);
    return v ? *v : fallback;
}

double Config::get_number(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ParseError("config key [" + section + "] " + key + ": not a number: " + v);
    return x;
}

double Config::get_number(const std::string& section, const std::string& key,
                          double fallback) const {
    return has(section, key) ? get_number(section, key) : fallback;
}

long Config::get_integer(const std::string& section, const std::string& key,
                         long fallback) const {
    if (!has(section, key)) return fallback;
    const double x = get_number(section, key);
    return static_cast<long>(x);
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get_string(section, key);
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ParseError("config key [" + section + "] " + key + ": not a boolean: " + v);
}

std::vector<double> Config::get_numbers(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const double x = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ParseError("config key [" + section + "] " + key + ": bad list entry: " + item);
        out.push_back(x);
    }
    return out;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    if (!sections_.count(section)) {
        section_order_.push_back(section);
        sections_[section] = {};
    }
    Section& s = sections_[section];
    if (!s.values.count(key)) s.order.push_back(key);
    s.values[key] = value;
}

void Config::set_number(const std::string& section, const std::string& key, double value) {
    set(section, key, io::format_double(value));
}

void Config::set_integer(const std::string& section, const std::string& key, long value) {
    set(section, key, std::to_string(value));
}

void Config::set_bool(const std::string& section, const std::string& key, bool value) {
    set(section, key, value ? "true" : "false");
}

std::vector<std::string> Config::sections() const { return section_order_; }

std::vector<std::string> Config::keys(const std::string& section) const {
    const auto it = sections_.find(section);
    return it == sections_.end() ? std::vector<std::string>{} : it->second.order;
}

}  // namespace mkdv::cfg
