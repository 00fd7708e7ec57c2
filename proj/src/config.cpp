#include "alphatime/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace alphatime {

namespace {
std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        std::string key, value;
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            key = trim(line.substr(0, eq));
            value = trim(line.substr(eq + 1));
        } else {
            const auto sp = line.find_first_of(" \t");
            if (sp == std::string::npos)
                throw std::invalid_argument("config line " +
                                            std::to_string(line_no) +
                                            ": expected `key = value`");
            key = trim(line.substr(0, sp));
            value = trim(line.substr(sp + 1));
        }
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": empty key");
        cfg.set(key, value);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    kv_[key] = value;
}

bool ExperimentConfig::has(const std::string& key) const {
    return kv_.count(key) > 0;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key,
                                    double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size())
        throw std::invalid_argument("config: key `" + key +
                                    "` is not a number: " + it->second);
    return v;
}

std::int64_t ExperimentConfig::get_int(const std::string& key,
                                       std::int64_t fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::size_t used = 0;
    // scientific notation (1e6) is common for sample counts
    const double v = std::stod(it->second, &used);
    if (used != it->second.size() || v != static_cast<double>(static_cast<std::int64_t>(v)))
        throw std::invalid_argument("config: key `" + key +
                                    "` is not an integer: " + it->second);
    return static_cast<std::int64_t>(v);
}

bool ExperimentConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes")
        return true;
    if (it->second == "false" || it->second == "0" || it->second == "no")
        return false;
    throw std::invalid_argument("config: key `" + key +
                                "` is not a boolean: " + it->second);
}

std::vector<double> ExperimentConfig::get_list(
    const std::string& key, const std::vector<double>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty())
        throw std::invalid_argument("config: key `" + key + "` is an empty list");
    return out;
}

std::vector<std::string> ExperimentConfig::get_string_list(
    const std::string& key, const std::vector<std::string>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<std::string> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty())
        throw std::invalid_argument("config: key `" + key + "` is an empty list");
    return out;
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream out;
    for (const auto& [k, v] : kv_) out << k << "=" << v << "\n";
    return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char ch : canonical()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace alphatime
