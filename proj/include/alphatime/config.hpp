#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace alphatime {

/// Flat key = value configuration. Lines are `key = value` (or
/// `key value`), `#` starts a comment. Values are typed on read; lists
/// are comma-separated. Unknown keys are kept and echoed into reports so
/// a config file fully reproduces a run.
class ExperimentConfig {
public:
    ExperimentConfig() = default;

    static ExperimentConfig from_string(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;
    std::vector<std::string> get_string_list(
        const std::string& key, const std::vector<std::string>& fallback) const;

    /// Canonical serialization (sorted keys) used for hashing and echo.
    std::string canonical() const;
    /// FNV-1a 64-bit hash of the canonical form.
    std::uint64_t hash() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace alphatime
