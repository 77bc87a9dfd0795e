#pragma once

// `key = value` configuration files. '#' starts a comment; lists are
// comma-separated. Unknown keys are rejected so that typos surface.

#include "trimatch/simulator.hpp"
#include "trimatch/tripartite.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace trimatch {

class KeyValueConfig {
public:
    KeyValueConfig() = default;

    /// Throws ParseError on a line without '=' or a repeated key.
    static KeyValueConfig parse(std::istream& in);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool has(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;
    std::optional<double> get_double(std::string_view key) const;
    std::optional<std::uint64_t> get_unsigned(std::string_view key) const;
    std::optional<bool> get_bool(std::string_view key) const;
    std::optional<std::vector<std::string>> get_list(std::string_view key) const;
    std::optional<std::vector<double>> get_double_list(std::string_view key) const;
    std::optional<std::vector<std::uint64_t>> get_unsigned_list(std::string_view key) const;

    /// Throws InvalidConfiguration naming the first key that no getter asked for.
    void reject_unused() const;

private:
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };
    const Entry* find(std::string_view key) const;

    std::map<std::string, Entry, std::less<>> entries_;
    mutable std::set<std::string, std::less<>> used_;
};

/// "per-frame", "pooled", or "fixed:<sigma>".
SigmaSetting parse_sigma_setting(std::string_view text);

/// Keys: delta, sigma_mode, sigma_floor, fallback_sigma, lambda_event
/// (number or "auto"), gate_quantile, gate_cost (number or "inf"), space_cap,
/// incremental, threads. Absent keys keep the value from `base`.
TrackerConfig tracker_config_from(const KeyValueConfig& kv, TrackerConfig base = {});

/// Keys: W, H, w, h, N0, sigma, frames, dt, seed.
SimConfig sim_config_from(const KeyValueConfig& kv, SimConfig base = {});

}  // namespace trimatch
