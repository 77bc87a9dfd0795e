#include "trimatch/config.hpp"
#include "trimatch/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace trimatch {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
    throw InvalidConfiguration(std::string(key) + ": expected " + expected + ", got '" + std::string(value) + "'");
}

std::optional<double> to_double(std::string_view s) {
    if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> to_unsigned(std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig cfg;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        std::string_view s = text;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
        const auto key = trim(s.substr(0, eq));
        const auto value = trim(s.substr(eq + 1));
        if (key.empty()) throw ParseError(line, "empty key");
        if (!cfg.entries_.emplace(std::string(key), Entry{std::string(value), line}).second) {
            throw ParseError(line, "repeated key '" + std::string(key) + "'");
        }
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return parse(in);
}

const KeyValueConfig::Entry* KeyValueConfig::find(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    used_.insert(it->first);
    return &it->second;
}

bool KeyValueConfig::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    return e->value;
}

std::optional<double> KeyValueConfig::get_double(std::string_view key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    const auto v = to_double(e->value);
    if (!v) bad_value(key, e->value, "a number");
    return v;
}

std::optional<std::uint64_t> KeyValueConfig::get_unsigned(std::string_view key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    const auto v = to_unsigned(e->value);
    if (!v) bad_value(key, e->value, "a non-negative integer");
    return v;
}

std::optional<bool> KeyValueConfig::get_bool(std::string_view key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "0" || e->value == "no") return false;
    bad_value(key, e->value, "true or false");
}

std::optional<std::vector<std::string>> KeyValueConfig::get_list(std::string_view key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    std::vector<std::string> out;
    std::string_view rest = e->value;
    while (true) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        if (item.empty()) bad_value(key, e->value, "a comma-separated list");
        out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

std::optional<std::vector<double>> KeyValueConfig::get_double_list(std::string_view key) const {
    const auto items = get_list(key);
    if (!items) return std::nullopt;
    std::vector<double> out;
    for (const auto& s : *items) {
        const auto v = to_double(s);
        if (!v) bad_value(key, s, "a number");
        out.push_back(*v);
    }
    return out;
}

std::optional<std::vector<std::uint64_t>> KeyValueConfig::get_unsigned_list(std::string_view key) const {
    const auto items = get_list(key);
    if (!items) return std::nullopt;
    std::vector<std::uint64_t> out;
    for (const auto& s : *items) {
        const auto v = to_unsigned(s);
        if (!v) bad_value(key, s, "a non-negative integer");
        out.push_back(*v);
    }
    return out;
}

void KeyValueConfig::reject_unused() const {
    for (const auto& [key, entry] : entries_) {
        if (!used_.contains(key)) {
            throw InvalidConfiguration("line " + std::to_string(entry.line) + ": unknown key '" + key + "'");
        }
    }
}

SigmaSetting parse_sigma_setting(std::string_view text) {
    text = trim(text);
    if (text == "per-frame") return {SigmaMode::PerFrame, std::nullopt};
    if (text == "pooled") return {SigmaMode::Pooled, std::nullopt};
    constexpr std::string_view prefix = "fixed:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto v = to_double(trim(text.substr(prefix.size())));
        if (!v || !(*v > 0.0) || !std::isfinite(*v)) bad_value("sigma_mode", text, "a positive finite sigma");
        return {SigmaMode::Pooled, *v};
    }
    bad_value("sigma_mode", text, "per-frame, pooled or fixed:<sigma>");
}

TrackerConfig tracker_config_from(const KeyValueConfig& kv, TrackerConfig cfg) {
    if (const auto v = kv.get_unsigned("delta")) cfg.reduced.delta = static_cast<std::size_t>(*v);
    if (const auto v = kv.get("sigma_mode")) cfg.sigma = parse_sigma_setting(*v);
    if (const auto v = kv.get_double("sigma_floor")) cfg.sigma_floor = *v;
    if (const auto v = kv.get_double("fallback_sigma")) cfg.fallback_sigma = *v;
    if (const auto v = kv.get("lambda_event")) {
        if (trim(*v) == "auto") {
            cfg.lambda_event.reset();
        } else {
            cfg.lambda_event = kv.get_double("lambda_event");
        }
    }
    const auto quantile = kv.get_double("gate_quantile");
    const auto cost = kv.get_double("gate_cost");
    if (quantile && cost) throw InvalidConfiguration("gate_quantile and gate_cost are mutually exclusive");
    if (quantile) cfg.bipartite = BipartiteConfig::quantile(*quantile);
    if (cost) cfg.bipartite = BipartiteConfig::fixed(*cost);
    if (const auto v = kv.get_unsigned("space_cap")) cfg.space_cap = static_cast<std::size_t>(*v);
    if (const auto v = kv.get_bool("incremental")) cfg.dp.incremental = *v;
    if (const auto v = kv.get_unsigned("threads")) cfg.dp.threads = static_cast<unsigned>(*v);
    cfg.validate();
    return cfg;
}

SimConfig sim_config_from(const KeyValueConfig& kv, SimConfig cfg) {
    if (const auto v = kv.get_double("W")) cfg.region_width = *v;
    if (const auto v = kv.get_double("H")) cfg.region_height = *v;
    if (const auto v = kv.get_double("w")) cfg.window_width = *v;
    if (const auto v = kv.get_double("h")) cfg.window_height = *v;
    if (const auto v = kv.get_double("N0")) cfg.expected_visible = *v;
    if (const auto v = kv.get_double("sigma")) cfg.sigma = *v;
    if (const auto v = kv.get_unsigned("frames")) cfg.frames = static_cast<std::size_t>(*v);
    if (const auto v = kv.get_double("dt")) cfg.dt = *v;
    if (const auto v = kv.get_unsigned("seed")) cfg.seed = *v;
    cfg.validate();
    return cfg;
}

}  // namespace trimatch
