#include "eqs/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace eqs {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

} // namespace

Config Config::parse_text(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';')
            continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw DataError(origin + ":" + std::to_string(lineno) +
                                ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            cfg.sections_[section];
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw DataError(origin + ":" + std::to_string(lineno) +
                            ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = unquote(trim(t.substr(eq + 1)));
        if (key.empty())
            throw DataError(origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::optional<std::string> Config::get(const std::string& section,
                                       const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        double d = std::stod(*v, &used);
        if (used != v->size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw UsageError("config [" + section + "] " + key + ": not a number: " + *v);
    }
}

std::int64_t Config::get_int(const std::string& section, const std::string& key,
                             std::int64_t fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || p != v->data() + v->size())
        throw UsageError("config [" + section + "] " + key + ": not an integer: " + *v);
    return out;
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw UsageError("config [" + section + "] " + key + ": not a boolean: " + *v);
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
    std::vector<double> out;
    auto v = get(section, key);
    if (!v) return out;
    std::istringstream in(*v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError("config [" + section + "] " + key +
                             ": bad list element: " + item);
        }
    }
    return out;
}

std::int64_t Config::require_int(const std::string& section,
                                 const std::string& key) const {
    if (!has(section, key))
        throw UsageError("config [" + section + "] " + key +
                         " is required (no environment entropy is used)");
    return get_int(section, key, 0);
}

PreprocessConfig preprocess_config(const Config& c) {
    PreprocessConfig p;
    p.band_low_hz = c.get_double("preprocess", "band_low_hz", p.band_low_hz);
    p.band_high_hz = c.get_double("preprocess", "band_high_hz", p.band_high_hz);
    p.filter_order = static_cast<int>(c.get_int("preprocess", "filter_order", p.filter_order));
    p.decimate_to_hz = c.get_double("preprocess", "decimate_to_hz", p.decimate_to_hz);
    p.window_seconds = c.get_double("preprocess", "window_seconds", p.window_seconds);
    p.validate();
    return p;
}

DiscoveryConfig discovery_config(const Config& c) {
    DiscoveryConfig d;
    d.min_len = static_cast<std::size_t>(c.get_int("discovery", "min_len", 3));
    d.max_len = static_cast<std::size_t>(c.get_int("discovery", "max_len", 0));
    d.max_shapelets = static_cast<std::size_t>(c.get_int("discovery", "max_shapelets", 8));
    d.quality_threshold = c.get_double("discovery", "quality_threshold", 0.45);
    d.length_step = static_cast<std::size_t>(c.get_int("discovery", "length_step", 1));
    d.offset_step = static_cast<std::size_t>(c.get_int("discovery", "offset_step", 1));
    d.similarity_overlap_frac =
        c.get_double("discovery", "similarity_overlap_frac", 0.25);
    d.znormalize = c.get_bool("discovery", "znormalize", false);
    d.validate();
    return d;
}

ForestParams forest_params(const Config& c) {
    ForestParams f;
    f.n_trees = static_cast<std::size_t>(c.get_int("forest", "n_trees", 100));
    f.max_depth = static_cast<std::size_t>(c.get_int("forest", "max_depth", 0));
    f.min_leaf = static_cast<std::size_t>(c.get_int("forest", "min_leaf", 1));
    f.seed = static_cast<std::uint64_t>(c.require_int("forest", "seed"));
    f.decision_threshold = c.get_double("forest", "decision_threshold", 0.5);
    f.validate();
    return f;
}

SynthConfig synth_config(const Config& c) {
    SynthConfig s;
    s.duration_seconds = c.get_double("synth", "duration_seconds", s.duration_seconds);
    s.sample_rate_hz = c.get_double("synth", "sample_rate_hz", s.sample_rate_hz);
    s.noise_sigma = c.get_double("synth", "noise_sigma", s.noise_sigma);
    s.event_times = c.get_double_list("synth", "event_times");
    s.event_rate_per_hour =
        c.get_double("synth", "event_rate_per_hour", s.event_rate_per_hour);
    s.event_amplitude_lo = c.get_double("synth", "event_amplitude_lo", s.event_amplitude_lo);
    s.event_amplitude_hi = c.get_double("synth", "event_amplitude_hi", s.event_amplitude_hi);
    s.wavelet_dominant_hz = c.get_double("synth", "wavelet_dominant_hz", s.wavelet_dominant_hz);
    s.wavelet_decay_seconds =
        c.get_double("synth", "wavelet_decay_seconds", s.wavelet_decay_seconds);
    s.seed = static_cast<std::uint64_t>(c.require_int("synth", "seed"));
    s.validate();
    return s;
}

} // namespace eqs
