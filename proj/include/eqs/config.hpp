#ifndef EQS_CONFIG_HPP
#define EQS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqs/classifier.hpp"
#include "eqs/discovery.hpp"
#include "eqs/preprocess.hpp"
#include "eqs/synth.hpp"

namespace eqs {

// Plain-text key=value config with [section] headers and # comments.
// Values are scalars or comma-separated lists; bare and quoted strings
// both work, so flat TOML-style files parse as-is.
class Config {
public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text, const std::string& origin = "<text>");

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> get(const std::string& section, const std::string& key) const;

    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& section,
                                        const std::string& key) const;

    // Required variant: throws UsageError when the key is absent.
    std::int64_t require_int(const std::string& section, const std::string& key) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Per-stage readers; absent keys fall back to the documented defaults.
PreprocessConfig preprocess_config(const Config& c);
DiscoveryConfig discovery_config(const Config& c);
ForestParams forest_params(const Config& c);   // seed is mandatory
SynthConfig synth_config(const Config& c);     // seed is mandatory

} // namespace eqs

#endif
