#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "czsim/calibrate.hpp"
#include "czsim/device.hpp"
#include "czsim/propagator.hpp"
#include "czsim/pulse.hpp"

namespace czsim {

/// `key = value` text with `#` comments. Each value remembers its source line
/// (0 for values injected from command-line flags).
class KeyValueConfig {
public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    /// Throws ConfigError on malformed lines, duplicate or unknown keys.
    static KeyValueConfig parse(std::string_view text);
    static KeyValueConfig load(const std::string& path);

    /// Adds or replaces a value (command-line override). Unknown keys throw.
    void set(const std::string& key, std::string value, int line = 0);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    std::optional<std::string> text(const std::string& key) const;
    std::optional<double> number(const std::string& key) const;
    std::optional<int> integer(const std::string& key) const;
    int line_of(const std::string& key) const;

    const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

    static const std::vector<std::string>& known_keys();

private:
    std::map<std::string, Entry> entries_;
};

/// Inclusive, evenly spaced "start:stop:count" grid.
std::vector<double> parse_grid(std::string_view spec);

/// Device from either `device = <preset|file>` or the inline q1.* / coupler.* /
/// q2.* / g*c_ghz keys; both at once is an error.
DeviceParams device_from_config(const KeyValueConfig& cfg);
/// A preset name or a file containing only device keys.
DeviceParams load_device(const std::string& source);

/// `pulse = <preset|file>` as the base, individual pulse keys override it.
PulseParams pulse_from_config(const KeyValueConfig& cfg);
PulseParams load_pulse(const std::string& source);

EvolutionSettings evolution_from_config(const KeyValueConfig& cfg);
OptimizeSettings optimize_from_config(const KeyValueConfig& cfg);

/// Canonical key = value lines describing resolved parameters.
std::vector<std::string> describe(const DeviceParams& device);
std::vector<std::string> describe(const PulseParams& pulse);
std::vector<std::string> describe(const EvolutionSettings& settings);

}  // namespace czsim
