#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace sqpd {

/// Canonical parameter keys. Units are part of the key name (_mev, _fs, _ev,
/// _rad) so files are unambiguous and bit-exactly reproducible.
struct ParamOverrides {
    std::map<std::string, double> values;

    /// Throws ConfigError for unknown keys or out-of-range values.
    void set(const std::string& key, double value);
    bool has(const std::string& key) const { return values.count(key) != 0; }

    static const std::vector<std::string>& known_keys();
    /// Error text for one key/value pair, empty if acceptable.
    static std::string check(const std::string& key, double value);
};

/// Parse a key = value config file, collecting every violation (unknown key,
/// missing unit suffix, bad number, out-of-range value) into one ConfigError.
ParamOverrides load_config_file(const std::string& path);

/// Apply overrides on top of defaults; t_end/dt_out are updated when present.
void apply_overrides(const ParamOverrides& o, SystemParams& p, double* t_end_fs,
                     double* dt_out_fs);

/// The resolved value for every known key (for the run manifest).
std::map<std::string, double> resolved_values(const SystemParams& p, double t_end_fs,
                                              double dt_out_fs);

}  // namespace sqpd
