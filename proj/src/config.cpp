#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sqpd {

namespace {

struct KeyInfo {
    const char* key;
    bool integer;
};

const std::vector<KeyInfo>& key_table() {
    static const std::vector<KeyInfo> keys = {
        {"g_ab_mev", false},      {"g_bc_mev", false},    {"delta_g_bc_mev", false},
        {"g_ac_mev", false},      {"gamma_a_mev", false}, {"gamma_b_mev", false},
        {"gamma_c_mev", false},   {"epsilon_mev", false}, {"delta_a_mev", false},
        {"delta_b_mev", false},   {"delta_c_mev", false}, {"omega0_ev", false},
        {"squeeze_r", false},     {"squeeze_theta_rad", false},
        {"n_ph", true},           {"n_pl", true},         {"num_pn", true},
        {"t_end_fs", false},      {"dt_out_fs", false},
    };
    return keys;
}

const KeyInfo* find_key(const std::string& key) {
    for (const auto& k : key_table())
        if (key == k.key) return &k;
    return nullptr;
}

// base parameter names, used to diagnose a missing or wrong unit suffix
std::string suffix_hint(const std::string& key) {
    static const std::vector<std::pair<std::string, std::string>> bases = {
        {"g_ab", "g_ab_mev"},       {"g_bc", "g_bc_mev"},
        {"delta_g_bc", "delta_g_bc_mev"}, {"g_ac", "g_ac_mev"},
        {"gamma_a", "gamma_a_mev"}, {"gamma_b", "gamma_b_mev"},
        {"gamma_c", "gamma_c_mev"}, {"epsilon", "epsilon_mev"},
        {"delta_a", "delta_a_mev"}, {"delta_b", "delta_b_mev"},
        {"delta_c", "delta_c_mev"}, {"omega0", "omega0_ev"},
        {"t_end", "t_end_fs"},      {"dt_out", "dt_out_fs"},
        {"squeeze_theta", "squeeze_theta_rad"},
    };
    for (const auto& [base, canonical] : bases) {
        if (key == base || (key.rfind(base + "_", 0) == 0 && key != canonical))
            return canonical;
    }
    return {};
}

}  // namespace

const std::vector<std::string>& ParamOverrides::known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> v;
        for (const auto& k : key_table()) v.push_back(k.key);
        return v;
    }();
    return keys;
}

std::string ParamOverrides::check(const std::string& key, double value) {
    const KeyInfo* info = find_key(key);
    if (!info) {
        const std::string hint = suffix_hint(key);
        if (!hint.empty())
            return "unknown key '" + key + "' (unit suffix mismatch; use '" + hint + "')";
        return "unknown key '" + key + "'";
    }
    if (info->integer && value != std::floor(value))
        return "key '" + key + "' requires an integer value";
    auto bad = [&](const std::string& why) { return "key '" + key + "' " + why; };
    if ((key == "gamma_a_mev" || key == "gamma_b_mev" || key == "gamma_c_mev") && value < 0)
        return bad("must be >= 0");
    if ((key == "n_ph" || key == "n_pl") && value < 2) return bad("must be >= 2");
    if (key == "num_pn" && value != 1 && value != 2) return bad("must be 1 or 2");
    if (key == "squeeze_r" && value < 0) return bad("must be >= 0");
    if (key == "t_end_fs" && value <= 0) return bad("must be > 0");
    if (key == "dt_out_fs" && value <= 0) return bad("must be > 0");
    return {};
}

void ParamOverrides::set(const std::string& key, double value) {
    const std::string err = check(key, value);
    if (!err.empty()) throw ConfigError(err);
    values[key] = value;
}

ParamOverrides load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    ParamOverrides out;
    std::vector<std::string> errors;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        double value = 0.0;
        try {
            size_t used = 0;
            value = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            errors.push_back("line " + std::to_string(lineno) + ": bad number '" + val +
                             "' for key '" + key + "'");
            continue;
        }
        const std::string err = ParamOverrides::check(key, value);
        if (!err.empty())
            errors.push_back("line " + std::to_string(lineno) + ": " + err);
        else
            out.values[key] = value;
    }
    if (!errors.empty()) {
        std::ostringstream os;
        os << "config file " << path << " has " << errors.size() << " problem(s):";
        for (const auto& e : errors) os << "\n  - " << e;
        throw ConfigError(os.str());
    }
    return out;
}

void apply_overrides(const ParamOverrides& o, SystemParams& p, double* t_end_fs,
                     double* dt_out_fs) {
    for (const auto& [key, v] : o.values) {
        if (key == "g_ab_mev") p.g_ab = v;
        else if (key == "g_bc_mev") p.g_bc = v;
        else if (key == "delta_g_bc_mev") p.delta_g_bc = v;
        else if (key == "g_ac_mev") p.g_ac = v;
        else if (key == "gamma_a_mev") p.gamma_a = v;
        else if (key == "gamma_b_mev") p.gamma_b = v;
        else if (key == "gamma_c_mev") p.gamma_c = v;
        else if (key == "epsilon_mev") p.epsilon = v;
        else if (key == "delta_a_mev") p.delta_a = v;
        else if (key == "delta_b_mev") p.delta_b = v;
        else if (key == "delta_c_mev") p.delta_c = v;
        else if (key == "omega0_ev") p.omega0_ev = v;
        else if (key == "squeeze_r") p.squeeze.r = v;
        else if (key == "squeeze_theta_rad") p.squeeze.theta = v;
        else if (key == "n_ph") p.n_ph = static_cast<int>(v);
        else if (key == "n_pl") p.n_pl = static_cast<int>(v);
        else if (key == "num_pn") p.num_pn = static_cast<int>(v);
        else if (key == "t_end_fs") { if (t_end_fs) *t_end_fs = v; }
        else if (key == "dt_out_fs") { if (dt_out_fs) *dt_out_fs = v; }
    }
    p.validate();
}

std::map<std::string, double> resolved_values(const SystemParams& p, double t_end_fs,
                                              double dt_out_fs) {
    return {
        {"g_ab_mev", p.g_ab},       {"g_bc_mev", p.g_bc},
        {"delta_g_bc_mev", p.delta_g_bc}, {"g_ac_mev", p.g_ac},
        {"gamma_a_mev", p.gamma_a}, {"gamma_b_mev", p.gamma_b},
        {"gamma_c_mev", p.gamma_c}, {"epsilon_mev", p.epsilon},
        {"delta_a_mev", p.delta_a}, {"delta_b_mev", p.delta_b},
        {"delta_c_mev", p.delta_c}, {"omega0_ev", p.omega0_ev},
        {"squeeze_r", p.squeeze.r}, {"squeeze_theta_rad", p.squeeze.theta},
        {"n_ph", double(p.n_ph)},   {"n_pl", double(p.n_pl)},
        {"num_pn", double(p.num_pn)},
        {"t_end_fs", t_end_fs},     {"dt_out_fs", dt_out_fs},
    };
}

}  // namespace sqpd
