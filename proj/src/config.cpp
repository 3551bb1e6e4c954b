#include "czsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "czsim/errors.hpp"
#include "czsim/table.hpp"

namespace czsim {

namespace {

constexpr const char* kTransmonFields[] = {"freq_ghz", "anh_ghz", "levels"};
constexpr const char* kSlots[] = {"q1", "coupler", "q2"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool is_inline_device_key(const std::string& key) {
    return key.rfind("q1.", 0) == 0 || key.rfind("q2.", 0) == 0 || key.rfind("coupler.", 0) == 0 ||
           key == "g1c_ghz" || key == "g2c_ghz";
}

bool is_pulse_key(const std::string& key) {
    return key == "amp0_ghz" || key == "lambda1" || key == "lambda2" || key == "t_f_ns" ||
           key == "detuning_ghz";
}

double to_double(const std::string& key, const std::string& value, int line) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError("key '" + key + "' (line " + std::to_string(line) +
                              "): expected a number, got '" + value + "'",
                          key, line);
    }
    return out;
}

bool looks_like_file(const std::string& source) {
    std::ifstream f(source);
    return f.good();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'", path, 0);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

const std::vector<std::string>& KeyValueConfig::known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k{"device",    "g1c_ghz",     "g2c_ghz",       "pulse",
                                   "amp0_ghz",  "lambda1",     "lambda2",       "t_f_ns",
                                   "detuning_ghz", "dt_ns",    "sample_stride", "max_evals",
                                   "cost_tol",  "simplex_scale", "init_amp0_ghz", "init_lambda1",
                                   "init_lambda2", "mode",     "tg",            "detuning",
                                   "omega1",    "omega2",      "g",             "initial",
                                   "states",    "out"};
        for (const char* slot : kSlots) {
            for (const char* field : kTransmonFields) k.push_back(std::string(slot) + "." + field);
        }
        return k;
    }();
    return keys;
}

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
    KeyValueConfig cfg;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(std::string_view(raw).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'", body, line);
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line) + ": empty key or value", key, line);
        }
        if (cfg.has(key)) {
            throw ConfigError("duplicate key '" + key + "' on line " + std::to_string(line), key, line);
        }
        cfg.set(key, value, line);
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) { return parse(read_file(path)); }

void KeyValueConfig::set(const std::string& key, std::string value, int line) {
    const auto& known = known_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw ConfigError("unknown key '" + key + "'" +
                              (line > 0 ? " on line " + std::to_string(line) : std::string()),
                          key, line);
    }
    entries_[key] = Entry{std::move(value), line};
}

std::optional<std::string> KeyValueConfig::text(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
}

std::optional<double> KeyValueConfig::number(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return to_double(key, it->second.value, it->second.line);
}

std::optional<int> KeyValueConfig::integer(const std::string& key) const {
    const auto v = number(key);
    if (!v) return std::nullopt;
    if (*v != static_cast<double>(static_cast<int>(*v))) {
        throw ConfigError("key '" + key + "' (line " + std::to_string(line_of(key)) +
                              "): expected an integer",
                          key, line_of(key));
    }
    return static_cast<int>(*v);
}

int KeyValueConfig::line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

std::vector<double> parse_grid(std::string_view spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(trim(cur));
    const std::string key = "grid";
    if (parts.size() == 1) return {to_double(key, parts[0], 0)};
    if (parts.size() != 3) {
        throw ConfigError("grid '" + std::string(spec) + "' must be start:stop:count", key, 0);
    }
    const double a = to_double(key, parts[0], 0);
    const double b = to_double(key, parts[1], 0);
    const double nd = to_double(key, parts[2], 0);
    const int n = static_cast<int>(nd);
    if (n < 1 || nd != n) throw ConfigError("grid count must be a positive integer", key, 0);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return out;
}

DeviceParams device_from_config(const KeyValueConfig& cfg) {
    std::vector<std::string> inline_keys;
    for (const auto& [k, e] : cfg.entries()) {
        if (is_inline_device_key(k)) inline_keys.push_back(k);
    }
    if (cfg.has("device")) {
        if (!inline_keys.empty()) {
            const auto& k = inline_keys.front();
            throw ConfigError("key '" + k + "' (line " + std::to_string(cfg.line_of(k)) +
                                  "): device given both as 'device' and inline keys",
                              k, cfg.line_of(k));
        }
        return load_device(*cfg.text("device"));
    }
    if (inline_keys.empty()) {
        throw ConfigError("no device given (use --device or device keys)", "device", 0);
    }
    DeviceParams d;
    TransmonParams* modes[] = {&d.q1, &d.coupler, &d.q2};
    for (int s = 0; s < 3; ++s) {
        const std::string p = kSlots[s];
        for (const char* req : {"freq_ghz", "anh_ghz"}) {
            if (!cfg.has(p + "." + req)) {
                throw ConfigError("missing device key '" + p + "." + req + "'", p + "." + req, 0);
            }
        }
        modes[s]->frequency = *cfg.number(p + ".freq_ghz");
        modes[s]->anharmonicity = *cfg.number(p + ".anh_ghz");
        modes[s]->levels = cfg.integer(p + ".levels").value_or(4);
    }
    for (const char* req : {"g1c_ghz", "g2c_ghz"}) {
        if (!cfg.has(req)) throw ConfigError(std::string("missing device key '") + req + "'", req, 0);
    }
    d.g1c = *cfg.number("g1c_ghz");
    d.g2c = *cfg.number("g2c_ghz");
    try {
        d.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid device: ") + e.what(), "device", 0);
    }
    return d;
}

DeviceParams load_device(const std::string& source) {
    const auto names = device_preset_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) return device_preset(source);
    if (!looks_like_file(source)) {
        throw ConfigError("'" + source + "' is neither a device preset nor a readable file", "device", 0);
    }
    KeyValueConfig cfg = KeyValueConfig::load(source);
    for (const auto& [k, e] : cfg.entries()) {
        if (!is_inline_device_key(k)) {
            throw ConfigError("key '" + k + "' (line " + std::to_string(e.line) +
                                  ") is not a device key",
                              k, e.line);
        }
    }
    return device_from_config(cfg);
}

PulseParams pulse_from_config(const KeyValueConfig& cfg) {
    PulseParams p;
    bool have_base = false;
    if (cfg.has("pulse")) {
        p = load_pulse(*cfg.text("pulse"));
        have_base = true;
    }
    if (auto v = cfg.number("amp0_ghz")) p.amp0 = *v;
    if (auto v = cfg.number("lambda1")) p.lambda1 = *v;
    if (auto v = cfg.number("lambda2")) p.lambda2 = *v;
    if (auto v = cfg.number("t_f_ns")) p.t_f = *v;
    if (auto v = cfg.number("detuning_ghz")) p.detuning = *v;
    if (!have_base) {
        for (const char* req : {"amp0_ghz", "lambda1", "lambda2", "t_f_ns", "detuning_ghz"}) {
            if (!cfg.has(req)) {
                throw ConfigError(std::string("missing pulse key '") + req + "'", req, 0);
            }
        }
    }
    try {
        p.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid pulse: ") + e.what(), "pulse", 0);
    }
    return p;
}

PulseParams load_pulse(const std::string& source) {
    const auto names = pulse_preset_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) return pulse_preset(source);
    if (!looks_like_file(source)) {
        throw ConfigError("'" + source + "' is neither a pulse preset nor a readable file", "pulse", 0);
    }
    KeyValueConfig cfg = KeyValueConfig::load(source);
    for (const auto& [k, e] : cfg.entries()) {
        if (!is_pulse_key(k)) {
            throw ConfigError("key '" + k + "' (line " + std::to_string(e.line) +
                                  ") is not a pulse key",
                              k, e.line);
        }
    }
    return pulse_from_config(cfg);
}

EvolutionSettings evolution_from_config(const KeyValueConfig& cfg) {
    EvolutionSettings s;
    if (auto v = cfg.number("dt_ns")) s.dt = *v;
    if (auto v = cfg.integer("sample_stride")) s.sample_stride = *v;
    if (!(s.dt > 0.0)) throw ConfigError("dt_ns must be > 0", "dt_ns", cfg.line_of("dt_ns"));
    if (s.sample_stride < 1) {
        throw ConfigError("sample_stride must be >= 1", "sample_stride", cfg.line_of("sample_stride"));
    }
    return s;
}

OptimizeSettings optimize_from_config(const KeyValueConfig& cfg) {
    OptimizeSettings s;
    s.evolution = evolution_from_config(cfg);
    if (auto v = cfg.integer("max_evals")) s.max_evals = *v;
    if (auto v = cfg.number("cost_tol")) s.cost_tol = *v;
    if (auto v = cfg.number("simplex_scale")) s.simplex_scale = *v;
    const bool a = cfg.has("init_amp0_ghz");
    const bool l1 = cfg.has("init_lambda1");
    const bool l2 = cfg.has("init_lambda2");
    if (a || l1 || l2) {
        if (!(a && l1 && l2)) {
            throw ConfigError("init_amp0_ghz, init_lambda1 and init_lambda2 must be given together",
                              "init_amp0_ghz", 0);
        }
        s.initial = PulseShape{*cfg.number("init_amp0_ghz"), *cfg.number("init_lambda1"),
                               *cfg.number("init_lambda2")};
    }
    try {
        s.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid optimizer settings: ") + e.what(), "max_evals",
                          cfg.line_of("max_evals"));
    }
    return s;
}

std::vector<std::string> describe(const DeviceParams& d) {
    std::vector<std::string> out;
    const TransmonParams* modes[] = {&d.q1, &d.coupler, &d.q2};
    for (int s = 0; s < 3; ++s) {
        out.push_back(std::string(kSlots[s]) + ".freq_ghz = " + format_number(modes[s]->frequency));
        out.push_back(std::string(kSlots[s]) + ".anh_ghz = " + format_number(modes[s]->anharmonicity));
        out.push_back(std::string(kSlots[s]) + ".levels = " + std::to_string(modes[s]->levels));
    }
    out.push_back("g1c_ghz = " + format_number(d.g1c));
    out.push_back("g2c_ghz = " + format_number(d.g2c));
    return out;
}

std::vector<std::string> describe(const PulseParams& p) {
    std::vector<std::string> out{
        "amp0_ghz = " + format_number(p.amp0),     "lambda1 = " + format_number(p.lambda1),
        "lambda2 = " + format_number(p.lambda2),   "t_f_ns = " + format_number(p.t_f),
        "detuning_ghz = " + format_number(p.detuning)};
    if (p.drive_freq) out.push_back("drive_freq_ghz = " + format_number(*p.drive_freq));
    return out;
}

std::vector<std::string> describe(const EvolutionSettings& s) {
    return {"dt_ns = " + format_number(s.dt), "sample_stride = " + std::to_string(s.sample_stride)};
}

}  // namespace czsim
