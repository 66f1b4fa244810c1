#include "pdeiss/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pdeiss/errors.hpp"

namespace pdeiss::harness {

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
    bool used = false;
};

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

class RawConfig {
public:
    explicit RawConfig(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string stripped = trim(line);
            if (stripped.empty() || stripped[0] == '#') continue;
            const std::size_t eq = stripped.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(lineno) +
                                      ": expected 'key = value', got '" + stripped + "'",
                                  stripped, lineno);
            }
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty() || value.empty()) {
                throw ConfigError("line " + std::to_string(lineno) + ": empty key or value",
                                  key, lineno);
            }
            entries_[key] = RawEntry{value, lineno, false};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const std::string* get(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        it->second.used = true;
        return &it->second.value;
    }

    int line_of(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    std::string require(const std::string& key) {
        const std::string* v = get(key);
        if (v == nullptr) {
            throw ConfigError("missing required key '" + key + "'", key, 0);
        }
        return *v;
    }

    void fail(const std::string& key, const std::string& message) const {
        throw ConfigError("key '" + key + "' (line " + std::to_string(line_of(key)) +
                              "): " + message,
                          key, line_of(key));
    }

    void check_all_used() const {
        for (const auto& [key, entry] : entries_) {
            if (!entry.used) {
                throw ConfigError("unknown key '" + key + "' (line " +
                                      std::to_string(entry.line) + ")",
                                  key, entry.line);
            }
        }
    }

private:
    std::map<std::string, RawEntry> entries_;
};

double parse_double(RawConfig& raw, const std::string& key, double fallback) {
    const std::string* v = raw.get(key);
    if (v == nullptr) return fallback;
    try {
        std::size_t pos = 0;
        const double x = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        raw.fail(key, "not a number: '" + *v + "'");
    }
    return fallback;
}

long parse_int(RawConfig& raw, const std::string& key, long fallback) {
    const std::string* v = raw.get(key);
    if (v == nullptr) return fallback;
    try {
        std::size_t pos = 0;
        const long x = std::stol(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        raw.fail(key, "not an integer: '" + *v + "'");
    }
    return fallback;
}

SystemKind parse_system(RawConfig& raw) {
    const std::string v = raw.require("system");
    if (v == "burgers") return SystemKind::burgers;
    if (v == "burgers_split_a") return SystemKind::burgers_split_a;
    if (v == "burgers_split_b") return SystemKind::burgers_split_b;
    if (v == "reaction_diffusion_closed_loop")
        return SystemKind::reaction_diffusion_closed_loop;
    if (v == "reaction_diffusion_open_loop")
        return SystemKind::reaction_diffusion_open_loop;
    if (v == "target_split") return SystemKind::target_split;
    raw.fail("system", "unknown system '" + v + "'");
    return SystemKind::burgers;
}

bool is_reaction_diffusion(SystemKind s) {
    return s == SystemKind::reaction_diffusion_closed_loop ||
           s == SystemKind::reaction_diffusion_open_loop || s == SystemKind::target_split;
}

InitialConditionSpec parse_initial(RawConfig& raw, SystemKind system) {
    const std::string* fam = raw.get("initial.family");
    const double amp = parse_double(raw, "initial.amplitude", 1.0);
    if (fam == nullptr) return InitialConditionSpec::zero();
    if (*fam == "zero") return InitialConditionSpec::zero();
    if (*fam == "bump") return InitialConditionSpec::bump(amp);
    if (*fam == "sine_cubed") return InitialConditionSpec::sine_cubed(amp);
    if (*fam == "quartic_bump") return InitialConditionSpec::quartic_bump(amp);
    if (*fam == "compatible_bump") {
        if (system != SystemKind::reaction_diffusion_closed_loop) {
            raw.fail("initial.family",
                     "compatible_bump is only valid for reaction_diffusion_closed_loop");
        }
        return InitialConditionSpec::compatible_bump(amp);
    }
    raw.fail("initial.family", "unknown family '" + *fam + "'");
    return InitialConditionSpec::zero();
}

SignalSpec parse_disturbance(RawConfig& raw, std::uint64_t seed) {
    const std::string* fam = raw.get("disturbance.family");
    const double amp = parse_double(raw, "disturbance.amplitude", 1.0);
    const double omega = parse_double(raw, "disturbance.omega", 1.0);
    const long terms = parse_int(raw, "disturbance.terms", 5);
    if (fam == nullptr || *fam == "zero") return SignalSpec::zero();
    if (*fam == "ramped_cosine") return SignalSpec::ramped_cosine(amp, omega);
    if (*fam == "smooth_step") return SignalSpec::smooth_step(amp);
    if (*fam == "fourier_random") {
        return SignalSpec::fourier_random(amp, omega, static_cast<int>(terms), seed);
    }
    raw.fail("disturbance.family", "unknown family '" + *fam + "'");
    return SignalSpec::zero();
}

ForcingSpec parse_forcing(RawConfig& raw, std::uint64_t seed) {
    const std::string* fam = raw.get("forcing.family");
    const double amp = parse_double(raw, "forcing.amplitude", 1.0);
    const double omega = parse_double(raw, "forcing.omega", 1.0);
    const long mode = parse_int(raw, "forcing.mode", 1);
    const long terms = parse_int(raw, "forcing.terms", 5);
    const std::string* shape_s = raw.get("forcing.shape");
    const std::string* profile_s = raw.get("forcing.profile");
    if (fam == nullptr || *fam == "zero") return ForcingSpec::zero();

    ForcingShape shape = ForcingShape::sine;
    if (shape_s != nullptr) {
        if (*shape_s == "sine") shape = ForcingShape::sine;
        else if (*shape_s == "bump3") shape = ForcingShape::bump3;
        else raw.fail("forcing.shape", "unknown shape '" + *shape_s + "'");
    }
    ForcingProfile profile = ForcingProfile::sin_squared;
    if (profile_s != nullptr) {
        if (*profile_s == "sin_squared") profile = ForcingProfile::sin_squared;
        else if (*profile_s == "exp_saturating") profile = ForcingProfile::exp_saturating;
        else raw.fail("forcing.profile", "unknown profile '" + *profile_s + "'");
    }
    if (*fam == "separable") {
        if (mode < 1) raw.fail("forcing.mode", "mode must be >= 1");
        return ForcingSpec::separable(amp, shape, static_cast<int>(mode), profile, omega);
    }
    if (*fam == "fourier_random") {
        return ForcingSpec::fourier_random(amp, omega, static_cast<int>(terms), seed);
    }
    raw.fail("forcing.family", "unknown family '" + *fam + "'");
    return ForcingSpec::zero();
}

const std::set<std::string> kKnownChecks = {"theorem1", "theorem2", "lemma4", "lemma5",
                                            "lemma6",   "lemma7",   "prop2",  "lyapunov"};

}  // namespace

std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::burgers: return "burgers";
        case SystemKind::burgers_split_a: return "burgers_split_a";
        case SystemKind::burgers_split_b: return "burgers_split_b";
        case SystemKind::reaction_diffusion_closed_loop:
            return "reaction_diffusion_closed_loop";
        case SystemKind::reaction_diffusion_open_loop:
            return "reaction_diffusion_open_loop";
        case SystemKind::target_split: return "target_split";
    }
    return "?";
}

bool check_applies(const std::string& check, SystemKind system) {
    if (check == "theorem1" || check == "theorem2") return system == SystemKind::burgers;
    if (check == "lemma4" || check == "lemma5")
        return system == SystemKind::burgers_split_a;
    if (check == "lemma6" || check == "lemma7")
        return system == SystemKind::burgers_split_b;
    if (check == "prop2") return system == SystemKind::reaction_diffusion_closed_loop;
    if (check == "lyapunov") return system == SystemKind::target_split;
    return false;
}

ScenarioConfig parse_config(const std::string& text) {
    RawConfig raw(text);
    ScenarioConfig cfg;
    cfg.system = parse_system(raw);

    const std::string mu_s = raw.require("params.mu");
    const std::string nu_s = raw.require("params.nu");
    (void)mu_s;
    (void)nu_s;
    cfg.mu = parse_double(raw, "params.mu", 0.0);
    cfg.nu = parse_double(raw, "params.nu", 0.0);
    if (!(cfg.mu > 0.0)) raw.fail("params.mu", "must be > 0");
    if (!(cfg.nu > 0.0)) raw.fail("params.nu", "must be > 0");

    if (raw.has("params.a0") || raw.has("params.a1")) {
        if (!is_reaction_diffusion(cfg.system)) {
            raw.fail(raw.has("params.a0") ? "params.a0" : "params.a1",
                     "reaction coefficient applies to reaction-diffusion systems only");
        }
        cfg.a.a0 = parse_double(raw, "params.a0", 0.0);
        cfg.a.a1 = parse_double(raw, "params.a1", 0.0);
    }

    const long n = parse_int(raw, "grid.n_nodes", 401);
    if (n < 3) raw.fail("grid.n_nodes", "must be >= 3");
    cfg.n_nodes = static_cast<int>(n);
    cfg.dt = parse_double(raw, "time.dt", 2.5e-5);
    if (!(cfg.dt > 0.0)) raw.fail("time.dt", "must be > 0");
    cfg.t_end = parse_double(raw, "time.t_end", 2.0);
    if (!(cfg.t_end > 0.0)) raw.fail("time.t_end", "must be > 0");
    const long stride = parse_int(raw, "output.stride", 1);
    if (stride < 1) raw.fail("output.stride", "must be >= 1");
    cfg.output_stride = static_cast<int>(stride);

    const long seed = parse_int(raw, "seed", 1);
    if (seed < 0) raw.fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);

    cfg.u0 = parse_initial(raw, cfg.system);
    cfg.d = parse_disturbance(raw, cfg.seed);
    cfg.f = parse_forcing(raw, cfg.seed + 1);

    cfg.eps = parse_double(raw, "eps", 0.5 * cfg.mu);
    if (!(cfg.eps > 0.0) || !(cfg.eps < cfg.mu)) raw.fail("eps", "must lie in (0, mu)");

    cfg.tol_bounds = parse_double(raw, "tol.bounds", 1e-4);
    if (!(cfg.tol_bounds >= 0.0)) raw.fail("tol.bounds", "must be >= 0");
    cfg.tol_algebraic = parse_double(raw, "tol.algebraic", 1e-10);
    if (!(cfg.tol_algebraic >= 0.0)) raw.fail("tol.algebraic", "must be >= 0");

    if (const std::string* checks_s = raw.get("checks")) {
        std::stringstream ss(*checks_s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string check = trim(item);
            if (check.empty()) continue;
            if (kKnownChecks.count(check) == 0) {
                raw.fail("checks", "unknown check '" + check + "'");
            }
            if (!check_applies(check, cfg.system)) {
                raw.fail("checks", "check '" + check + "' does not apply to system '" +
                                       to_string(cfg.system) + "'");
            }
            cfg.checks.push_back(check);
        }
    }

    raw.check_all_used();
    return cfg;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string(), path.string(), 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace pdeiss::harness
