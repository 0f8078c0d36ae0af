// vlcsee - energy-efficient artificial-noise design for VLC physical-layer security
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vlcsee/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace vlcsee {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

Real parse_real(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const Real x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

// value lists come either as "a,b,c" or as an inclusive ramp "start:stop:step"
std::vector<Real> parse_values(const std::string& key, const std::string& v) {
    std::vector<Real> out;
    if (v.find(':') != std::string::npos) {
        const auto parts = split(v, ':');
        if (parts.size() != 3) throw ConfigError("key '" + key + "': ramp must be start:stop:step");
        const Real a = parse_real(key, parts[0]);
        const Real b = parse_real(key, parts[1]);
        const Real step = parse_real(key, parts[2]);
        if (!(step > 0) || b < a) throw ConfigError("key '" + key + "': bad ramp bounds");
        const int n = static_cast<int>(std::floor((b - a) / step + 1e-9));
        for (int i = 0; i <= n; ++i) out.push_back(a + i * step);
        return out;
    }
    for (const auto& item : split(v, ','))
        if (!item.empty()) out.push_back(parse_real(key, item));
    if (out.empty()) throw ConfigError("key '" + key + "': empty value list");
    return out;
}

SchemeKind parse_scheme(const std::string& v) {
    if (v == "fixed_siso") return SchemeKind::FixedSiso;
    if (v == "selective_siso") return SchemeKind::SelectiveSiso;
    if (v == "miso") return SchemeKind::Miso;
    throw ConfigError("unknown scheme '" + v + "'");
}

DesignKind parse_design(const std::string& v) {
    if (v == "general") return DesignKind::General;
    if (v == "zf") return DesignKind::ZeroForcing;
    if (v == "noan") return DesignKind::NoAn;
    throw ConfigError("unknown design '" + v + "'");
}

}  // namespace

ConfigFile ConfigFile::defaults() {
    ConfigFile c;
    c.room = default_room(30.0);
    c.design.delta_b = 1.0;  // 0 dB
    c.design.rho = 0.2;
    c.design.eps_dinkelbach = 1e-3;
    c.design.eps_ccp = 1e-3;
    c.maxmin.eps_bisect = 1e-3;
    c.maxmin.eps_ccp = 1e-3;
    for (Real p = 26; p <= 44 + 1e-9; p += 2) c.p_t_dbm_values.push_back(p);
    for (int i = 0; i <= 20; ++i) c.rho_values.push_back(0.05 * i);
    c.k_values = {1, 2, 3, 4, 5};
    c.feas_p_t_dbm = {30, 35, 40};
    c.schemes = {SchemeKind::SelectiveSiso, SchemeKind::FixedSiso, SchemeKind::Miso};
    c.designs = {DesignKind::General, DesignKind::ZeroForcing, DesignKind::NoAn};
    return c;
}

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile c = defaults();
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, val).second)
            throw ConfigError("duplicate key '" + key + "'");
    }

    auto take = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        return &it->second;
    };
    auto real_at = [&](const char* key, Real& dst) {
        if (const auto* v = take(key)) dst = parse_real(key, *v);
    };
    auto int_at = [&](const char* key, int& dst) {
        if (const auto* v = take(key)) dst = static_cast<int>(parse_int(key, *v));
    };

    real_at("length", c.room.length_m);
    real_at("width", c.room.width_m);
    real_at("height", c.room.height_m);
    real_at("receiver_height", c.room.receiver_height_m);
    if (const auto* v = take("luminaire_positions")) {
        c.room.luminaires.clear();
        for (const auto& pair : split(*v, ';')) {
            const auto xy = split(pair, ',');
            if (xy.size() != 2) throw ConfigError("luminaire_positions: expected x,y pairs");
            c.room.luminaires.emplace_back(parse_real("luminaire_positions", xy[0]),
                                           parse_real("luminaire_positions", xy[1]), c.room.height_m);
        }
    }
    // positions default to the ceiling even when only the height changed
    for (auto& p : c.room.luminaires) p.z() = c.room.height_m;

    real_at("i_min", c.room.i_min_a);
    if (const auto* v = take("i_max")) {
        if (*v == "auto") {
            c.i_max_auto = true;
        } else {
            c.i_max_auto = false;
            c.room.i_max_a = parse_real("i_max", *v);
        }
    }

    real_at("active_area_ar", c.room.optical.active_area_m2);
    real_at("semi_angle_half", c.room.optical.semi_angle_half_deg);
    real_at("fov_psi", c.room.optical.fov_deg);
    real_at("filter_gain_ts", c.room.optical.filter_gain);
    real_at("refractive_index_kappa", c.room.optical.refractive_index);
    real_at("responsivity_gamma", c.room.optical.responsivity_a_per_w);
    real_at("conversion_eta", c.room.optical.conversion_w_per_a);
    real_at("bandwidth_bmod", c.room.optical.bandwidth_hz);
    real_at("ambient_photocurrent_chi", c.room.optical.ambient_photocurrent);
    real_at("preamp_density_iamp", c.room.optical.preamp_density);

    real_at("p_circuit", c.room.power.circuit_w);
    real_at("u_leds", c.room.power.led_voltage_v);
    real_at("zeta", c.room.power.zeta);

    real_at("delta_b_db", c.delta_b_db);
    c.design.delta_b = db_to_linear(c.delta_b_db);
    real_at("rho", c.design.rho);
    real_at("eps_dinkelbach", c.design.eps_dinkelbach);
    real_at("eps_ccp", c.design.eps_ccp);
    real_at("eps_bisect", c.maxmin.eps_bisect);
    c.maxmin.eps_ccp = c.design.eps_ccp;
    int_at("max_iter_dinkelbach", c.design.max_iter_dinkelbach);
    int_at("max_iter_ccp", c.design.max_iter_ccp);
    c.maxmin.max_iter_ccp = c.design.max_iter_ccp;

    if (const auto* v = take("p_t_dbm_values")) c.p_t_dbm_values = parse_values("p_t_dbm_values", *v);
    if (const auto* v = take("rho_values")) c.rho_values = parse_values("rho_values", *v);
    if (const auto* v = take("k_values")) c.k_values = parse_values("k_values", *v);
    if (const auto* v = take("feas_p_t_dbm")) c.feas_p_t_dbm = parse_values("feas_p_t_dbm", *v);
    real_at("p_t_dbm", c.p_t_dbm);
    real_at("eves_p_t_dbm", c.eves_p_t_dbm);
    int_at("k_eves", c.k_eves);
    int_at("n_realizations", c.n_realizations);
    if (const auto* v = take("rng_seed")) c.rng_seed = static_cast<uint64_t>(parse_int("rng_seed", *v));
    int_at("threads", c.threads);

    if (const auto* v = take("schemes")) {
        c.schemes.clear();
        for (const auto& s : split(*v, ',')) c.schemes.push_back(parse_scheme(s));
    }
    if (const auto* v = take("designs")) {
        c.designs.clear();
        for (const auto& s : split(*v, ',')) c.designs.push_back(parse_design(s));
    }
    if (const auto* v = take("csi_mode")) {
        if (*v == "unknown")
            c.csi = CsiMode::Unknown;
        else if (*v == "known")
            c.csi = CsiMode::Known;
        else
            throw ConfigError("csi_mode must be 'unknown' or 'known'");
    }

    static const char* known_keys[] = {
        "length", "width", "height", "receiver_height", "luminaire_positions", "i_min", "i_max",
        "active_area_ar", "semi_angle_half", "fov_psi", "filter_gain_ts", "refractive_index_kappa",
        "responsivity_gamma", "conversion_eta", "bandwidth_bmod", "ambient_photocurrent_chi",
        "preamp_density_iamp", "p_circuit", "u_leds", "zeta", "delta_b_db", "rho",
        "eps_dinkelbach", "eps_ccp", "eps_bisect", "max_iter_dinkelbach", "max_iter_ccp",
        "p_t_dbm_values", "rho_values", "k_values", "feas_p_t_dbm", "p_t_dbm", "eves_p_t_dbm",
        "k_eves", "n_realizations", "rng_seed", "threads", "schemes", "designs", "csi_mode"};
    for (const auto& [key, val] : kv) {
        (void)val;
        if (std::find_if(std::begin(known_keys), std::end(known_keys),
                         [&](const char* k) { return key == k; }) == std::end(known_keys))
            throw ConfigError("unknown key '" + key + "'");
    }

    if (c.n_realizations < 1) throw ConfigError("n_realizations must be >= 1");
    if (c.k_eves < 0) throw ConfigError("k_eves must be >= 0");
    if (c.design.rho < 0 || c.design.rho > 1) throw ConfigError("rho must lie in [0, 1]");
    for (Real r : c.rho_values)
        if (r < 0 || r > 1) throw ConfigError("rho_values must lie in [0, 1]");
    for (Real k : c.k_values)
        if (k < 1 || k != std::floor(k)) throw ConfigError("k_values must be positive integers");
    if (c.schemes.empty() || c.designs.empty()) throw ConfigError("schemes/designs must be non-empty");

    // room invariants that do not depend on the operating point
    RoomScenario probe = c.room;
    probe.dc_bias_a = dc_bias_for_dbm(c.p_t_dbm, probe.optical.conversion_w_per_a);
    probe.i_max_a = c.i_max_auto ? 2 * probe.dc_bias_a : probe.i_max_a;
    try {
        probe.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
    return c;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ConfigFile::write_template() {
    return R"(# room geometry [m]
length = 5.0
width = 5.0
height = 3.0
receiver_height = 0.5
# ceiling luminaires as x,y pairs (z sits at the room height)
luminaire_positions = -1.4142135623731,-1.4142135623731; 1.4142135623731,-1.4142135623731; 1.4142135623731,1.4142135623731; -1.4142135623731,1.4142135623731

# LED drive range [A]; 'auto' keeps I_max = 2 I_DC so the headroom equals I_DC
i_min = 0.0
i_max = auto

# optics
active_area_ar = 1e-4
semi_angle_half = 60.0
fov_psi = 60.0
filter_gain_ts = 1.0
refractive_index_kappa = 1.5
responsivity_gamma = 0.54
conversion_eta = 0.44
bandwidth_bmod = 2e7
ambient_photocurrent_chi = 10.93
preamp_density_iamp = 5e-12

# electrical power model
p_circuit = 8.0
u_leds = 3.3
zeta = 2.0

# design parameters
delta_b_db = 0.0
rho = 0.2
eps_dinkelbach = 1e-3
eps_ccp = 1e-3
eps_bisect = 1e-3
max_iter_dinkelbach = 30
max_iter_ccp = 50

# experiment
n_realizations = 200
rng_seed = 1
threads = 1
k_eves = 1
p_t_dbm = 30
eves_p_t_dbm = 26
p_t_dbm_values = 26:44:2
rho_values = 0:1:0.05
k_values = 1,2,3,4,5
feas_p_t_dbm = 30,35,40
schemes = selective_siso,fixed_siso,miso
designs = general,zf,noan
csi_mode = unknown
)";
}

}  // namespace vlcsee
