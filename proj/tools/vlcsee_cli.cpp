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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vlcsee/config.hpp"

namespace {

using namespace vlcsee;

std::string fmt(Real x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

struct CommonFlags {
    std::string config_path;
    std::string out_path = "-";
    long seed = -1;
    int realizations = -1;
    int threads = -1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "configuration file (key = value lines)");
    cmd->add_option("--out", f.out_path, "output path, '-' for stdout");
    cmd->add_option("--seed", f.seed, "override rng_seed");
    cmd->add_option("--realizations", f.realizations, "override n_realizations");
    cmd->add_option("--threads", f.threads, "override worker thread count");
}

ConfigFile load_config(const CommonFlags& f) {
    ConfigFile c = f.config_path.empty() ? ConfigFile::defaults() : ConfigFile::load(f.config_path);
    if (f.seed >= 0) c.rng_seed = static_cast<uint64_t>(f.seed);
    if (f.realizations > 0) c.n_realizations = f.realizations;
    if (f.threads > 0) c.threads = f.threads;
    return c;
}

SweepSpec base_spec(const ConfigFile& c) {
    SweepSpec s;
    s.n_realizations = c.n_realizations;
    s.rng_seed = c.rng_seed;
    s.k_eves = c.k_eves;
    s.p_t_dbm = c.p_t_dbm;
    s.room = c.room;
    s.room_auto_imax = c.i_max_auto;
    s.design = c.design;
    s.maxmin = c.maxmin;
    s.threads = c.threads;
    s.csi = c.csi;
    for (SchemeKind scheme : c.schemes)
        for (DesignKind design : c.designs) s.schemes.push_back({scheme, design});
    return s;
}

void drop_zf_for_known(SweepSpec& s) {
    std::erase_if(s.schemes, [](const SchemeSpec& x) { return x.design == DesignKind::ZeroForcing; });
    if (s.schemes.empty()) throw ConfigError("no schemes left after removing zero-forcing designs");
}

int cmd_sweep_power(const CommonFlags& f) {
    const ConfigFile c = load_config(f);
    SweepSpec spec = base_spec(c);
    spec.variable = SweepSpec::Variable::PowerDbm;
    spec.values = c.p_t_dbm_values;
    if (spec.csi == CsiMode::Known) drop_zf_for_known(spec);

    const ExperimentResult res = run_sweep(spec);
    Output out(f.out_path);
    out.stream() << "# seed=" << res.seed << "\n";
    out.stream() << "p_t_dbm,scheme,csi_mode,mean_ee,mean_see,feas_prob,mean_sinr_gap_db,n_feasible\n";
    for (const PointStats& r : res.rows)
        out.stream() << fmt(r.sweep_value) << ',' << scheme_tag(r.scheme) << ','
                     << to_string(spec.csi) << ',' << fmt(r.mean_ee) << ',' << fmt(r.mean_see) << ','
                     << fmt(r.feas_prob) << ',' << fmt(r.mean_sinr_gap_db) << ',' << r.n_feasible
                     << "\n";
    return 0;
}

int cmd_feasibility(const CommonFlags& f) {
    const ConfigFile c = load_config(f);
    Output out(f.out_path);
    out.stream() << "# seed=" << c.rng_seed << "\n";
    out.stream() << "rho,p_t_dbm,scheme,feas_prob\n";
    for (Real p_dbm : c.feas_p_t_dbm) {
        SweepSpec spec = base_spec(c);
        spec.csi = CsiMode::Unknown;
        spec.variable = SweepSpec::Variable::Rho;
        spec.values = c.rho_values;
        spec.p_t_dbm = p_dbm;
        const ExperimentResult res = run_sweep(spec);
        for (const PointStats& r : res.rows)
            out.stream() << fmt(r.sweep_value) << ',' << fmt(p_dbm) << ',' << scheme_tag(r.scheme)
                         << ',' << fmt(r.feas_prob) << "\n";
    }
    return 0;
}

int cmd_eves_sweep(const CommonFlags& f) {
    const ConfigFile c = load_config(f);
    SweepSpec spec = base_spec(c);
    spec.csi = CsiMode::Known;
    spec.variable = SweepSpec::Variable::EveCount;
    spec.values = c.k_values;
    spec.p_t_dbm = c.eves_p_t_dbm;
    drop_zf_for_known(spec);

    const ExperimentResult res = run_sweep(spec);
    Output out(f.out_path);
    out.stream() << "# seed=" << res.seed << "\n";
    out.stream() << "k_eves,scheme,mean_min_see\n";
    for (const PointStats& r : res.rows)
        out.stream() << static_cast<int>(r.sweep_value) << ',' << scheme_tag(r.scheme) << ','
                     << fmt(r.mean_see) << "\n";
    return 0;
}

int cmd_convergence(const CommonFlags& f) {
    const ConfigFile c = load_config(f);
    SweepSpec spec = base_spec(c);
    spec.csi = CsiMode::Unknown;
    const RoomScenario scenario = [&] {
        RoomScenario s = c.room;
        s.dc_bias_a = dc_bias_for_dbm(c.p_t_dbm, s.optical.conversion_w_per_a);
        if (c.i_max_auto) s.i_max_a = 2 * s.dc_bias_a;
        return s;
    }();

    Output out(f.out_path);
    out.stream() << "# seed=" << c.rng_seed << "\n";
    out.stream() << "realization,scheme,algo,iter,error\n";
    const SchemeKind bases[] = {SchemeKind::SelectiveSiso, SchemeKind::Miso};
    for (int r = 0; r < c.n_realizations; ++r) {
        Rng rng(mix_seed(c.rng_seed, 0, static_cast<uint64_t>(r)));
        Vec2 bob;
        std::vector<Vec2> eves;
        place_receivers(rng, scenario, c.k_eves, bob, eves);
        for (SchemeKind base : bases) {
            const ChannelState ch = build_channel(scenario, bob, eves, base);
            const DesignOutcome d =
                run_design(ch, scenario, spec, {base, DesignKind::General}, c.design.rho);
            if (d.status != DesignStatus::Solved) continue;
            for (size_t i = 0; i < d.dinkelbach_error_trace.size(); ++i)
                out.stream() << r << ',' << to_string(base) << ",dinkelbach," << (i + 1) << ','
                             << fmt(d.dinkelbach_error_trace[i]) << "\n";
            for (size_t i = 0; i < d.ccp_error_trace.size(); ++i)
                out.stream() << r << ',' << to_string(base) << ",ccp," << (i + 1) << ','
                             << fmt(d.ccp_error_trace[i]) << "\n";
        }
    }
    return 0;
}

int cmd_design(const CommonFlags& f, const std::string& scheme_s, const std::string& design_s,
               const std::string& bob_s, const std::string& eves_s) {
    const ConfigFile c = load_config(f);
    SweepSpec spec = base_spec(c);
    RoomScenario scenario = c.room;
    scenario.dc_bias_a = dc_bias_for_dbm(c.p_t_dbm, scenario.optical.conversion_w_per_a);
    if (c.i_max_auto) scenario.i_max_a = 2 * scenario.dc_bias_a;

    SchemeSpec scheme;
    scheme.scheme = scheme_s == "fixed_siso"      ? SchemeKind::FixedSiso
                    : scheme_s == "miso"          ? SchemeKind::Miso
                    : scheme_s == "selective_siso" ? SchemeKind::SelectiveSiso
                                                   : throw ConfigError("unknown scheme '" + scheme_s + "'");
    scheme.design = design_s == "general" ? DesignKind::General
                    : design_s == "zf"    ? DesignKind::ZeroForcing
                    : design_s == "noan"  ? DesignKind::NoAn
                                          : throw ConfigError("unknown design '" + design_s + "'");

    auto parse_xy = [](const std::string& s) {
        std::stringstream ss(s);
        Real x, y;
        char comma;
        if (!(ss >> x >> comma >> y) || comma != ',')
            throw ConfigError("positions must look like 'x,y'");
        return Vec2(x, y);
    };

    Vec2 bob;
    std::vector<Vec2> eves;
    if (bob_s.empty()) {
        Rng rng(mix_seed(c.rng_seed, 0, 0));
        place_receivers(rng, scenario, c.k_eves, bob, eves);
    } else {
        bob = parse_xy(bob_s);
    }
    if (!eves_s.empty()) {
        eves.clear();
        std::stringstream ss(eves_s);
        std::string item;
        while (std::getline(ss, item, ';'))
            if (!item.empty()) eves.push_back(parse_xy(item));
    }

    const ChannelState ch = build_channel(scenario, bob, eves, scheme.scheme);
    const DesignOutcome d = run_design(ch, scenario, spec, scheme, c.design.rho);

    Output out(f.out_path);
    std::ostream& os = out.stream();
    os << "scheme: " << scheme_tag(scheme) << "\n";
    os << "csi_mode: " << to_string(spec.csi) << "\n";
    os << "status: " << (d.status == DesignStatus::Solved ? "solved" : "infeasible") << "\n";
    if (d.status != DesignStatus::Solved) {
        os << "reason: " << d.note << "\n";
        return 0;
    }
    os << "ee_bob: " << fmt(d.ee_bob) << "\n";
    os << "resultant_see: " << fmt(d.resultant_see) << "\n";
    os << "outer_iterations: " << d.dinkelbach_iters << "\n";
    os << "info_precoder:";
    for (int i = 0; i < d.sol.info.size(); ++i) os << ' ' << fmt(d.sol.info[i]);
    os << "\nan_precoder:";
    for (int j = 0; j < d.sol.an.cols(); ++j) {
        os << (j ? " |" : "");
        for (int i = 0; i < d.sol.an.rows(); ++i) os << ' ' << fmt(d.sol.an(i, j));
    }
    os << "\n";
    if (!d.lambda_trace.empty()) {
        os << "lambda_trace:";
        for (Real l : d.lambda_trace) os << ' ' << fmt(l);
        os << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"energy-efficiency-oriented artificial-noise designs for indoor VLC links"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* sweep = app.add_subcommand("sweep-power", "EE/SEE statistics across transmit power");
    add_common(sweep, flags);
    auto* feas = app.add_subcommand("feasibility", "feasibility probability across the AN budget");
    add_common(feas, flags);
    auto* eves = app.add_subcommand("eves-sweep", "known-CSI SEE across the eavesdropper count");
    add_common(eves, flags);
    auto* conv = app.add_subcommand("convergence", "per-iteration solver error traces");
    add_common(conv, flags);
    auto* design = app.add_subcommand("design", "solve one placement and print the outcome");
    add_common(design, flags);
    std::string scheme_s = "selective_siso", design_s = "general", bob_s, eves_s;
    design->add_option("--scheme", scheme_s, "fixed_siso | selective_siso | miso");
    design->add_option("--design", design_s, "general | zf | noan");
    design->add_option("--bob", bob_s, "Bob position 'x,y' (random when omitted)");
    design->add_option("--eves", eves_s, "Eve positions 'x,y;x,y;...'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) return cmd_sweep_power(flags);
        if (feas->parsed()) return cmd_feasibility(flags);
        if (eves->parsed()) return cmd_eves_sweep(flags);
        if (conv->parsed()) return cmd_convergence(flags);
        if (design->parsed()) return cmd_design(flags, scheme_s, design_s, bob_s, eves_s);
        return 2;
    } catch (const vlcsee::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
