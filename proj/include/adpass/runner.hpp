#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "forster.hpp"
#include "gates.hpp"
#include "hamiltonians.hpp"
#include "propagator.hpp"

// Scenario configs (JSON), model construction, CSV/JSON emission, Poisson
// loading statistics and parameter sweeps.

namespace adpass {

using nlohmann::json;

struct Scenario {
    std::unique_ptr<HamiltonianModel> model;
    BlockadedBasis basis;          // empty labels for bare two-level models
    std::vector<std::string> state_labels;
    TimeGrid grid;
    CollectiveState initial;
    std::vector<std::string> outputs;  // populations, phases, eigenvalues, summary
    json config;                   // normalized config (round-trips)
};

namespace cfg {

inline double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError("config: missing numeric field '" + key + "'");
    return j[key].get<double>();
}
inline double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError("config: field '" + key + "' must be numeric");
    return j[key].get<double>();
}
inline double require_magnitude(const json& j, const std::string& key) {
    double v = require_number(j, key);
    if (v < 0.0) throw ConfigError("config: '" + key + "' must be nonnegative");
    return v;
}
inline std::string string_or(const json& j, const std::string& key,
                             const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw ConfigError("config: field '" + key + "' must be a string");
    return j[key].get<std::string>();
}

inline DetuningRule parse_rule(const std::string& s) {
    if (s == "constant") return DetuningRule::constant;
    if (s == "sign_of_t") return DetuningRule::sign_of_t;
    throw ConfigError("config: unknown detuning_rule '" + s + "'");
}
inline std::string rule_name(DetuningRule r) {
    return r == DetuningRule::sign_of_t ? "sign_of_t" : "constant";
}

inline GaussianChirpPulse parse_gaussian(const json& j) {
    GaussianChirpPulse p;
    p.peak_rabi = mhz(require_magnitude(j, "peak_rabi_mhz"));
    p.width = require_magnitude(j, "width_us");
    if (p.width <= 0.0) throw ConfigError("config: width_us must be positive");
    p.center = number_or(j, "center_us", 0.0);
    p.chirp_rate = mhz(number_or(j, "chirp_mhz_per_us", 0.0));
    p.phase_sign = j.value("phase_sign", 1) >= 0 ? 1 : -1;
    return p;
}

inline TwoLevelPulse parse_two_level_pulse(const json& j) {
    std::string type = string_or(j, "type", "");
    if (type == "gaussian_chirp") return parse_gaussian(j);
    if (type == "double_sequence") {
        DoubleSequence s;
        s.first = parse_gaussian(j.at("first"));
        s.second_center = require_number(j, "second_center_us");
        std::string mode = string_or(j, "mode", "identical");
        if (mode == "identical") s.mode = SequenceMode::identical;
        else if (mode == "phase_flipped") s.mode = SequenceMode::phase_flipped;
        else if (mode == "detuning_sign_switched") s.mode = SequenceMode::detuning_sign_switched;
        else throw ConfigError("config: unknown sequence mode '" + mode + "'");
        if (s.second_center <= s.first.center)
            throw ConfigError("config: second pulse must follow the first");
        return s;
    }
    if (type == "nonlinear_detuning") {
        NonlinearDetuningPulse p;
        p.rabi = mhz(require_magnitude(j, "rabi_mhz"));
        auto c = j.at("centers_us");
        if (!c.is_array() || c.size() != 2)
            throw ConfigError("config: centers_us must hold two times");
        p.centers = {c[0].get<double>(), c[1].get<double>()};
        if (p.centers[0] >= p.centers[1])
            throw ConfigError("config: centers_us must be ascending");
        p.slope = mhz(require_number(j, "slope_mhz_per_us"));
        p.curvature = mhz(number_or(j, "curvature_mhz_per_usp", 0.0));  // s2 [MHz/us^p]
        p.odd_power = j.value("odd_power", 3);
        if (p.odd_power != 3 && p.odd_power != 5)
            throw ConfigError("config: odd_power must be 3 or 5");
        return p;
    }
    throw ConfigError("config: unknown two-level pulse type '" + type + "'");
}

inline StirapDrive parse_stirap_drive(const json& j) {
    std::string type = string_or(j, "type", "");
    if (type == "stirap_pair") {
        StirapPair p;
        p.stokes_peak = mhz(require_magnitude(j, "stokes_peak_mhz"));
        p.pump_peak = mhz(require_magnitude(j, "pump_peak_mhz"));
        p.stokes_center = require_number(j, "stokes_center_us");
        p.pump_center = require_number(j, "pump_center_us");
        p.width = require_magnitude(j, "width_us");
        p.detuning = mhz(number_or(j, "detuning_mhz", 0.0));
        p.rule = parse_rule(string_or(j, "detuning_rule", "constant"));
        if (p.stokes_center >= p.pump_center)
            throw ConfigError("config: counterintuitive order requires stokes before pump");
        return p;
    }
    if (type == "double_stirap") {
        DoubleStirap p;
        p.pump_peak = mhz(require_magnitude(j, "pump_peak_mhz"));
        p.stokes_peak = mhz(require_magnitude(j, "stokes_peak_mhz"));
        auto pc = j.at("pump_centers_us"), sc = j.at("stokes_centers_us");
        if (!pc.is_array() || pc.size() != 2 || !sc.is_array() || sc.size() != 2)
            throw ConfigError("config: double_stirap needs two centers per channel");
        p.pump_centers = {pc[0].get<double>(), pc[1].get<double>()};
        p.stokes_centers = {sc[0].get<double>(), sc[1].get<double>()};
        p.width = require_magnitude(j, "width_us");
        p.detuning = mhz(number_or(j, "detuning_mhz", 0.0));
        p.rule = parse_rule(string_or(j, "detuning_rule", "constant"));
        return p;
    }
    if (type == "optimized_stirap") {
        OptimizedStirapPair p;
        p.amplitude = mhz(require_magnitude(j, "amplitude_mhz"));
        p.hyper_width = require_magnitude(j, "hyper_width_us");
        p.hyper_order = j.value("hyper_order", 3);
        p.steepness = number_or(j, "steepness", 4.0);
        p.tau = number_or(j, "tau_us", 0.5 * p.hyper_width);  // binding rule tau = T0/2
        p.center = number_or(j, "center_us", 0.0);
        p.detuning = mhz(number_or(j, "detuning_mhz", 0.0));
        return p;
    }
    throw ConfigError("config: unknown stirap drive type '" + type + "'");
}

inline ForsterChannelParams parse_forster_channel(const json& j) {
    ForsterChannelParams c;
    c.defect_at_zero_field = mhz(number_or(j, "defect_mhz", 0.0));
    c.coupling_coefficient = mhz(require_magnitude(j, "c3_mhz_um3"));
    c.distance = require_magnitude(j, "distance_um");
    if (c.distance <= 0.0) throw ConfigError("config: distance_um must be positive");
    auto w = j.at("waveform");
    json wv = w;
    wv["type"] = "nonlinear_detuning";
    if (!wv.contains("rabi_mhz")) wv["rabi_mhz"] = 0.0;
    c.detuning_waveform = std::get<NonlinearDetuningPulse>(parse_two_level_pulse(wv));
    return c;
}

}  // namespace cfg

inline Scenario parse_config(const json& j) {
    Scenario sc;
    sc.config = j;
    std::string model = cfg::string_or(j, "model", "");

    double default_lo = 0.0, default_hi = 1.0;
    if (model == "arp_two_level" || model == "ensemble_two_level") {
        TwoLevelPulse pulse = cfg::parse_two_level_pulse(j.at("pulse"));
        std::tie(default_lo, default_hi) = support_window(pulse);
        if (model == "arp_two_level") {
            sc.model = std::make_unique<ArpModel>(pulse);
        } else {
            int n = j.value("atoms", 1);
            sc.model = std::make_unique<TwoLevelEnsembleModel>(n, pulse);
        }
        sc.state_labels = {"g", "r"};
    } else if (model == "stirap_three_level" || model == "ensemble_three_level_full" ||
               model == "ensemble_three_level_symmetric") {
        StirapDrive drive = cfg::parse_stirap_drive(j.at("pulse"));
        std::tie(default_lo, default_hi) = support_window(drive);
        int n = model == "stirap_three_level" ? 1 : j.value("atoms", 1);
        Representation rep = model == "ensemble_three_level_symmetric"
                                 ? Representation::symmetric
                                 : Representation::full;
        sc.basis = build_basis(n, LevelScheme::three_level, rep);
        sc.state_labels = sc.basis.labels;
        sc.model = std::make_unique<EnsembleModel>(sc.basis, drive);
    } else if (model == "forster_channel") {
        ForsterChannelParams c = cfg::parse_forster_channel(j.at("channel"));
        std::tie(default_lo, default_hi) = support_window(c.detuning_waveform);
        sc.model = std::make_unique<ForsterModel>(c);
        sc.state_labels = {"c0", "c1"};
    } else {
        throw ConfigError("config: unknown model kind '" + model + "'");
    }

    json g = j.value("grid", json::object());
    sc.grid.t_start = cfg::number_or(g, "t_start_us", default_lo);
    sc.grid.t_end = cfg::number_or(g, "t_end_us", default_hi);
    sc.grid.steps_per_us = cfg::number_or(g, "steps_per_us", default_steps_per_us);
    sc.grid.adaptive = g.value("adaptive", false);
    sc.grid.rel_tol = cfg::number_or(g, "rel_tol", 1e-10);
    sc.grid.abs_tol = cfg::number_or(g, "abs_tol", 1e-12);
    sc.grid.validate();

    int dim = sc.model->dim();
    if (!j.contains("initial") || (j["initial"].is_string() && j["initial"] == "ground")) {
        sc.initial.amplitudes = Eigen::VectorXcd::Zero(dim);
        sc.initial.amplitudes(0) = 1.0;
    } else if (j["initial"].is_array()) {
        auto arr = j["initial"];
        if (static_cast<int>(arr.size()) != dim)
            throw ConfigError("config: initial state dimension mismatch");
        sc.initial.amplitudes = Eigen::VectorXcd::Zero(dim);
        for (int k = 0; k < dim; ++k) {
            auto& e = arr[k];
            if (!e.is_array() || e.size() != 2)
                throw ConfigError("config: initial amplitudes are [re, im] pairs");
            sc.initial.amplitudes(k) = cd(e[0].get<double>(), e[1].get<double>());
        }
        double n = sc.initial.amplitudes.norm();
        if (std::abs(n - 1.0) > 1e-6)
            throw ConfigError("config: initial state is not normalized");
        sc.initial.amplitudes /= n;
    } else {
        throw ConfigError("config: 'initial' must be \"ground\" or an amplitude list");
    }

    if (j.contains("outputs")) {
        for (auto& o : j["outputs"]) sc.outputs.push_back(o.get<std::string>());
    } else {
        sc.outputs = {"populations", "phases", "summary"};
    }
    return sc;
}

inline json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return j;
}

// ---------------------------------------------------------------------------
// output emission

inline std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                                 const std::vector<std::string>& labels) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << "t";
    for (const auto& l : labels) out << ",pop_" << l;
    for (const auto& l : labels) out << ",phase_" << l;
    out << "\n";
    for (int i = 0; i < traj.samples(); ++i) {
        out << fmt_g17(traj.times[i]);
        for (int k = 0; k < traj.populations.cols(); ++k)
            out << "," << fmt_g17(traj.populations(i, k));
        for (int k = 0; k < traj.phases.cols(); ++k)
            out << "," << fmt_g17(traj.phases(i, k));
        out << "\n";
    }
}

inline void write_eigentrack_csv(const std::string& path, const EigenTrack& track) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << "t";
    for (int k = 0; k < track.eigenvalues.cols(); ++k) out << ",lambda_" << k;
    out << "\n";
    for (size_t i = 0; i < track.times.size(); ++i) {
        out << fmt_g17(track.times[i]);
        for (int k = 0; k < track.eigenvalues.cols(); ++k)
            out << "," << fmt_g17(track.eigenvalues(static_cast<int>(i), k));
        out << "\n";
    }
}

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

inline json trajectory_summary(const Scenario& sc, const Trajectory& traj) {
    json s;
    s["model"] = sc.config.value("model", "");
    s["t_start_us"] = sc.grid.t_start;
    s["t_end_us"] = sc.grid.t_end;
    s["max_norm_drift"] = traj.max_norm_drift();
    json pops = json::object(), phases = json::object();
    for (size_t k = 0; k < sc.state_labels.size(); ++k) {
        pops[sc.state_labels[k]] = traj.final_population(static_cast<int>(k));
        double ph = traj.final_phase(static_cast<int>(k));
        phases[sc.state_labels[k]] = std::isnan(ph) ? json() : json(ph);
    }
    s["final_populations"] = pops;
    s["final_phases"] = phases;
    return s;
}

// run one scenario and emit its requested outputs under `dir` with `stem`
inline json run_scenario(const Scenario& sc, const std::filesystem::path& dir,
                         const std::string& stem) {
    std::filesystem::create_directories(dir);
    Trajectory traj = propagate(*sc.model, sc.initial, sc.grid);
    json summary = trajectory_summary(sc, traj);
    bool want_traj = false, want_eigen = false;
    for (const auto& o : sc.outputs) {
        if (o == "populations" || o == "phases") want_traj = true;
        if (o == "eigenvalues") want_eigen = true;
    }
    if (want_traj)
        write_trajectory_csv((dir / (stem + ".csv")).string(), traj, sc.state_labels);
    if (want_eigen) {
        EigenTrack track = eigen_track(*sc.model, sc.grid, sc.initial);
        write_eigentrack_csv((dir / (stem + "_eigenvalues.csv")).string(), track);
    }
    write_json((dir / (stem + "_summary.json")).string(), summary);
    return summary;
}

// ---------------------------------------------------------------------------
// Poisson loading statistics

struct PoissonTable {
    std::vector<double> probabilities;  // P(N), N = 0..max
    double remainder = 0.0;             // truncated tail mass
};

inline PoissonTable poisson_stats(double mean, int max_n) {
    if (mean <= 0.0) throw ConfigError("poisson mean must be positive");
    PoissonTable t;
    double p = std::exp(-mean), sum = 0.0;
    for (int n = 0; n <= max_n; ++n) {
        t.probabilities.push_back(p);
        sum += p;
        p *= mean / (n + 1);
    }
    t.remainder = 1.0 - sum;
    return t;
}

// ---------------------------------------------------------------------------
// parameter sweep: one full run per value, aggregated CSV keyed by value

inline json* resolve_path(json& j, const std::string& dotted) {
    json* cur = &j;
    size_t pos = 0;
    while (pos < dotted.size()) {
        size_t dot = dotted.find('.', pos);
        std::string key = dotted.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (!cur->is_object() || !cur->contains(key)) return nullptr;
        cur = &(*cur)[key];
        pos = dot == std::string::npos ? dotted.size() : dot + 1;
    }
    return cur;
}

inline void run_sweep(const json& base_config, const std::string& param_path,
                      const std::vector<double>& values, const std::filesystem::path& dir,
                      const std::string& stem) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / (stem + ".csv"));
    if (!out) throw ConfigError("cannot open sweep output file");
    bool header_done = false;
    for (double v : values) {
        json c = base_config;
        json* slot = resolve_path(c, param_path);
        if (!slot) throw ConfigError("sweep: parameter path '" + param_path + "' not found");
        if (slot->is_number_integer())
            *slot = static_cast<long>(std::llround(v));
        else
            *slot = v;
        Scenario sc = parse_config(c);
        Trajectory traj = propagate(*sc.model, sc.initial, sc.grid);
        if (!header_done) {
            out << "value";
            for (const auto& l : sc.state_labels) out << ",pop_" << l;
            for (const auto& l : sc.state_labels) out << ",phase_" << l;
            out << "\n";
            header_done = true;
        }
        out << fmt_g17(v);
        int last = traj.samples() - 1;
        for (int k = 0; k < traj.populations.cols(); ++k)
            out << "," << fmt_g17(traj.populations(last, k));
        for (int k = 0; k < traj.phases.cols(); ++k)
            out << "," << fmt_g17(traj.phases(last, k));
        out << "\n";
    }
    if (!header_done) out << "value\n";  // empty value list still succeeds
}

}  // namespace adpass
