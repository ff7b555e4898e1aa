#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "adiabatic.hpp"
#include "runner.hpp"

// Named figure presets: each pins one published scenario's parameters, runs
// it, and reports the metrics the acceptance suite checks. The run_* helpers
// return metrics; emit_* additionally write CSV/JSON artifacts.

namespace adpass::presets {

// ---------------------------------------------------------------------------
// chirped two-level inversion, Omega0/2pi = 5 MHz, w = 1 us, alpha/2pi = -1 MHz/us

struct ArpInversion {
    Trajectory trajectory;
    double final_p_r = 0.0;
    double max_dressed_mismatch = 0.0;  // vs adiabatic prediction where margin < 0.05
    double max_margin = 0.0;
};

inline GaussianChirpPulse arp_reference_pulse() {
    return {mhz(5.0), 1.0, 0.0, -mhz(1.0)};
}

inline CollectiveState ground_state_two() {
    CollectiveState s;
    s.amplitudes = Eigen::Vector2cd(1.0, 0.0);
    return s;
}

inline ArpInversion run_arp_inversion(double steps_per_us = default_steps_per_us) {
    GaussianChirpPulse pulse = arp_reference_pulse();
    ArpModel model{TwoLevelPulse{pulse}};
    auto [lo, hi] = support_window(pulse);
    TimeGrid grid{lo, hi};
    grid.steps_per_us = steps_per_us;
    ArpInversion out;
    out.trajectory = propagate(model, ground_state_two(), grid);
    out.final_p_r = out.trajectory.final_population(1);

    // dressed-state prediction: starting in |g> = |I(t_start)>, adiabatic
    // following gives |c_g| = cos(theta), |c_r| = sin(theta)
    auto margins = adiabaticity_margin(TwoLevelPulse{pulse}, grid,
                                       out.trajectory.samples());
    for (int i = 0; i < out.trajectory.samples(); ++i) {
        double m = margins[static_cast<size_t>(i)];
        if (std::isfinite(m)) out.max_margin = std::max(out.max_margin, m);
        if (!(m < 0.05)) continue;
        double t = out.trajectory.times[i];
        double th = mixing_angle(eval_rabi(pulse, t), eval_detuning(pulse, t));
        out.max_dressed_mismatch = std::max(
            {out.max_dressed_mismatch,
             std::abs(out.trajectory.populations(i, 0) - std::cos(th) * std::cos(th)),
             std::abs(out.trajectory.populations(i, 1) - std::sin(th) * std::sin(th))});
    }
    return out;
}

// ---------------------------------------------------------------------------
// sqrt(N)-enhanced ARP: single-excitation probability independent of N

struct EnsembleArpScan {
    std::vector<int> atom_numbers;
    std::vector<double> p1;  // per N
    double max_spread = 0.0;
};

inline GaussianChirpPulse ensemble_arp_pulse() {
    return {mhz(2.0), 1.0, 0.0, -mhz(1.0)};
}

inline EnsembleArpScan run_ensemble_arp(const std::vector<int>& atom_numbers,
                                        double steps_per_us = default_steps_per_us) {
    EnsembleArpScan out;
    out.atom_numbers = atom_numbers;
    GaussianChirpPulse pulse = ensemble_arp_pulse();
    auto [lo, hi] = support_window(pulse);
    for (int n : atom_numbers) {
        TwoLevelEnsembleModel model(n, TwoLevelPulse{pulse});
        TimeGrid grid{lo, hi};
        grid.steps_per_us = steps_per_us;
        Trajectory traj = propagate(model, ground_state_two(), grid);
        out.p1.push_back(traj.final_population(1));
    }
    for (double a : out.p1)
        for (double b : out.p1) out.max_spread = std::max(out.max_spread, std::abs(a - b));
    return out;
}

// ---------------------------------------------------------------------------
// ensemble STIRAP scans (counterintuitive Gaussian pair)

struct StirapScanRow {
    int n_atoms = 0;
    double pump_peak_mhz = 0.0, stokes_peak_mhz = 0.0, detuning_mhz = 0.0;
    double p1 = 0.0;
};

inline StirapPair ensemble_stirap_pair(double pump_mhz, double stokes_mhz, double det_mhz,
                                       double width = 1.0, double center_offset = 1.0) {
    StirapPair p;
    p.pump_peak = mhz(pump_mhz);
    p.stokes_peak = mhz(stokes_mhz);
    p.stokes_center = -center_offset;
    p.pump_center = center_offset;
    p.width = width;
    p.detuning = mhz(det_mhz);
    return p;
}

inline double stirap_p1(int n_atoms, const StirapPair& pair, double half_window,
                        double steps_per_us = default_steps_per_us,
                        Representation rep = Representation::symmetric) {
    BlockadedBasis basis = build_basis(n_atoms, LevelScheme::three_level, rep);
    EnsembleModel model(basis, StirapDrive{pair});
    TimeGrid grid{-half_window, half_window};
    grid.steps_per_us = steps_per_us;
    return run_excitation_probability(model, basis, grid);
}

// resonant STIRAP: works for one atom, fails for a blockaded pair (no dark state)
struct DarkStateFailure {
    double p1_single = 0.0;   // N=1, delta=0
    double p1_pair = 0.0;     // N=2, delta=0
    double max_abs_zero_branch = 0.0;  // |lambda_0(t)| of the N=2 spectrum
    double matrix_scale = 0.0;         // max ||H(t)|| along the grid
};

inline DarkStateFailure run_dark_state_failure(double pump_mhz = 40.0,
                                               double stokes_mhz = 30.0,
                                               double steps_per_us = default_steps_per_us) {
    DarkStateFailure out;
    StirapPair pair = ensemble_stirap_pair(pump_mhz, stokes_mhz, 0.0);
    out.p1_single = stirap_p1(1, pair, 5.0, steps_per_us);
    out.p1_pair = stirap_p1(2, pair, 5.0, steps_per_us);

    BlockadedBasis basis = build_basis(2, LevelScheme::three_level, Representation::symmetric);
    EnsembleModel model(basis, StirapDrive{pair});
    TimeGrid grid{-5.0, 5.0};
    EigenTrack track = eigen_track(model, grid, ground_state(basis));
    for (size_t i = 0; i < track.times.size(); ++i) {
        double min_abs = std::numeric_limits<double>::infinity(), scale = 0.0;
        for (int k = 0; k < track.eigenvalues.cols(); ++k) {
            min_abs = std::min(min_abs, std::abs(track.eigenvalues(static_cast<int>(i), k)));
            scale = std::max(scale, std::abs(track.eigenvalues(static_cast<int>(i), k)));
        }
        out.max_abs_zero_branch = std::max(out.max_abs_zero_branch, min_abs);
        out.matrix_scale = std::max(out.matrix_scale, scale);
    }
    return out;
}

// detuned STIRAP on a blockaded pair: transfer switches on around
// delta/2pi = 5 MHz (equal 10 MHz pump/Stokes)
inline std::map<double, double> run_regime_switch(
    const std::vector<double>& detunings_mhz = {0.0, 4.0, 5.0, 10.0},
    double steps_per_us = default_steps_per_us) {
    std::map<double, double> p1;
    for (double d : detunings_mhz)
        p1[d] = stirap_p1(2, ensemble_stirap_pair(10.0, 10.0, d), 5.0, steps_per_us);
    return p1;
}

// ---------------------------------------------------------------------------
// pi pulse vs adiabatic pulses across atom number

struct PulseErrorRow {
    int n_atoms = 0;
    double pi_closed_form = 0.0;
    double pi_dynamical = 0.0;
    double arp_error = 0.0;
    double stirap_error = 0.0;
};

inline StirapPair robust_stirap_pair() {
    // wider pair than the excitation scans: keeps the adiabatic advantage
    // >= 10x across N (the published comparison does not pin these shapes)
    return ensemble_stirap_pair(40.0, 30.0, 200.0, 2.0, 2.0);
}

inline std::vector<PulseErrorRow> run_pulse_error_comparison(
    const std::vector<int>& atom_numbers, double steps_per_us = default_steps_per_us) {
    std::vector<PulseErrorRow> rows;
    GaussianChirpPulse arp = ensemble_arp_pulse();
    auto [alo, ahi] = support_window(arp);
    for (int n : atom_numbers) {
        PulseErrorRow row;
        row.n_atoms = n;
        row.pi_closed_form = pi_pulse_error_closed_form(n);
        row.pi_dynamical = pi_pulse_error_dynamical(n, 5, steps_per_us);
        TwoLevelEnsembleModel model(n, TwoLevelPulse{arp});
        TimeGrid grid{alo, ahi};
        grid.steps_per_us = steps_per_us;
        row.arp_error = 1.0 - propagate(model, ground_state_two(), grid).final_population(1);
        row.stirap_error = 1.0 - stirap_p1(n, robust_stirap_pair(), 10.0, steps_per_us);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// flat-top optimized pair vs plain Gaussians at matched amplitude

struct OptimizedStirapRow {
    int n_atoms = 0;
    double optimized_error = 0.0;
    double gaussian_error = 0.0;
};

inline OptimizedStirapPair optimized_pair() {
    OptimizedStirapPair p;
    p.amplitude = mhz(50.0);
    p.hyper_width = 2.0;
    p.hyper_order = 3;
    p.steepness = 4.0;
    p.tau = 1.0;  // T0/2
    p.center = 4.0;
    p.detuning = mhz(200.0);
    return p;
}

inline std::vector<OptimizedStirapRow> run_optimized_stirap(
    const std::vector<int>& atom_numbers, double steps_per_us = default_steps_per_us) {
    std::vector<OptimizedStirapRow> rows;
    for (int n : atom_numbers) {
        OptimizedStirapRow row;
        row.n_atoms = n;
        BlockadedBasis basis =
            build_basis(n, LevelScheme::three_level, Representation::symmetric);
        EnsembleModel model(basis, StirapDrive{optimized_pair()});
        TimeGrid grid{0.0, 8.0};
        grid.steps_per_us = steps_per_us;
        row.optimized_error = 1.0 - run_excitation_probability(model, basis, grid);
        row.gaussian_error =
            1.0 - stirap_p1(n, ensemble_stirap_pair(50.0, 50.0, 200.0), 5.0, steps_per_us);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// double ARP phase accumulation: identical pulses leave phase pi on |1>,
// a phase-flipped second pulse cancels it

struct DoubleArpResult {
    Trajectory trajectory;
    double final_phase = 0.0;       // wrapped ground-state phase
    double final_p1 = 0.0;          // ground-state population (should return to 1)
    DoubleArpPrediction prediction; // closed-form check
};

inline DoubleSequence double_arp_sequence(SequenceMode mode) {
    DoubleSequence s;
    s.first = {mhz(5.0), 1.0, 7.0, -mhz(1.0)};
    s.second_center = 21.0;
    s.mode = mode;
    return s;
}

inline DoubleArpResult run_double_arp(SequenceMode mode,
                                      double steps_per_us = default_steps_per_us) {
    DoubleArpResult out;
    DoubleSequence seq = double_arp_sequence(mode);
    ArpModel model{TwoLevelPulse{seq}};
    auto [lo, hi] = support_window(seq);
    TimeGrid grid{lo, hi};
    grid.steps_per_us = steps_per_us;
    out.trajectory = propagate(model, ground_state_two(), grid);
    out.final_p1 = out.trajectory.final_population(0);
    out.final_phase = wrap_phase(out.trajectory.final_phase(0));
    out.prediction = predict_double_arp_amplitude(seq);
    return out;
}

// ---------------------------------------------------------------------------
// double STIRAP phase accumulation and cancellation

struct DoubleStirapResult {
    Trajectory trajectory;
    EigenTrack track;
    double final_ground_phase = 0.0;  // wrapped
    double final_ground_population = 0.0;
    // max |numeric - (-Int E dt)| where ground population > 1e-3
    double max_phase_prediction_mismatch = 0.0;
};

// two-atom full-basis double STIRAP (equal 10 MHz pulses, delta/2pi = 10 MHz)
inline DoubleStirap phase_cancellation_drive_full(DetuningRule rule) {
    DoubleStirap d;
    d.pump_peak = mhz(10.0);
    d.stokes_peak = mhz(10.0);
    d.pump_centers = {-6.0, 6.0};
    d.stokes_centers = {-4.0, 4.0};
    d.width = 1.0;
    d.detuning = mhz(10.0);
    d.rule = rule;
    return d;
}

// N-atom symmetric double STIRAP (40/30 MHz pulses, delta/2pi = 200 MHz)
inline DoubleStirap phase_cancellation_drive_sym(DetuningRule rule) {
    DoubleStirap d;
    d.pump_peak = mhz(40.0);
    d.stokes_peak = mhz(30.0);
    d.pump_centers = {-4.0, 4.0};
    d.stokes_centers = {-6.0, 6.0};
    d.width = 1.0;
    d.detuning = mhz(200.0);
    d.rule = rule;
    return d;
}

inline DoubleStirapResult run_double_stirap(int n_atoms, Representation rep,
                                            const DoubleStirap& drive,
                                            double steps_per_us = default_steps_per_us) {
    DoubleStirapResult out;
    BlockadedBasis basis = build_basis(n_atoms, LevelScheme::three_level, rep);
    EnsembleModel model(basis, StirapDrive{drive});
    TimeGrid grid{-10.0, 10.0};
    grid.steps_per_us = steps_per_us;
    out.trajectory = propagate(model, ground_state(basis), grid);
    out.final_ground_population = out.trajectory.final_population(0);
    out.final_ground_phase = wrap_phase(out.trajectory.final_phase(0));

    out.track = eigen_track(model, grid, ground_state(basis),
                            static_cast<int>(out.trajectory.samples()));
    // -Int E dt along the branch the propagated state actually occupies
    // (selected per sample by eigenvector overlap; the continuity-ordered
    // track can swap branch labels at the exact degeneracies where the
    // pulses vanish)
    double acc = 0.0, prev_e = 0.0;
    for (int i = 0; i < out.trajectory.samples(); ++i) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
            model.at(out.trajectory.times[static_cast<size_t>(i)]));
        Eigen::VectorXcd psi = out.trajectory.amplitudes.row(i).transpose();
        int best = 0;
        double best_ov = -1.0;
        for (int k = 0; k < model.dim(); ++k) {
            double ov = std::abs(solver.eigenvectors().col(k).dot(psi));
            if (ov > best_ov) {
                best_ov = ov;
                best = k;
            }
        }
        if (i > 0)
            acc -= 0.5 *
                   (out.trajectory.times[static_cast<size_t>(i)] -
                    out.trajectory.times[static_cast<size_t>(i) - 1]) *
                   (solver.eigenvalues()(best) + prev_e);
        prev_e = solver.eigenvalues()(best);
        if (out.trajectory.populations(i, 0) <= 1e-3) continue;
        double numeric = out.trajectory.phases(i, 0);
        if (std::isnan(numeric)) continue;
        double diff = std::abs(wrap_phase(numeric - acc));
        out.max_phase_prediction_mismatch = std::max(out.max_phase_prediction_mismatch, diff);
    }
    return out;
}

// ---------------------------------------------------------------------------
// nonlinear-detuning double passage (two-level)

struct NonlinearArpResult {
    double population_error = 0.0;  // 1 - P(initial state) at the end
    double phase = 0.0;             // wrapped phase of the initial state
};

// left variant: Gaussian pulses with linear chirp
inline DoubleSequence nonlinear_left_sequence() {
    DoubleSequence s;
    s.first = {mhz(10.0), 0.12, 0.5, -mhz(100.0)};
    s.second_center = 1.5;
    return s;
}
// right variant: constant Rabi with cubic detuning
inline NonlinearDetuningPulse nonlinear_right_pulse() {
    NonlinearDetuningPulse p;
    p.rabi = mhz(2.1);
    p.centers = {0.5, 1.5};
    p.slope = -mhz(10.0);
    p.curvature = -mhz(2000.0);
    p.odd_power = 3;
    return p;
}

inline NonlinearArpResult run_nonlinear_double_arp(const TwoLevelPulse& pulse,
                                                   double steps_per_us = 2e4) {
    ArpModel model{pulse};
    auto [lo, hi] = support_window(pulse);
    TimeGrid grid{lo, hi};
    grid.steps_per_us = steps_per_us;
    Trajectory traj = propagate(model, ground_state_two(), grid);
    return {1.0 - traj.final_population(0), wrap_phase(traj.final_phase(0))};
}

// ---------------------------------------------------------------------------
// Stark-tuned CZ scenario; published waveform, derived coupling V/2pi = 2 MHz
// at R = 15.5 um (C3 = V * R^3 is not published)

inline ForsterChannelParams cz_channel() {
    ForsterChannelParams c;
    c.defect_at_zero_field = mhz(152.0);
    c.distance = 15.5;
    c.coupling_coefficient = mhz(2.0) * 15.5 * 15.5 * 15.5;
    c.detuning_waveform.rabi = 0.0;
    c.detuning_waveform.centers = {-0.3, 0.2993};
    c.detuning_waveform.slope = mhz(22.6);
    c.detuning_waveform.curvature = mhz(28800.0);
    c.detuning_waveform.odd_power = 5;
    return c;
}

// ---------------------------------------------------------------------------
// preset registry: run and emit artifacts

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "fig2", "fig3a", "fig3b", "fig3c", "fig4", "fig5",
        "fig6", "fig7", "fig8",  "fig9",  "fig10", "fig12"};
    return names;
}

inline json run_preset(const std::string& name, const std::filesystem::path& dir,
                       double steps_per_us = default_steps_per_us);

}  // namespace adpass::presets

// implementation kept out-of-line for readability
#include "presets_impl.hpp"
