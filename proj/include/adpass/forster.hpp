#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "adiabatic.hpp"
#include "hamiltonians.hpp"
#include "propagator.hpp"

// Stark-tuned interaction-resonance passage: double sweep of the energy
// defect through zero, distance-sensitivity sweeps, and recovery of the
// defect waveform from a field-to-energy table.

namespace adpass {

struct ForsterScenario {
    ForsterChannelParams channel;
    TimeGrid grid;               // defaults to the waveform's segment-symmetric window
    double margin_threshold = 0.5;

    static ForsterScenario make(ForsterChannelParams channel,
                                double steps_per_us = default_steps_per_us) {
        ForsterScenario s;
        auto [lo, hi] = support_window(channel.detuning_waveform);
        s.grid = TimeGrid{lo, hi};
        s.grid.steps_per_us = steps_per_us;
        s.channel = std::move(channel);
        return s;
    }
};

struct DoublePassageResult {
    Trajectory trajectory;
    double final_phase = 0.0;    // unwrapped phase of the initial channel
    double return_error = 0.0;   // 1 - final population of the initial channel
    double max_margin = 0.0;
    bool flagged = false;        // margin above threshold
};

inline DoublePassageResult run_double_passage(const ForsterScenario& scenario) {
    ForsterModel model(scenario.channel);
    CollectiveState init;
    init.amplitudes = Eigen::Vector2cd(1.0, 0.0);
    DoublePassageResult res;
    res.trajectory = propagate(model, init, scenario.grid);
    res.return_error = 1.0 - res.trajectory.final_population(0);
    res.final_phase = res.trajectory.final_phase(0);

    NonlinearDetuningPulse margin_pulse = scenario.channel.detuning_waveform;
    margin_pulse.rabi = 2.0 * model.coupling();
    for (double m : adiabaticity_margin(TwoLevelPulse{margin_pulse}, scenario.grid))
        if (std::isfinite(m)) res.max_margin = std::max(res.max_margin, m);
    res.flagged = res.max_margin > scenario.margin_threshold;
    return res;
}

struct DistanceRow {
    double relative_delta = 0.0;
    double distance = 0.0;       // perturbed R [um]
    double coupling = 0.0;       // V [rad/us], scales as (1+delta)^-3
    double phase = 0.0;          // final CZ phase, wrapped
    double max_margin = 0.0;
    bool flagged = false;
};

struct DistanceSweep {
    std::vector<DistanceRow> rows;
    double max_phase_deviation = 0.0;  // max |phase - pi| over the sweep
};

inline DistanceSweep distance_sensitivity(const ForsterScenario& scenario,
                                          const std::vector<double>& relative_deltas) {
    DistanceSweep sweep;
    for (double rd : relative_deltas) {
        if (std::abs(rd) > 0.2)
            throw ConfigError("distance sweep supports relative deltas within +-20%");
        ForsterScenario s = scenario;
        s.channel.distance = scenario.channel.distance * (1.0 + rd);
        DoublePassageResult r = run_double_passage(s);
        DistanceRow row;
        row.relative_delta = rd;
        row.distance = s.channel.distance;
        row.coupling = ForsterModel(s.channel).coupling();
        row.phase = wrap_phase(r.final_phase);
        row.max_margin = r.max_margin;
        row.flagged = r.flagged;
        sweep.rows.push_back(row);
        sweep.max_phase_deviation =
            std::max(sweep.max_phase_deviation,
                     std::abs(std::abs(row.phase) - std::numbers::pi));
    }
    return sweep;
}

// ---------------------------------------------------------------------------
// least-squares fit of a sampled defect waveform to the odd-polynomial form
// delta(t) = s1 (t - t_c) + s2 (t - t_c)^p

struct FieldTable {
    // two-column table: dc field [V/cm] -> energy defect [MHz, linear]
    std::vector<double> field;
    std::vector<double> defect_mhz;

    double defect_at(double f) const {  // linear interpolation, rad/us
        if (field.size() < 2) throw ConfigError("field table needs at least two rows");
        for (size_t i = 1; i < field.size(); ++i)
            if (field[i] < field[i - 1])
                throw ConfigError("field table segment must be monotone in field");
        if (f <= field.front())
            return mhz(defect_mhz.front());
        for (size_t i = 1; i < field.size(); ++i)
            if (f <= field[i]) {
                double u = (f - field[i - 1]) / (field[i] - field[i - 1]);
                return mhz(defect_mhz[i - 1] + u * (defect_mhz[i] - defect_mhz[i - 1]));
            }
        return mhz(defect_mhz.back());
    }
};

struct DefectFit {
    double slope = 0.0;       // s1 [rad/us^2]
    double curvature = 0.0;   // s2 [rad/us^(p+1)]
    double center = 0.0;      // t_c [us], where the defect crosses zero
    int odd_power = 3;
    double residual = 0.0;    // rms of fit residuals [rad/us]
};

inline DefectFit effective_defect_from_field(const FieldTable& table,
                                             const std::vector<double>& times,
                                             const std::vector<double>& field_waveform,
                                             int odd_power = 3) {
    if (times.size() != field_waveform.size() || times.size() < 4)
        throw ConfigError("waveform needs at least 4 (t, field) samples");
    std::vector<double> delta(times.size());
    for (size_t i = 0; i < times.size(); ++i) delta[i] = table.defect_at(field_waveform[i]);

    // zero crossing of the mapped defect locates the sweep center
    DefectFit fit;
    fit.odd_power = odd_power;
    fit.center = times.front();
    for (size_t i = 1; i < delta.size(); ++i)
        if (delta[i - 1] == 0.0 || delta[i - 1] * delta[i] < 0.0) {
            double u = delta[i - 1] / (delta[i - 1] - delta[i]);
            fit.center = times[i - 1] + u * (times[i] - times[i - 1]);
            break;
        }

    // normal equations for the two odd-polynomial coefficients
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
    for (size_t i = 0; i < times.size(); ++i) {
        double x = times[i] - fit.center;
        double xp = std::pow(x, odd_power);
        m(0, 0) += x * x;
        m(0, 1) += x * xp;
        m(1, 0) += x * xp;
        m(1, 1) += xp * xp;
        rhs(0) += x * delta[i];
        rhs(1) += xp * delta[i];
    }
    Eigen::Vector2d coeff = m.ldlt().solve(rhs);
    fit.slope = coeff(0);
    fit.curvature = coeff(1);
    double ss = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
        double x = times[i] - fit.center;
        double r = delta[i] - fit.slope * x - fit.curvature * std::pow(x, odd_power);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(times.size()));
    return fit;
}

}  // namespace adpass
