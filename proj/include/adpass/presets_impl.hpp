#pragma once

// run_preset: execute a named figure scenario and write its CSV/JSON
// artifacts. Kept separate from presets.hpp to keep the scenario definitions
// readable.

namespace adpass::presets {

namespace detail {

inline void write_rows_csv(const std::filesystem::path& path,
                           const std::string& header,
                           const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    out << header << "\n";
    for (const auto& row : rows) {
        for (size_t k = 0; k < row.size(); ++k)
            out << (k ? "," : "") << fmt_g17(row[k]);
        out << "\n";
    }
}

}  // namespace detail

inline json run_preset(const std::string& name, const std::filesystem::path& dir,
                       double steps_per_us) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    json summary;
    summary["preset"] = name;

    if (name == "fig2") {
        ArpInversion r = run_arp_inversion(steps_per_us);
        write_trajectory_csv((dir / "fig2.csv").string(), r.trajectory, {"g", "r"});
        summary["final_p_r"] = r.final_p_r;
        summary["max_dressed_mismatch"] = r.max_dressed_mismatch;
        summary["max_adiabaticity_margin"] = r.max_margin;
    } else if (name == "fig3a") {
        EnsembleArpScan r = run_ensemble_arp({1, 2, 3}, steps_per_us);
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < r.p1.size(); ++i)
            rows.push_back({static_cast<double>(r.atom_numbers[i]), r.p1[i]});
        detail::write_rows_csv(dir / "fig3a.csv", "n_atoms,p1", rows);
        summary["p1"] = r.p1;
        summary["max_spread"] = r.max_spread;
    } else if (name == "fig3b") {
        // resonant STIRAP, both printed amplitude orderings
        json table = json::array();
        std::vector<std::vector<double>> rows;
        for (auto [pump, stokes] : {std::pair{40.0, 30.0}, std::pair{30.0, 40.0}})
            for (int n : {1, 2}) {
                double p1 = stirap_p1(n, ensemble_stirap_pair(pump, stokes, 0.0), 5.0,
                                      steps_per_us);
                table.push_back({{"pump_mhz", pump},
                                 {"stokes_mhz", stokes},
                                 {"n_atoms", n},
                                 {"p1", p1}});
                rows.push_back({pump, stokes, static_cast<double>(n), p1});
            }
        detail::write_rows_csv(dir / "fig3b.csv", "pump_mhz,stokes_mhz,n_atoms,p1", rows);
        summary["table"] = table;
    } else if (name == "fig3c") {
        json table = json::array();
        std::vector<std::vector<double>> rows;
        for (auto [pump, stokes] : {std::pair{40.0, 30.0}, std::pair{30.0, 40.0}})
            for (int n : {1, 2, 3}) {
                double p1 = stirap_p1(n, ensemble_stirap_pair(pump, stokes, 200.0), 5.0,
                                      steps_per_us);
                table.push_back({{"pump_mhz", pump},
                                 {"stokes_mhz", stokes},
                                 {"n_atoms", n},
                                 {"p1", p1}});
                rows.push_back({pump, stokes, static_cast<double>(n), p1});
            }
        detail::write_rows_csv(dir / "fig3c.csv", "pump_mhz,stokes_mhz,n_atoms,p1", rows);
        summary["table"] = table;
    } else if (name == "fig4") {
        auto p1 = run_regime_switch({0.0, 4.0, 5.0, 10.0}, steps_per_us);
        std::vector<std::vector<double>> rows;
        for (auto [d, p] : p1) rows.push_back({d, p});
        detail::write_rows_csv(dir / "fig4.csv", "detuning_mhz,p1", rows);
        for (auto [d, p] : p1) summary["p1"][std::to_string(d)] = p;
        DarkStateFailure dark = run_dark_state_failure(10.0, 10.0, steps_per_us);
        summary["zero_branch_max_abs"] = dark.max_abs_zero_branch;
        summary["matrix_scale"] = dark.matrix_scale;
    } else if (name == "fig5") {
        auto rows = run_pulse_error_comparison({1, 2, 3, 4, 5, 6, 7}, steps_per_us);
        std::vector<std::vector<double>> csv;
        for (const auto& r : rows)
            csv.push_back({static_cast<double>(r.n_atoms), r.pi_closed_form, r.pi_dynamical,
                           r.arp_error, r.stirap_error});
        detail::write_rows_csv(dir / "fig5.csv",
                               "n_atoms,pi_closed_form,pi_dynamical,arp_error,stirap_error",
                               csv);
        for (const auto& r : rows) {
            json row{{"n_atoms", r.n_atoms},
                     {"pi_closed_form", r.pi_closed_form},
                     {"pi_dynamical", r.pi_dynamical},
                     {"arp_error", r.arp_error},
                     {"stirap_error", r.stirap_error}};
            summary["rows"].push_back(row);
        }
    } else if (name == "fig6") {
        auto rows = run_optimized_stirap({1, 2, 3, 4, 5}, steps_per_us);
        std::vector<std::vector<double>> csv;
        for (const auto& r : rows)
            csv.push_back({static_cast<double>(r.n_atoms), r.optimized_error,
                           r.gaussian_error});
        detail::write_rows_csv(dir / "fig6.csv", "n_atoms,optimized_error,gaussian_error",
                               csv);
        for (const auto& r : rows)
            summary["rows"].push_back(json{{"n_atoms", r.n_atoms},
                                           {"optimized_error", r.optimized_error},
                                           {"gaussian_error", r.gaussian_error}});
    } else if (name == "fig7") {
        DoubleArpResult same = run_double_arp(SequenceMode::identical, steps_per_us);
        DoubleArpResult flip = run_double_arp(SequenceMode::phase_flipped, steps_per_us);
        write_trajectory_csv((dir / "fig7_identical.csv").string(), same.trajectory,
                             {"g", "r"});
        write_trajectory_csv((dir / "fig7_phase_flipped.csv").string(), flip.trajectory,
                             {"g", "r"});
        summary["identical"] = {{"phase", same.final_phase},
                                {"p_return", same.final_p1},
                                {"predicted_phase", std::arg(same.prediction.amplitude)}};
        summary["phase_flipped"] = {{"phase", flip.final_phase},
                                    {"p_return", flip.final_p1},
                                    {"predicted_phase", std::arg(flip.prediction.amplitude)}};
    } else if (name == "fig8") {
        for (auto rule : {DetuningRule::constant, DetuningRule::sign_of_t}) {
            DoubleStirapResult r = run_double_stirap(
                2, Representation::full, phase_cancellation_drive_full(rule), steps_per_us);
            std::string tag =
                rule == DetuningRule::constant ? "constant" : "sign_switched";
            BlockadedBasis basis =
                build_basis(2, LevelScheme::three_level, Representation::full);
            write_trajectory_csv((dir / ("fig8_" + tag + ".csv")).string(), r.trajectory,
                                 basis.labels);
            write_eigentrack_csv((dir / ("fig8_" + tag + "_eigenvalues.csv")).string(),
                                 r.track);
            summary[tag] = {{"ground_phase", r.final_ground_phase},
                            {"ground_population", r.final_ground_population},
                            {"max_phase_prediction_mismatch",
                             r.max_phase_prediction_mismatch}};
        }
    } else if (name == "fig9") {
        for (auto rule : {DetuningRule::constant, DetuningRule::sign_of_t}) {
            std::string tag =
                rule == DetuningRule::constant ? "constant" : "sign_switched";
            for (int n : {1, 2, 7}) {
                DoubleStirapResult r =
                    run_double_stirap(n, Representation::symmetric,
                                      phase_cancellation_drive_sym(rule), steps_per_us);
                summary[tag][std::to_string(n)] = {
                    {"ground_phase", r.final_ground_phase},
                    {"ground_population", r.final_ground_population}};
            }
        }
    } else if (name == "fig10") {
        NonlinearArpResult left =
            run_nonlinear_double_arp(TwoLevelPulse{nonlinear_left_sequence()},
                                     std::max(steps_per_us, 2e4));
        NonlinearArpResult right =
            run_nonlinear_double_arp(TwoLevelPulse{nonlinear_right_pulse()},
                                     std::max(steps_per_us, 2e4));
        summary["left"] = {{"population_error", left.population_error},
                           {"phase", left.phase}};
        summary["right"] = {{"population_error", right.population_error},
                            {"phase", right.phase}};
        detail::write_rows_csv(dir / "fig10.csv", "variant,population_error,phase",
                               {{0.0, left.population_error, left.phase},
                                {1.0, right.population_error, right.phase}});
    } else if (name == "fig12") {
        ForsterScenario sc = ForsterScenario::make(cz_channel(), steps_per_us);
        DoublePassageResult base = run_double_passage(sc);
        write_trajectory_csv((dir / "fig12.csv").string(), base.trajectory, {"c0", "c1"});
        summary["baseline"] = {{"return_error", base.return_error},
                               {"phase", wrap_phase(base.final_phase)},
                               {"max_margin", base.max_margin},
                               {"flagged", base.flagged}};
        DistanceSweep sweep =
            distance_sensitivity(sc, {-0.10, -0.05, 0.0, 0.05, 0.10});
        std::vector<std::vector<double>> rows;
        for (const auto& row : sweep.rows)
            rows.push_back({row.relative_delta, row.distance, row.coupling, row.phase,
                            row.max_margin, row.flagged ? 1.0 : 0.0});
        detail::write_rows_csv(dir / "fig12_distance_sweep.csv",
                               "relative_delta,distance_um,coupling_rad_us,phase,max_margin,flagged",
                               rows);
        summary["max_phase_deviation"] = sweep.max_phase_deviation;
    } else {
        throw ConfigError("unknown preset: " + name);
    }

    write_json((dir / (name + "_summary.json")).string(), summary);
    return summary;
}

}  // namespace adpass::presets
