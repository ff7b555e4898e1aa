// adpass: adiabatic-passage simulator CLI.
//
//   adpass run <config.json>                 run a scenario config
//   adpass preset <name>                     run a named figure preset
//   adpass sweep <config.json> --param <p> --values <v1,v2,...>
//
// Common flags: --out <dir> (or env ADPASS_OUT), --steps-per-us <n>.
// Exit codes: 0 success, 2 config error, 3 integration failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <adpass/presets.hpp>

namespace {

std::filesystem::path resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("ADPASS_OUT"); env && *env) return env;
    return ".";
}

std::string stem_of(const std::string& config_path) {
    std::string stem = std::filesystem::path(config_path).stem().string();
    return stem.empty() ? "scenario" : stem;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adiabatic-passage and Rydberg-gate simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // allow the common flags after the subcommand

    std::string out_dir;
    double steps_per_us = adpass::default_steps_per_us;
    app.add_option("--out", out_dir, "output directory (default: $ADPASS_OUT or cwd)");
    app.add_option("--steps-per-us", steps_per_us, "integrator steps per microsecond")
        ->check(CLI::PositiveNumber);

    std::string config_path, preset_name, param_path, values_arg;

    CLI::App* run = app.add_subcommand("run", "run a scenario config file");
    run->add_option("config", config_path, "JSON config file")->required();

    CLI::App* preset = app.add_subcommand("preset", "run a named figure preset");
    preset->add_option("name", preset_name, "preset name")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one config parameter");
    sweep->add_option("config", config_path, "JSON config file")->required();
    sweep->add_option("--param", param_path, "dotted parameter path, e.g. pulse.detuning_mhz")
        ->required();
    sweep->add_option("--values", values_arg, "comma-separated list of values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::filesystem::path dir = resolve_out_dir(out_dir);
    try {
        if (*run) {
            adpass::Scenario sc = adpass::parse_config(adpass::load_config_file(config_path));
            sc.grid.steps_per_us = steps_per_us;
            adpass::json summary = adpass::run_scenario(sc, dir, stem_of(config_path));
            std::cout << summary.dump(2) << "\n";
        } else if (*preset) {
            adpass::json summary =
                adpass::presets::run_preset(preset_name, dir, steps_per_us);
            std::cout << summary.dump(2) << "\n";
        } else if (*sweep) {
            std::vector<double> values;
            for (const auto& tok : CLI::detail::split(values_arg, ',')) {
                if (tok.empty()) continue;
                try {
                    values.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw adpass::ConfigError("sweep: bad value '" + tok + "'");
                }
            }
            adpass::json base = adpass::load_config_file(config_path);
            if (steps_per_us != adpass::default_steps_per_us)
                base["grid"]["steps_per_us"] = steps_per_us;
            adpass::run_sweep(base, param_path, values, dir,
                              stem_of(config_path) + "_sweep");
        }
    } catch (const adpass::IntegrationError& e) {
        std::cerr << "integration error: " << e.what() << "\n";
        return 3;
    } catch (const adpass::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const adpass::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
