#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trps/config.hpp"
#include "trps/errors.hpp"
#include "trps/scenario.hpp"

namespace {

trps::ScenarioConfig load_with_overrides(const std::string& source,
                                         const std::vector<std::string>& overrides) {
    trps::ScenarioConfig cfg = trps::load_config(source);
    for (const std::string& ov : overrides) trps::apply_override(cfg, ov);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-resolved physical spectrum of a TLS-cavity emitter"};
    app.require_subcommand(1);

    std::string run_source;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    bool no_plots = false;
    CLI::App* run = app.add_subcommand("run", "Run a scenario and write its products");
    run->add_option("source", run_source, "Preset name or config file path")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--set", overrides, "Override section.key=value");
    run->add_flag("--no-plots", no_plots, "Skip gnuplot script generation");

    CLI::App* list = app.add_subcommand("list-presets", "List built-in scenario presets");

    std::string check_source;
    std::vector<std::string> check_overrides;
    CLI::App* check = app.add_subcommand("validate", "Validate a config without running");
    check->add_option("source", check_source, "Preset name or config file path")->required();
    check->add_option("--set", check_overrides, "Override section.key=value");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const std::string& name : trps::preset_names()) std::cout << name << '\n';
            return 0;
        }
        if (check->parsed()) {
            const trps::ScenarioConfig cfg = load_with_overrides(check_source, check_overrides);
            cfg.validate();
            std::cout << trps::emit_config(cfg);
            return 0;
        }
        const trps::ScenarioConfig cfg = load_with_overrides(run_source, overrides);
        trps::Manifest manifest = trps::run_scenario(cfg, out_dir);
        if (!no_plots) manifest = trps::emit_plot_scripts(manifest);
        for (const trps::ManifestEntry& e : manifest.entries) {
            std::cout << e.relpath << "  (" << e.bytes << " bytes)\n";
        }
        std::cout << "wrote " << manifest.entries.size() << " files to " << manifest.root
                  << '\n';
        return 0;
    } catch (const trps::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const trps::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
}
