#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "corput/corput.hpp"

namespace {

void print_catalog() {
    for (const auto& entry : corput::catalog()) {
        std::cout << entry.name << "  [" << corput::to_string(entry.kind) << "]\n";
        std::cout << "    " << entry.doc << "\n";
        for (const auto& spec : entry.params) {
            std::cout << "    " << spec.name << " = " << spec.default_value << "  range "
                      << (spec.lo_open ? "(" : "[") << spec.lo << ", " << spec.hi
                      << (spec.hi_open ? ")" : "]") << "  " << spec.doc << "\n";
        }
    }
}

void print_verdict(const corput::VerdictReport& verdict) {
    std::cout << "campaign: " << verdict.campaign << "\n";
    std::cout << "violations: " << verdict.violations << "\n";
    std::cout << "flagged: " << verdict.flagged << "\n";
    for (const auto& c : verdict.constants)
        std::cout << "constant " << c.name << " = " << c.value << "  (" << c.theorem << ")\n";
    for (const auto& f : verdict.fits)
        std::cout << "fit " << f.name << ": slope " << f.slope << " +- " << f.stderr_slope
                  << (verdict.fits_in_band ? "" : "  [out of band]") << "\n";
    std::cout << "wall_ms: " << verdict.wall_ms << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit decay certificates for oscillatory integrals and dispersive cone estimates"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 1;
    long long seed = 0;

    auto* run = app.add_subcommand("run", "run a campaign config; writes CSV series and a JSON verdict");
    run->add_option("config", config_path, "campaign config file (JSON)")->required();
    run->add_option("--out-dir", out_dir, "output directory (default: $CORPUT_OUT_DIR, then cwd)");
    run->add_option("--threads", threads, "worker threads for sample evaluation")
        ->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "recorded for reproducibility; campaigns are deterministic");

    auto* list = app.add_subcommand("list-catalog", "print catalog entries and parameter schemas");

    auto* validate = app.add_subcommand("validate", "parse and check a campaign config, run nothing");
    validate->add_option("config", config_path, "campaign config file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            print_catalog();
            return 0;
        }
        if (validate->parsed()) {
            corput::CampaignConfig::parse_file(config_path);
            std::cout << "config ok\n";
            return 0;
        }
        const auto config = corput::CampaignConfig::parse_file(config_path);
        corput::RunOptions options;
        options.out_dir = out_dir;
        options.threads = threads;
        options.seed = seed;
        const auto verdict = corput::run_campaign(config, options);
        print_verdict(verdict);
        return verdict.exit_code();
    } catch (const corput::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
