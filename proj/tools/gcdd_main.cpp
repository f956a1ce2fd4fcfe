#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "gcdd/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"continuous dynamical decoupling simulator for d-level systems"};

    std::string config_path;
    std::string preset;
    std::string mode;
    std::string out_dir;
    int jobs = 0;
    long seed = 0;

    auto* config_opt = app.add_option("--config", config_path, "configuration file");
    auto* preset_opt =
        app.add_option("--preset", preset, "named built-in configuration")->check(CLI::IsMember({"fig2"}));
    preset_opt->excludes(config_opt);
    app.add_option("--mode", mode,
                   "check-decoupling | run | sweep | export-schedule | feasibility");
    app.add_option("--jobs", jobs, "worker threads for sweeps (0 = hardware)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed for randomized self-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints help or the error message
        return rc == 0 ? 0 : 1;
    }

    try {
        gcdd::RunConfig cfg;
        if (app.count("--config")) {
            cfg = gcdd::load_config(config_path);
        } else if (app.count("--preset")) {
            cfg = gcdd::preset_fig2();
        } else {
            std::fprintf(stderr, "error: one of --config or --preset is required\n");
            return 1;
        }
        if (app.count("--mode")) cfg.mode = gcdd::parse_mode(mode);
        if (app.count("--jobs")) cfg.jobs = jobs;
        if (app.count("--out")) cfg.out_dir = out_dir;
        if (app.count("--seed")) cfg.seed = seed;

        const gcdd::Outputs outputs = gcdd::execute(cfg);
        gcdd::write_outputs(outputs, cfg.out_dir);
        std::fputs(outputs.stdout_text.c_str(), stdout);
        return outputs.exit_code;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
