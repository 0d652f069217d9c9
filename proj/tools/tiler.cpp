#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tiler/errors.hpp"
#include "tiler/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"graph tiling pipelines: build, measure, and assert"};
    app.name("tiler");

    std::string pipeline;
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;

    app.add_option("pipeline", pipeline,
                   "validate-witness | multipack | quasitile | ow-audit | cfw | "
                   "rank-partition | oracle-suite")
        ->required();
    app.add_option("--config", config_path, "JSON run config")->required();
    const auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
    const auto* out_opt = app.add_option("--out", out_dir, "override the artifact directory");

    CLI11_PARSE(app, argc, argv);

    std::string stage = "loading config";
    try {
        tiler::RunConfig cfg = tiler::load_config(config_path);
        if (cfg.pipeline != pipeline)
            throw tiler::InputError("config names pipeline '" + cfg.pipeline +
                                    "' but the command line asked for '" + pipeline + "'");
        if (seed_opt->count() > 0) {
            cfg.seed = seed;
            cfg.has_seed = true;
        }
        if (out_opt->count() > 0) cfg.out_dir = out_dir;

        stage = "pipeline '" + pipeline + "'";
        const tiler::RunReport report = tiler::run(cfg);
        std::cout << report.render();
        std::cout << "wall-clock " << report.wall_ms << " ms\n";
        return report.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error in " << stage << ": " << e.what() << '\n';
        return 2;
    }
}
