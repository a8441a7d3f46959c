#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "wignerkin/parallel.hpp"
#include "wignerkin/solver.hpp"

namespace fs = std::filesystem;
using namespace wignerkin;
using namespace wignerkin::cli;

int main(int argc, char** argv) {
    CLI::App app{"wignerkin: spectral Wigner/density-matrix Boltzmann laboratory"};
    app.require_subcommand(1);

    CommonOptions opt;
    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--config", opt.config_path, "experiment config file")->required();
        sc->add_option("--out", opt.out_dir, "output directory");
        sc->add_option("--seed", opt.seed, "RNG seed override");
        sc->add_option("--threads", opt.threads, "worker threads (0 = WIGNERKIN_THREADS or 1)");
        sc->add_flag("--quiet", opt.quiet, "suppress progress output");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run a time integration, write trajectory CSV");
    CLI::App* vid = app.add_subcommand("verify-identities", "weight/derivative identity suite");
    CLI::App* ves = app.add_subcommand("verify-estimates", "estimate-lab pass/fail checks");
    CLI::App* prb = app.add_subcommand("probe", "continuity and bilinear-constant probes");
    CLI::App* rtp = app.add_subcommand("roundtrip", "transform unitarity and inverse checks");
    CLI::App* swp = app.add_subcommand("sweep", "estimate-lab sweep table (no pass/fail)");
    for (CLI::App* sc : {sim, vid, ves, prb, rtp, swp}) add_common(sc);

    CLI11_PARSE(app, argc, argv);

    if (opt.threads <= 0) {
        if (const char* env = std::getenv("WIGNERKIN_THREADS")) opt.threads = std::atoi(env);
        if (opt.threads <= 0) opt.threads = 1;
    }
    set_thread_count(opt.threads);

    try {
        const Config cfg = Config::parse_file(opt.config_path);
        fs::create_directories(opt.out_dir);
        if (sim->parsed()) return cmd_simulate(cfg, opt);
        if (vid->parsed()) return cmd_verify_identities(cfg, opt);
        if (ves->parsed()) return cmd_verify_estimates(cfg, opt);
        if (prb->parsed()) return cmd_probe(cfg, opt);
        if (rtp->parsed()) return cmd_roundtrip(cfg, opt);
        if (swp->parsed()) return cmd_sweep(cfg, opt);
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return e.nan ? 4 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
