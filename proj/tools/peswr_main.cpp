#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "peswr/experiments.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    uint64_t seed = 0;
    int threads = 0;
    bool seed_set = false;
    bool out_set = false;
    bool threads_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
    cmd->add_option("--config", fl.config_path, "key=value config file");
    cmd->add_option("--out", fl.out_dir, "output directory")->each([&](const std::string&) {
        fl.out_set = true;
    });
    cmd->add_option("--seed", fl.seed, "random seed override")->each([&](const std::string&) {
        fl.seed_set = true;
    });
    cmd->add_option("--threads", fl.threads, "worker threads (2 runs the subdomains concurrently)")
        ->each([&](const std::string&) { fl.threads_set = true; });
}

peswr::RunConfig load(const CommonFlags& fl, peswr::ExperimentKind kind,
                      bool force_kind) {
    peswr::RunConfig cfg;
    if (!fl.config_path.empty()) cfg = peswr::parse_config(fl.config_path);
    peswr::apply_env_overrides(cfg);
    if (force_kind) cfg.experiment = kind;
    if (fl.out_set) cfg.out_dir = fl.out_dir;
    if (fl.seed_set) cfg.seed = fl.seed;
    if (fl.threads_set) cfg.threads = fl.threads;
    return cfg;
}

int dispatch(const peswr::RunConfig& cfg) {
    const int rc = peswr::run_experiment(cfg);
    std::cout << "wrote " << cfg.out_dir << "/manifest.txt\n";
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertical-slice ocean model with Schwarz waveform relaxation"};
    app.require_subcommand(1);

    CommonFlags mono_fl, swr_fl, opt_fl, sym_fl, conv_fl, dump_fl;

    CLI::App* mono = app.add_subcommand("run-mono", "single-domain reference run");
    add_common(mono, mono_fl);
    CLI::App* swr = app.add_subcommand("run-swr", "two-subdomain waveform relaxation run");
    add_common(swr, swr_fl);
    CLI::App* opt = app.add_subcommand("optimize-alpha", "sweep the alpha parameter");
    add_common(opt, opt_fl);
    CLI::App* sym = app.add_subcommand("analyze-symbols", "root/symbol asymptotics table");
    add_common(sym, sym_fl);
    CLI::App* conv = app.add_subcommand("convergence-study", "transport order study");
    add_common(conv, conv_fl);
    CLI::App* dump = app.add_subcommand("dump-config", "print the resolved configuration");
    add_common(dump, dump_fl);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mono->parsed())
            return dispatch(load(mono_fl, peswr::ExperimentKind::Mono, true));
        if (swr->parsed()) {
            peswr::RunConfig cfg = load(swr_fl, peswr::ExperimentKind::SwrStep, false);
            if (cfg.experiment != peswr::ExperimentKind::SwrZeroTest &&
                cfg.experiment != peswr::ExperimentKind::SwrStep)
                cfg.experiment = peswr::ExperimentKind::SwrStep;
            return dispatch(cfg);
        }
        if (opt->parsed())
            return dispatch(load(opt_fl, peswr::ExperimentKind::OptimizeAlpha, true));
        if (sym->parsed())
            return dispatch(load(sym_fl, peswr::ExperimentKind::AnalyzeSymbols, true));
        if (conv->parsed())
            return dispatch(load(conv_fl, peswr::ExperimentKind::ConvergenceStudy, true));
        if (dump->parsed()) {
            const peswr::RunConfig cfg =
                load(dump_fl, peswr::ExperimentKind::Mono, false);
            peswr::dump_config(std::cout, cfg);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
