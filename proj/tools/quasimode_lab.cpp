#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qlab/experiments.hpp"

namespace {

struct SubArgs {
    std::string config_path;
    std::string out_path;
    std::string seed; // optional override, keeps full uint64 range as text
};

int run(const std::string& kind, const SubArgs& args) {
    qlab::Config cfg = qlab::Config::from_file(args.config_path);
    if (!args.seed.empty()) cfg.override_value("seed", args.seed);
    const qlab::ExperimentOutput out = qlab::run_experiment(kind, cfg);
    std::ofstream f(args.out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << args.out_path << "\n";
        return 1;
    }
    f << out.csv;
    f.close();
    if (!f) {
        std::cerr << "error: write failed for " << args.out_path << "\n";
        return 1;
    }
    std::cout << out.summary << "\n";
    return out.pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasimode-lab: spectral experiments on model manifolds"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> kinds = {
        {"bilinear-sweep", "product-norm growth across a frequency sweep"},
        {"l4-growth", "L4-norm growth of a quasimode family"},
        {"remainder-decay", "rank-truncation remainder bounds and rank budgets"},
        {"cluster-audit", "randomized cluster products and the triangle decomposition"},
        {"weyl-audit", "counting-function growth against the volume law"},
        {"split-audit", "projector and smooth-cutoff exactness checks"},
    };

    std::map<std::string, SubArgs> args;
    for (const auto& [name, help] : kinds) {
        CLI::App* sub = app.add_subcommand(name, help);
        SubArgs& a = args[name];
        sub->add_option("--config", a.config_path, "experiment config file")->required();
        sub->add_option("--out", a.out_path, "CSV output path")->required();
        sub->add_option("--seed", a.seed, "override the config seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // contract: 1 for every error
    }

    try {
        for (const auto& [name, help] : kinds)
            if (app.got_subcommand(name)) return run(name, args[name]);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
