// hyperspec command-line front end.
//
//   hyperspec <command> --n N --d D --k K --seeds COUNT|s1,s2,... \
//       [--lmax L] [--trials T] [--slack S] [--out DIR] [--format json|csv]
//
// A bare integer for --seeds means seeds 1..COUNT; a comma list is used
// verbatim. Exit codes: 0 ok, 2 invalid parameters, 3 i/o error,
// 4 internal error.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperspec/cli.hpp"

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    if (text.find(',') == std::string::npos) {
        const std::uint64_t count = std::stoull(text);
        for (std::uint64_t s = 1; s <= count; ++s) seeds.push_back(s);
        return seeds;
    }
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) throw std::invalid_argument("empty seed in list");
        seeds.push_back(std::stoull(token));
    }
    return seeds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(d,k)-regular hypergraph spectral experiments"};
    app.require_subcommand(1);

    hyperspec::ExperimentSpec spec;
    std::string seeds_text = "1";

    for (const char* name :
         {"sample", "gap", "esd", "nb-spectrum", "walk-mix", "expansion", "local-law"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--n", spec.n, "number of vertices")->required();
        sub->add_option("--d", spec.d, "vertex degree")->required();
        sub->add_option("--k", spec.k, "hyperedge size")->required();
        sub->add_option("--seeds", seeds_text, "seed count or comma-separated list");
        sub->add_option("--lmax", spec.lmax, "walk length horizon");
        sub->add_option("--trials", spec.trials, "random subset trials");
        sub->add_option("--slack", spec.slack, "additive slack on asymptotic bounds");
        sub->add_option("--out", spec.output_dir, "output directory");
        sub->add_option("--format", spec.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return hyperspec::kExitInvalidParameters;
    }

    spec.command = app.get_subcommands().front()->get_name();
    try {
        spec.seeds = parse_seeds(seeds_text);
    } catch (const std::exception&) {
        std::cerr << "hyperspec: invalid parameters: bad --seeds value '" << seeds_text
                  << "'\n";
        return hyperspec::kExitInvalidParameters;
    }
    return hyperspec::run(spec);
}
