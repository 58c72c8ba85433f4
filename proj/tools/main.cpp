#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    using namespace dampwave::cli;
    CLI::App app{"Damped wave experiments: linear decay rates, semilinear runs, blow-up probes and exponent tables"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dampwave 0.1.0");

    struct Flags {
        std::string config;
        std::string out;
        bool quiet = false;
        std::uint64_t seed = 0;
    };
    std::map<std::string, Flags> flags;
    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name);
        auto& f = flags[name];
        sub->add_option("--config", f.config, "configuration file (section.key = value lines)")->required();
        sub->add_option("--out", f.out, "output directory (overrides output.dir)");
        sub->add_flag("--quiet", f.quiet, "suppress the report on stdout");
        sub->add_option("--seed", f.seed, "override the data seeds");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    for (const auto& name : command_names()) {
        auto* sub = app.get_subcommand(name);
        if (!sub->parsed()) continue;
        const auto& f = flags[name];
        std::ifstream in(f.config, std::ios::binary);
        if (!in) {
            std::cerr << "cannot read config file '" << f.config << "'\n";
            return kConfigError;
        }
        std::stringstream text;
        text << in.rdbuf();
        std::optional<std::uint64_t> seed;
        if (sub->count("--seed") > 0) seed = f.seed;
        return dispatch(name, text.str(), f.out, seed, f.quiet, std::cout, std::cerr);
    }
    return kConfigError;
}
