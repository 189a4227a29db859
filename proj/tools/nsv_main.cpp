// Command-line front-end: scenario verification, randomized property
// sweeps, and bundled fixtures. Exit codes: 0 all checks pass, 1 a physics
// check failed, 2 input error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nsv/error.hpp"
#include "nsv/scenario.hpp"
#include "nsv/version.hpp"

namespace {

struct CommonFlags {
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<std::uint64_t> budget;
    std::string format = "text";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--tol", flags.tol, "Override tolerance for every check");
    cmd->add_option("--seed", flags.seed, "Base seed for randomized parts");
    cmd->add_option("--trials", flags.trials, "Override trial counts");
    cmd->add_option("--budget", flags.budget, "Override search budgets");
    cmd->add_option("--format", flags.format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

nsv::Overrides to_overrides(const CommonFlags& flags) {
    return nsv::Overrides{flags.tol, flags.seed, flags.trials, flags.budget};
}

int emit(const nsv::RunReport& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.to_json().dump(2) << "\n";
    } else {
        std::cout << report.to_text();
    }
    return report.overall_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"no-signaling verification toolkit"};
    app.set_version_flag("--version", std::string(nsv::kVersion));
    app.require_subcommand(1);

    // verify <file> [--fixture name]
    CommonFlags verify_flags;
    std::string scenario_path;
    std::string verify_fixture;
    CLI::App* verify = app.add_subcommand("verify", "Run a scenario file");
    verify->add_option("file", scenario_path, "Scenario file (JSON)");
    verify->add_option("--fixture", verify_fixture, "Run a bundled scenario instead");
    add_common(verify, verify_flags);

    // sweep <kind>
    CommonFlags sweep_flags;
    std::string sweep_kind;
    std::string sweep_dims;
    bool planted_bug = false;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a seeded randomized property sweep");
    sweep->add_option("kind", sweep_kind, "nosignal | gleason | boxes | search")->required();
    sweep->add_option("--dims", sweep_dims, "Comma-separated dims, e.g. 2x2,3x3 or 3,4");
    sweep->add_flag("--planted-bug", planted_bug,
                    "search only: admit non-physical instruments to prove sensitivity");
    add_common(sweep, sweep_flags);

    // fixture list | run <name>
    CommonFlags fixture_flags;
    std::string fixture_name;
    CLI::App* fixture = app.add_subcommand("fixture", "Bundled scenarios");
    CLI::App* fixture_list = fixture->add_subcommand("list", "List bundled scenario names");
    CLI::App* fixture_run = fixture->add_subcommand("run", "Run a bundled scenario");
    fixture_run->add_option("name", fixture_name, "Fixture name")->required();
    add_common(fixture_run, fixture_flags);
    fixture->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            if (scenario_path.empty() == verify_fixture.empty()) {
                std::cerr << "error: give either a scenario file or --fixture\n";
                return 2;
            }
            nsv::RunReport report;
            if (!verify_fixture.empty()) {
                const auto& fixtures = nsv::bundled_fixtures();
                const auto it = fixtures.find(verify_fixture);
                if (it == fixtures.end()) {
                    std::cerr << "error: unknown fixture '" << verify_fixture << "'\n";
                    return 2;
                }
                report = nsv::run_scenario_text(it->second, to_overrides(verify_flags));
            } else {
                report = nsv::run_scenario_file(scenario_path, to_overrides(verify_flags));
            }
            return emit(report, verify_flags.format);
        }

        if (sweep->parsed()) {
            nsv::SweepSpec spec;
            spec.kind = nsv::sweep_kind_from_name(sweep_kind);
            if (!sweep_dims.empty()) {
                spec.dims = nsv::parse_dims(sweep_dims, spec.kind);
            }
            if (sweep_flags.trials) spec.trials = *sweep_flags.trials;
            if (sweep_flags.seed) spec.seed = *sweep_flags.seed;
            if (sweep_flags.tol) spec.tol = *sweep_flags.tol;
            if (sweep_flags.budget) spec.budget = *sweep_flags.budget;
            spec.planted_bug = planted_bug;
            return emit(nsv::run_sweep(spec), sweep_flags.format);
        }

        if (fixture_list->parsed()) {
            for (const auto& [name, text] : nsv::bundled_fixtures()) {
                std::cout << name << "\n";
            }
            return 0;
        }
        if (fixture_run->parsed()) {
            const auto& fixtures = nsv::bundled_fixtures();
            const auto it = fixtures.find(fixture_name);
            if (it == fixtures.end()) {
                std::cerr << "error: unknown fixture '" << fixture_name << "'\n";
                return 2;
            }
            const nsv::RunReport report =
                nsv::run_scenario_text(it->second, to_overrides(fixture_flags));
            return emit(report, fixture_flags.format);
        }
    } catch (const nsv::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
