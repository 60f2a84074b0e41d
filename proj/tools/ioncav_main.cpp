// ioncav — command-line front end for the ion-cavity optomechanics toolkit.
//
// Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure
// (the requested sweep produced no usable values, e.g. no stable branch
// anywhere).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ioncav/ioncav.hpp"

namespace {

struct CliFlags {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::string> format;
    bool plot = false;
    std::optional<std::string> branch;
    std::optional<int> jobs;
    bool dump_config = false;
};

void add_common_flags(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("--config", f.config_path, "flat key-value configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", f.out, "output file path");
    cmd->add_option("--format", f.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--plot", f.plot, "also write an SVG plot next to the output");
    cmd->add_option("--branch", f.branch, "branch selection policy")
        ->check(CLI::IsMember({"smallest-stable", "largest-stable"}));
    cmd->add_option("--jobs", f.jobs, "worker threads for the sweep")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--dump-config", f.dump_config,
                  "print the resolved configuration and exit");
}

int run_command(const std::string& command, const CliFlags& flags) {
    using namespace ioncav;

    std::ifstream in(flags.config_path);
    if (!in) {
        std::cerr << "error: cannot read config '" << flags.config_path << "'\n";
        return 1;
    }
    RunConfig rc = make_run_config(command, parse_flat_doc(in));

    if (flags.out) rc.out = *flags.out;
    if (flags.format) rc.format = *flags.format;
    if (flags.plot) rc.plot = true;
    if (flags.branch)
        rc.policy = *flags.branch == "largest-stable" ? BranchPolicy::largest_stable
                                                      : BranchPolicy::smallest_stable;
    if (flags.jobs) rc.jobs = *flags.jobs;

    const auto violations = validate(rc.params);
    if (!violations.empty()) {
        for (const auto& v : violations)
            std::cerr << "error: invalid parameter " << v.field << ": violates " << v.constraint
                      << "\n";
        return 1;
    }

    if (flags.dump_config) {
        std::cout << dump_config(rc);
        return 0;
    }
    if (rc.out.empty()) {
        std::cerr << "error: no output path (--out or 'out' config key)\n";
        return 1;
    }

    SweepOptions opt;
    opt.jobs = rc.jobs;
    opt.policy = rc.policy;
    opt.omega_grid = rc.omega_grid();
    const ResultTable table = run_sweep(rc.params, rc.grid, rc.kind, opt);

    // a run that produced not a single measured value is a numerical failure;
    // branch diagnostics (Delta_tilde, g2) do not count
    std::size_t first_value_col = rc.grid.axes.size();
    if (rc.kind == SweepKind::entanglement)
        first_value_col = table.columns.size() - 1;  // E_N
    bool any_value = false;
    for (const auto& row : table.rows)
        for (std::size_t j = first_value_col; j < row.size() && !any_value; ++j)
            if (std::holds_alternative<double>(row[j])) any_value = true;
    if (!any_value) {
        std::cerr << "error: no usable values anywhere on the grid (no stable branch?)\n";
        return 2;
    }

    write_file_atomic(rc.out, rc.format == "json" ? to_json(table) : to_csv(table));
    if (rc.plot) {
        std::filesystem::path svg_path(rc.out);
        svg_path.replace_extension(".svg");
        write_file_atomic(svg_path.string(), emit_plot(table, rc.kind));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ion-cavity optomechanics: bistability, fluctuation spectra and "
                 "steady-state entanglement"};
    app.require_subcommand(1);

    static const char* commands[] = {"bistability", "spectrum", "entanglement", "stability",
                                     "sweep"};
    static const char* descriptions[] = {
        "steady-state photon-number roots over a detuning grid",
        "displacement-spectrum map over a detuning grid",
        "logarithmic negativity over a detuning grid",
        "branch stability diagnostics over a detuning grid",
        "generic grid sweep (kind chosen in the config)"};

    CliFlags flags;
    std::string chosen;
    for (std::size_t i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
        add_common_flags(sub, flags);
        sub->callback([&chosen, name = std::string(commands[i])] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        return run_command(chosen, flags);
    } catch (const ioncav::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        // configuration problems are usage errors; everything else is numerical
        return e.code() == ioncav::errc::io || e.code() == ioncav::errc::invalid_argument ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
