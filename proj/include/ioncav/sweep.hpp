// sweep.hpp — deterministic parameter-grid evaluation of the pipeline
// stages.  Grid points are independent; a worker pool of configurable size
// evaluates them and results are gathered in canonical row-major order
// (first axis outermost), so the output is identical for any worker count.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "ioncav/entanglement.hpp"
#include "ioncav/error.hpp"
#include "ioncav/params.hpp"
#include "ioncav/spectrum.hpp"
#include "ioncav/steady_state.hpp"
#include "ioncav/version.hpp"

namespace ioncav {

enum class SweepKind { bistability, spectrum, entanglement, stability };

inline const char* to_string(SweepKind k) {
    switch (k) {
        case SweepKind::bistability: return "bistability";
        case SweepKind::spectrum: return "spectrum";
        case SweepKind::entanglement: return "entanglement";
        case SweepKind::stability: return "stability";
    }
    return "?";
}

inline const char* to_string(BranchPolicy p) {
    return p == BranchPolicy::smallest_stable ? "smallest-stable" : "largest-stable";
}

struct GridAxis {
    std::string name;  // an EffectiveParams field or "Delta"
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

struct GridSpec {
    std::vector<GridAxis> axes;  // 1 or 2

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline void set_param(EffectiveParams& eff, const std::string& name, double value) {
    if (name == "Delta") eff.Delta = value;
    else if (name == "g_o") eff.g_o = value;
    else if (name == "eta") {
        const double mag = std::abs(eff.eta);
        eff.eta = mag > 0.0 ? eff.eta / mag * value : std::complex<double>(value, 0.0);
    } else if (name == "omega_m") eff.omega_m = value;
    else if (name == "gamma") eff.gamma = value;
    else if (name == "Gamma") eff.Gamma = value;
    else if (name == "n_a") eff.n_a = value;
    else if (name == "n_b") eff.n_b = value;
    else throw Error(errc::invalid_argument, "unknown sweep axis '" + name + "'");
}

inline void validate_grid(const GridSpec& grid) {
    if (grid.axes.empty() || grid.axes.size() > 2)
        throw Error(errc::invalid_argument, "grid needs 1 or 2 axes");
    for (const auto& ax : grid.axes) {
        EffectiveParams probe;
        set_param(probe, ax.name, 0.0);  // throws on bad name
        if (ax.count < 1)
            throw Error(errc::invalid_argument, "axis count must be >= 1");
        if (!(ax.start <= ax.stop))
            throw Error(errc::invalid_argument, "axis start must not exceed stop");
    }
}

inline std::vector<double> axis_values(const GridAxis& ax) {
    std::vector<double> v(static_cast<std::size_t>(ax.count));
    for (int i = 0; i < ax.count; ++i)
        v[static_cast<std::size_t>(i)] =
            ax.count == 1 ? ax.start
                          : ax.start + (ax.stop - ax.start) * i / double(ax.count - 1);
    return v;
}

// empty cell = not available
using Cell = std::variant<std::monostate, double, bool, std::string>;

struct ResultTable {
    std::vector<std::string> provenance;  // emitted as '#' lines in CSV
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct SweepOptions {
    int jobs = 1;
    BranchPolicy policy = BranchPolicy::smallest_stable;
    std::vector<double> omega_grid;  // spectrum kind only
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string axis_column(const GridAxis& ax) {
    return ax.name == "Delta" ? "Delta_over_gamma" : ax.name;
}

inline std::vector<std::string> provenance_lines(const EffectiveParams& eff,
                                                 const GridSpec& grid, SweepKind kind,
                                                 const SweepOptions& opt) {
    std::vector<std::string> lines;
    lines.push_back(version_string);
    lines.push_back(std::string("kind: ") + to_string(kind));
    lines.push_back("params: Delta=" + fmt17(eff.Delta) + " g_o=" + fmt17(eff.g_o) +
                    " eta_re=" + fmt17(eff.eta.real()) + " eta_im=" + fmt17(eff.eta.imag()) +
                    " omega_m=" + fmt17(eff.omega_m) + " gamma=" + fmt17(eff.gamma) +
                    " Gamma=" + fmt17(eff.Gamma) + " n_a=" + fmt17(eff.n_a) +
                    " n_b=" + fmt17(eff.n_b));
    for (const auto& ax : grid.axes)
        lines.push_back("grid: " + ax.name + " from " + fmt17(ax.start) + " to " +
                        fmt17(ax.stop) + " count " + std::to_string(ax.count));
    if (!opt.omega_grid.empty())
        lines.push_back("omega: from " + fmt17(opt.omega_grid.front()) + " to " +
                        fmt17(opt.omega_grid.back()) + " count " +
                        std::to_string(opt.omega_grid.size()));
    lines.push_back(std::string("branch: ") + to_string(opt.policy));
    return lines;
}

inline Cell opt_double(double v) {
    if (std::isnan(v)) return std::monostate{};
    return v;
}

inline void eval_point(SweepKind kind, const EffectiveParams& at, const SweepOptions& opt,
                       std::vector<Cell>& row) {
    switch (kind) {
        case SweepKind::bistability: {
            const auto branches = solve_branches(at);
            for (std::size_t k = 0; k < 3; ++k)
                row.push_back(k < branches.size() ? Cell{branches[k].x} : Cell{});
            for (std::size_t k = 0; k < 3; ++k)
                row.push_back(k < branches.size() ? Cell{branches[k].stable} : Cell{});
            break;
        }
        case SweepKind::stability: {
            const auto branches = solve_branches(at);
            if (branches.empty()) {
                row.insert(row.end(), 5, Cell{});
                break;
            }
            const auto chosen = select_branch(branches, opt.policy);
            const SteadyStateBranch& br = chosen ? *chosen : branches.front();
            row.push_back(br.x);
            row.push_back(br.Delta_tilde / at.gamma);
            row.push_back(br.g_2 / at.gamma);
            row.push_back(br.stable);
            if (br.Delta_tilde == 0.0) row.push_back(Cell{});
            else row.push_back(routh_hurwitz_stable(br.Delta_tilde, at.omega_m, at.gamma, br.g_2));
            break;
        }
        case SweepKind::entanglement: {
            const auto branches = solve_branches(at);
            const auto chosen = select_branch(branches, opt.policy);
            if (chosen) {
                row.push_back(chosen->Delta_tilde / at.gamma);
                row.push_back(chosen->g_2 / at.gamma);
                row.push_back(true);
                const DriftMatrix M = drift_matrix(chosen->Delta_tilde, at.omega_m, at.gamma,
                                                   at.Gamma, chosen->g_2);
                const DiffusionMatrix D = diffusion_matrix(at.gamma, at.Gamma, at.n_a, at.n_b);
                row.push_back(log_negativity(solve_lyapunov(M, D)));
            } else if (!branches.empty()) {
                row.push_back(branches.front().Delta_tilde / at.gamma);
                row.push_back(branches.front().g_2 / at.gamma);
                row.push_back(false);
                row.push_back(Cell{});
            } else {
                row.insert(row.end(), 4, Cell{});
            }
            break;
        }
        case SweepKind::spectrum: {
            const auto chosen = select_branch(solve_branches(at), opt.policy);
            if (!chosen) {
                row.insert(row.end(), opt.omega_grid.size(), Cell{});
                break;
            }
            for (double w : opt.omega_grid)
                row.push_back(displacement_spectrum(w, at, *chosen));
            break;
        }
    }
}

}  // namespace detail

/// Evaluates `kind` at every grid point.  Per-point failures leave the value
/// cells of that row empty; they never abort the sweep.
inline ResultTable run_sweep(const EffectiveParams& eff, const GridSpec& grid, SweepKind kind,
                             const SweepOptions& opt = {}) {
    validate_grid(grid);
    if (kind == SweepKind::spectrum) {
        if (grid.axes.size() != 1)
            throw Error(errc::invalid_argument, "spectrum sweep takes exactly 1 axis");
        if (opt.omega_grid.size() < 3)
            throw Error(errc::invalid_argument, "spectrum sweep needs an omega grid");
    }

    ResultTable table;
    table.provenance = detail::provenance_lines(eff, grid, kind, opt);
    for (const auto& ax : grid.axes) table.columns.push_back(detail::axis_column(ax));
    switch (kind) {
        case SweepKind::bistability:
            for (const char* c : {"x_root1", "x_root2", "x_root3", "stable1", "stable2", "stable3"})
                table.columns.push_back(c);
            break;
        case SweepKind::stability:
            for (const char* c : {"x", "Delta_tilde_over_gamma", "g2_over_gamma",
                                  "eigen_stable", "routh_hurwitz_stable"})
                table.columns.push_back(c);
            break;
        case SweepKind::entanglement:
            for (const char* c : {"Delta_tilde_over_gamma", "g2_over_gamma", "stable", "E_N"})
                table.columns.push_back(c);
            break;
        case SweepKind::spectrum:
            for (double w : opt.omega_grid)
                table.columns.push_back(detail::fmt17(w / eff.gamma));
            break;
    }

    std::vector<std::vector<double>> axes_values;
    for (const auto& ax : grid.axes) axes_values.push_back(axis_values(ax));
    std::size_t total = 1;
    for (const auto& v : axes_values) total *= v.size();

    table.rows.assign(total, {});
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            // row-major, first axis outermost
            std::vector<double> coords(axes_values.size());
            std::size_t rem = idx;
            for (std::size_t a = axes_values.size(); a-- > 0;) {
                coords[a] = axes_values[a][rem % axes_values[a].size()];
                rem /= axes_values[a].size();
            }
            EffectiveParams at = eff;
            std::vector<Cell>& row = table.rows[idx];
            for (std::size_t a = 0; a < coords.size(); ++a)
                set_param(at, grid.axes[a].name, coords[a]);
            for (std::size_t a = 0; a < coords.size(); ++a)
                row.push_back(grid.axes[a].name == "Delta" ? coords[a] / at.gamma : coords[a]);
            try {
                detail::eval_point(kind, at, opt, row);
            } catch (const Error&) {
                row.resize(coords.size());
                row.insert(row.end(), table.columns.size() - coords.size(), Cell{});
            }
        }
    };

    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return table;
}

}  // namespace ioncav
