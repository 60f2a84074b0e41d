// config.hpp — flat key-value run configuration: parsing, validation,
// canonical dump, and atomic output writing.
//
// Document format: one `key = value` per line, '#' starts a comment, blank
// lines ignored.  Parameters may be given directly (g_o, Delta, ...) or as
// raw ion/cavity inputs (Omega, Delta_a, Delta_c, eta_LD, phi) that are
// mapped through derive_effective on ingestion; mixing both forms is
// rejected, as is any unknown key.

#pragma once

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ioncav/error.hpp"
#include "ioncav/params.hpp"
#include "ioncav/sweep.hpp"

namespace ioncav {

using FlatDoc = std::vector<std::pair<std::string, std::string>>;

inline FlatDoc parse_flat_doc(std::istream& in) {
    FlatDoc doc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(errc::io, "config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw Error(errc::io, "config line " + std::to_string(lineno) + ": empty key");
        doc.emplace_back(key, value);
    }
    return doc;
}

struct RunConfig {
    std::string command;  // bistability | spectrum | entanglement | stability | sweep
    SweepKind kind = SweepKind::bistability;
    EffectiveParams params;
    GridSpec grid;
    double omega_start = 0.0, omega_stop = 0.0;
    int omega_count = 0;
    std::string out;
    std::string format = "csv";
    bool plot = false;
    BranchPolicy policy = BranchPolicy::smallest_stable;
    int jobs = 1;

    std::vector<double> omega_grid() const {
        if (omega_count <= 0) return {};
        return axis_values({"omega", omega_start, omega_stop, omega_count});
    }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw Error(errc::io, "key '" + key + "': not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw Error(errc::io, "key '" + key + "': trailing junk in '" + value + "'");
    return v;
}

inline int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw Error(errc::io, "key '" + key + "': expected an integer");
    return i;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw Error(errc::io, "key '" + key + "': expected true or false");
}

inline SweepKind parse_kind(const std::string& value) {
    if (value == "bistability") return SweepKind::bistability;
    if (value == "spectrum") return SweepKind::spectrum;
    if (value == "entanglement") return SweepKind::entanglement;
    if (value == "stability") return SweepKind::stability;
    throw Error(errc::io, "unknown kind '" + value + "'");
}

inline BranchPolicy parse_policy(const std::string& value) {
    if (value == "smallest-stable") return BranchPolicy::smallest_stable;
    if (value == "largest-stable") return BranchPolicy::largest_stable;
    throw Error(errc::io, "unknown branch policy '" + value + "'");
}

}  // namespace detail

inline RunConfig make_run_config(const std::string& command, const FlatDoc& doc) {
    static const std::vector<std::string> raw_keys = {"Omega", "Delta_a", "Delta_c", "eta_LD", "phi"};
    static const std::vector<std::string> eff_keys = {"g_o", "Delta"};
    static const std::vector<std::string> common_keys = {
        "eta_pump_re", "eta_pump_im", "omega_m", "gamma", "Gamma", "n_a", "n_b"};
    static const std::vector<std::string> run_keys = {
        "kind", "grid_axis", "grid_start", "grid_stop", "grid_count",
        "grid2_axis", "grid2_start", "grid2_stop", "grid2_count",
        "omega_start", "omega_stop", "omega_count",
        "out", "format", "plot", "branch", "jobs"};

    std::map<std::string, std::string> kv;  // duplicates: last one wins
    for (const auto& [k, v] : doc) {
        const auto known = [&](const std::vector<std::string>& set) {
            return std::find(set.begin(), set.end(), k) != set.end();
        };
        if (!known(raw_keys) && !known(eff_keys) && !known(common_keys) && !known(run_keys))
            throw Error(errc::io, "unknown config key '" + k + "'");
        kv[k] = v;
    }

    const auto has = [&](const std::string& k) { return kv.count(k) != 0; };
    const auto num = [&](const std::string& k, double fallback) {
        return has(k) ? detail::parse_double(k, kv[k]) : fallback;
    };
    const auto require = [&](const std::string& k) {
        if (!has(k)) throw Error(errc::io, "missing required key '" + k + "'");
        return detail::parse_double(k, kv[k]);
    };

    RunConfig rc;
    rc.command = command;

    const bool raw_mode = has("Omega") || has("Delta_a");
    if (raw_mode && (has("g_o") || has("Delta")))
        throw Error(errc::io, "give either raw inputs (Omega, Delta_a, ...) or g_o/Delta, not both");
    if (raw_mode) {
        RawParams raw;
        raw.Omega = require("Omega");
        raw.Delta_a = require("Delta_a");
        raw.Delta_c = num("Delta_c", 0.0);
        raw.eta_LD = num("eta_LD", 0.0);
        raw.phi = num("phi", 0.0);
        raw.eta = {num("eta_pump_re", 0.0), num("eta_pump_im", 0.0)};
        raw.omega_m = require("omega_m");
        raw.gamma = require("gamma");
        raw.Gamma = require("Gamma");
        raw.n_a = num("n_a", 0.0);
        raw.n_b = num("n_b", 0.0);
        rc.params = derive_effective(raw);
    } else {
        rc.params.g_o = require("g_o");
        rc.params.Delta = require("Delta");
        rc.params.eta = {num("eta_pump_re", 0.0), num("eta_pump_im", 0.0)};
        rc.params.omega_m = require("omega_m");
        rc.params.gamma = require("gamma");
        rc.params.Gamma = require("Gamma");
        rc.params.n_a = num("n_a", 0.0);
        rc.params.n_b = num("n_b", 0.0);
    }

    if (command == "bistability") rc.kind = SweepKind::bistability;
    else if (command == "spectrum") rc.kind = SweepKind::spectrum;
    else if (command == "entanglement") rc.kind = SweepKind::entanglement;
    else if (command == "stability") rc.kind = SweepKind::stability;
    else if (command == "sweep") {
        if (!has("kind")) throw Error(errc::io, "command 'sweep' needs a kind key");
        rc.kind = detail::parse_kind(kv["kind"]);
    } else {
        throw Error(errc::io, "unknown command '" + command + "'");
    }
    if (command != "sweep" && has("kind"))
        throw Error(errc::io, "key 'kind' is only valid for the sweep command");

    if (!has("grid_axis")) throw Error(errc::io, "missing required key 'grid_axis'");
    if (!has("grid_count")) throw Error(errc::io, "missing required key 'grid_count'");
    rc.grid.axes.push_back({kv["grid_axis"], require("grid_start"), require("grid_stop"),
                            detail::parse_int("grid_count", kv["grid_count"])});
    if (has("grid2_axis"))
        rc.grid.axes.push_back({kv["grid2_axis"], require("grid2_start"), require("grid2_stop"),
                                detail::parse_int("grid2_count", kv["grid2_count"])});
    validate_grid(rc.grid);

    if (rc.kind == SweepKind::spectrum) {
        rc.omega_start = require("omega_start");
        rc.omega_stop = require("omega_stop");
        if (!has("omega_count")) throw Error(errc::io, "missing required key 'omega_count'");
        rc.omega_count = detail::parse_int("omega_count", kv["omega_count"]);
        if (rc.omega_count < 3)
            throw Error(errc::io, "omega_count must be at least 3");
    } else if (has("omega_start") || has("omega_stop") || has("omega_count")) {
        throw Error(errc::io, "omega_* keys are only valid for spectrum runs");
    }

    if (has("out")) rc.out = kv["out"];
    if (has("format")) {
        rc.format = kv["format"];
        if (rc.format != "csv" && rc.format != "json")
            throw Error(errc::io, "format must be csv or json");
    }
    if (has("plot")) rc.plot = detail::parse_bool("plot", kv["plot"]);
    if (has("branch")) rc.policy = detail::parse_policy(kv["branch"]);
    if (has("jobs")) {
        rc.jobs = detail::parse_int("jobs", kv["jobs"]);
        if (rc.jobs < 1) throw Error(errc::io, "jobs must be >= 1");
    }
    return rc;
}

/// Canonical flat document; re-parsing it with the same command reproduces
/// the RunConfig exactly.
inline std::string dump_config(const RunConfig& rc) {
    std::ostringstream os;
    const auto put = [&](const char* k, const std::string& v) { os << k << " = " << v << "\n"; };
    const auto putd = [&](const char* k, double v) { put(k, detail::fmt17(v)); };
    putd("g_o", rc.params.g_o);
    putd("Delta", rc.params.Delta);
    putd("eta_pump_re", rc.params.eta.real());
    putd("eta_pump_im", rc.params.eta.imag());
    putd("omega_m", rc.params.omega_m);
    putd("gamma", rc.params.gamma);
    putd("Gamma", rc.params.Gamma);
    putd("n_a", rc.params.n_a);
    putd("n_b", rc.params.n_b);
    if (rc.command == "sweep") put("kind", to_string(rc.kind));
    put("grid_axis", rc.grid.axes[0].name);
    putd("grid_start", rc.grid.axes[0].start);
    putd("grid_stop", rc.grid.axes[0].stop);
    put("grid_count", std::to_string(rc.grid.axes[0].count));
    if (rc.grid.axes.size() > 1) {
        put("grid2_axis", rc.grid.axes[1].name);
        putd("grid2_start", rc.grid.axes[1].start);
        putd("grid2_stop", rc.grid.axes[1].stop);
        put("grid2_count", std::to_string(rc.grid.axes[1].count));
    }
    if (rc.kind == SweepKind::spectrum) {
        putd("omega_start", rc.omega_start);
        putd("omega_stop", rc.omega_stop);
        put("omega_count", std::to_string(rc.omega_count));
    }
    if (!rc.out.empty()) put("out", rc.out);
    put("format", rc.format);
    put("plot", rc.plot ? "true" : "false");
    put("branch", to_string(rc.policy));
    put("jobs", std::to_string(rc.jobs));
    return os.str();
}

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partial file.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(errc::io, "cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out)
            throw Error(errc::io, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec)
        throw Error(errc::io, "rename to '" + path + "' failed: " + ec.message());
}

}  // namespace ioncav
