#pragma once
// Output artifacts: NDJSON time series and CSV velocity-space snapshots with
// a sidecar metadata JSON. Every artifact records the config hash. Field
// formatting is bit-stable (17 significant digits for CSV; shortest
// round-trip doubles in JSON).

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "bne/config.hpp"
#include "bne/integrate.hpp"
#include "json.hpp"

namespace bne {

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

/// JSON null for NaN (JSON has no literal for it), the value otherwise.
inline nlohmann::json finite_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

}  // namespace detail

inline nlohmann::json flags_json(const SimFlags& f) {
    nlohmann::json j;
    j["blowup"] = f.blowup;
    j["blowup_time"] = f.blowup ? nlohmann::json(f.blowup_time) : nlohmann::json(nullptr);
    j["omega_floored"] = f.omega_floored;
    j["undetermined"] = f.undetermined;
    return j;
}

inline nlohmann::json series_point_json(const SeriesPoint& p, int dim, const SimFlags& flags) {
    nlohmann::json j;
    j["step"] = p.step;
    j["t"] = p.t;
    j["rho"] = p.mom.rho;
    nlohmann::json u = nlohmann::json::array();
    for (int ax = 0; ax < dim; ++ax) u.push_back(p.mom.u[ax]);
    j["u"] = u;
    j["e"] = p.mom.e;
    double u2 = 0.0;
    for (int ax = 0; ax < dim; ++ax) u2 += p.mom.u[ax] * p.mom.u[ax];
    j["Ec"] = p.mom.rho * (p.mom.e + 0.5 * u2);
    j["entropy"] = p.entropy_defined ? nlohmann::json(p.entropy) : nlohmann::json(nullptr);
    j["entropy_defined"] = p.entropy_defined;
    j["lp1"] = p.lp1;
    j["lp2"] = p.lp2;
    j["linf"] = detail::finite_or_null(p.linf_q);
    j["dissipation"] = detail::finite_or_null(p.dissipation);
    j["max_f"] = p.max_f;
    j["residual"] = detail::finite_or_null(p.relax_err);
    j["omega"] = p.omega;
    j["flags"] = flags_json(flags);
    return j;
}

/// NDJSON series: a meta object on the first line (config hash, provenance),
/// then one object per recorded point.
inline void write_series(const RunRecord& rec, const SimConfig& cfg, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("write_series: cannot open '" + path + "'");
    nlohmann::json meta;
    meta["meta"] = {{"config_hash", config_hash(cfg)},
                    {"dim", cfg.dim},
                    {"n", cfg.n},
                    {"final_step", rec.final_step},
                    {"final_time", rec.final_time}};
    os << meta.dump() << '\n';
    for (const SeriesPoint& p : rec.series)
        os << series_point_json(p, cfg.dim, rec.flags).dump() << '\n';
    if (!os) throw io_error("write_series: write failed for '" + path + "'");
}

/// CSV snapshot: one header line (v0,...,f), one row per grid node with the
/// physical velocity coordinates and the f-variable value; plus a sidecar
/// '<path>.meta.json' describing the frame, the grid, and the config hash.
inline void write_snapshot(const Snapshot& snap, const GridSpec& g, const SimConfig& cfg,
                           const std::string& path) {
    if (snap.G.size() != g.size()) throw io_error("write_snapshot: field/grid size mismatch");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("write_snapshot: cannot open '" + path + "'");
    os << (g.dim == 2 ? "v0,v1,f" : "v0,v1,v2,f") << '\n';
    const double scale = snap.frame.phys_scale();
    for (std::size_t j = 0; j < g.size(); ++j) {
        const std::array<double, 3> v = node_velocity(snap.frame, g, j);
        for (int ax = 0; ax < g.dim; ++ax) os << detail::g17(v[ax]) << ',';
        os << detail::g17(scale * snap.G[j]) << '\n';
    }
    if (!os) throw io_error("write_snapshot: write failed for '" + path + "'");

    nlohmann::json meta;
    meta["config_hash"] = config_hash(cfg);
    meta["step"] = snap.step;
    meta["t"] = snap.t;
    meta["frame"] = {{"lambda", snap.frame.lambda}, {"omega", snap.frame.omega},
                     {"mu", snap.frame.mu},         {"L", snap.frame.half_width_L},
                     {"u", {snap.frame.u[0], snap.frame.u[1], snap.frame.u[2]}},
                     {"dim", snap.frame.dim}};
    meta["grid"] = {{"dim", g.dim},
                    {"n", g.n},
                    {"L", g.half_width_L},
                    {"support_S", g.support_S},
                    {"trunc_R", g.trunc_R}};
    std::ofstream ms(path + ".meta.json", std::ios::binary);
    if (!ms) throw io_error("write_snapshot: cannot open '" + path + ".meta.json'");
    ms << meta.dump(2) << '\n';
    if (!ms) throw io_error("write_snapshot: write failed for '" + path + ".meta.json'");
}

/// Read a snapshot CSV back (test helper and external tooling convenience).
/// Returns rows of dim+1 columns.
inline std::vector<std::vector<double>> read_snapshot_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("read_snapshot_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line)) throw io_error("read_snapshot_csv: empty file '" + path + "'");
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (start <= line.size()) {
            const std::size_t comma = line.find(',', start);
            row.push_back(
                std::stod(line.substr(start, comma == std::string::npos ? comma : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace bne
