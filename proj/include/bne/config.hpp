#pragma once
// Run configuration: a line-oriented key = value format with precise
// diagnostics, cross-field validation, and assembly of a ready-to-step
// simulation (grid + kernel table + initial state + workspace).

#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bne/collision.hpp"
#include "bne/common.hpp"
#include "bne/diagnostics.hpp"
#include "bne/equilibrium.hpp"
#include "bne/frame.hpp"
#include "bne/grid.hpp"
#include "bne/integrate.hpp"
#include "bne/kernel.hpp"
#include "bne/quantum.hpp"

namespace bne {

enum class KernelChoice { maxwell2d, hardsphere3d, vhs };
enum class StatsChoice { classical, fermi, bose };
enum class IcChoice { quantum_maxwellian, classical_maxwellian, ball_indicator };
enum class IntegratorChoice { euler, rk2ssp };

/// Full description of one run. Defaults are the documented ones; fields that
/// have no meaning for a given choice (e.g. kernel_gamma outside vhs) are
/// simply unused.
struct SimConfig {
    int dim = 2;
    int n = 32;
    double L = 8.0;
    double trunc_ratio = 1.0;

    KernelChoice kernel = KernelChoice::maxwell2d;
    double kernel_gamma = 0.0;  ///< vhs only; maxwell2d/hardsphere3d imply 0/1
    double kernel_cphi = 1.0;
    int M = 8;   ///< 2D angular nodes
    int M1 = 4;  ///< 3D theta nodes
    int M2 = 4;  ///< 3D phi nodes

    StatsChoice stats = StatsChoice::classical;
    std::optional<double> hbar;  ///< quantum: exactly one of hbar / r
    std::optional<double> r;     ///< hbar = r * hbar_star(nominal IC moments)

    bool rescaling = false;
    IntegratorChoice integrator = IntegratorChoice::rk2ssp;
    double dt = 0.025;
    double t_final = 1.0;
    double c = 1.0;  ///< collision time scaling

    IcChoice ic = IcChoice::classical_maxwellian;
    double ic_rho = 1.0;
    std::array<double, 3> ic_u{0.0, 0.0, 0.0};
    double ic_sigma = 1.0;  ///< Maxwellian temperature
    double ic_e = 1.0;      ///< ball-indicator specific internal energy

    int record_every = 1;
    std::vector<double> snapshot_times;
    bool deterministic = false;
    int threads = 1;
};

namespace detail {

struct KeyPos {
    int line = 0;
    int col = 0;
};

struct ParseScratch {
    std::map<std::string, KeyPos> seen;
    int ic_u_count = 0;
};

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_real(const std::string& v, const std::string& key, int line, int col) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw config_error("invalid number for '" + key + "': '" + v + "'", line, col);
    }
    if (used != v.size())
        throw config_error("trailing characters after number for '" + key + "': '" + v + "'",
                           line, col);
    if (!std::isfinite(x))
        throw config_error("non-finite value for '" + key + "'", line, col);
    return x;
}

inline int parse_int(const std::string& v, const std::string& key, int line, int col) {
    const double x = parse_real(v, key, line, col);
    const int i = int(x);
    if (double(i) != x)
        throw config_error("expected an integer for '" + key + "': '" + v + "'", line, col);
    return i;
}

inline bool parse_bool(const std::string& v, const std::string& key, int line, int col) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw config_error("expected true/false for '" + key + "': '" + v + "'", line, col);
}

inline std::vector<double> parse_list(const std::string& v, const std::string& key, int line,
                                      int col) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        std::size_t comma = v.find(',', start);
        const std::string piece =
            trim(v.substr(start, comma == std::string::npos ? comma : comma - start));
        if (piece.empty())
            throw config_error("empty element in list for '" + key + "'", line, col);
        out.push_back(parse_real(piece, key, line, col));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline void apply_key(SimConfig& cfg, ParseScratch& ps, const std::string& key,
                      const std::string& value, int line, int kcol, int vcol) {
    if (ps.seen.count(key))
        throw config_error("duplicate key '" + key + "' (first set on line " +
                               std::to_string(ps.seen[key].line) + ")",
                           line, kcol);
    ps.seen[key] = {line, kcol};

    if (key == "dim") {
        cfg.dim = parse_int(value, key, line, vcol);
    } else if (key == "n") {
        cfg.n = parse_int(value, key, line, vcol);
    } else if (key == "L") {
        cfg.L = parse_real(value, key, line, vcol);
    } else if (key == "trunc_ratio") {
        cfg.trunc_ratio = parse_real(value, key, line, vcol);
    } else if (key == "kernel") {
        if (value == "maxwell2d")
            cfg.kernel = KernelChoice::maxwell2d;
        else if (value == "hardsphere3d")
            cfg.kernel = KernelChoice::hardsphere3d;
        else if (value == "vhs")
            cfg.kernel = KernelChoice::vhs;
        else
            throw config_error("unknown kernel '" + value +
                                   "' (expected maxwell2d | hardsphere3d | vhs)",
                               line, vcol);
    } else if (key == "kernel_gamma") {
        cfg.kernel_gamma = parse_real(value, key, line, vcol);
    } else if (key == "kernel_cphi") {
        cfg.kernel_cphi = parse_real(value, key, line, vcol);
    } else if (key == "M") {
        cfg.M = parse_int(value, key, line, vcol);
    } else if (key == "M1") {
        cfg.M1 = parse_int(value, key, line, vcol);
    } else if (key == "M2") {
        cfg.M2 = parse_int(value, key, line, vcol);
    } else if (key == "stats") {
        if (value == "classical")
            cfg.stats = StatsChoice::classical;
        else if (value == "fermi")
            cfg.stats = StatsChoice::fermi;
        else if (value == "bose")
            cfg.stats = StatsChoice::bose;
        else
            throw config_error("unknown stats '" + value +
                                   "' (expected classical | fermi | bose)",
                               line, vcol);
    } else if (key == "hbar") {
        cfg.hbar = parse_real(value, key, line, vcol);
    } else if (key == "r") {
        cfg.r = parse_real(value, key, line, vcol);
    } else if (key == "rescaling") {
        cfg.rescaling = parse_bool(value, key, line, vcol);
    } else if (key == "integrator") {
        if (value == "euler")
            cfg.integrator = IntegratorChoice::euler;
        else if (value == "rk2ssp")
            cfg.integrator = IntegratorChoice::rk2ssp;
        else
            throw config_error("unknown integrator '" + value + "' (expected euler | rk2ssp)",
                               line, vcol);
    } else if (key == "dt") {
        cfg.dt = parse_real(value, key, line, vcol);
    } else if (key == "t_final") {
        cfg.t_final = parse_real(value, key, line, vcol);
    } else if (key == "c") {
        cfg.c = parse_real(value, key, line, vcol);
    } else if (key == "ic") {
        if (value == "quantum_maxwellian")
            cfg.ic = IcChoice::quantum_maxwellian;
        else if (value == "classical_maxwellian")
            cfg.ic = IcChoice::classical_maxwellian;
        else if (value == "ball_indicator")
            cfg.ic = IcChoice::ball_indicator;
        else
            throw config_error(
                "unknown ic '" + value +
                    "' (expected quantum_maxwellian | classical_maxwellian | ball_indicator)",
                line, vcol);
    } else if (key == "ic_rho") {
        cfg.ic_rho = parse_real(value, key, line, vcol);
    } else if (key == "ic_u") {
        const std::vector<double> u = parse_list(value, key, line, vcol);
        if (u.size() != 2 && u.size() != 3)
            throw config_error("ic_u needs 2 or 3 components", line, vcol);
        ps.ic_u_count = int(u.size());
        cfg.ic_u = {0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < u.size(); ++i) cfg.ic_u[i] = u[i];
    } else if (key == "ic_sigma") {
        cfg.ic_sigma = parse_real(value, key, line, vcol);
    } else if (key == "ic_e") {
        cfg.ic_e = parse_real(value, key, line, vcol);
    } else if (key == "record_every") {
        cfg.record_every = parse_int(value, key, line, vcol);
    } else if (key == "snapshot_times") {
        cfg.snapshot_times = parse_list(value, key, line, vcol);
    } else if (key == "deterministic") {
        cfg.deterministic = parse_bool(value, key, line, vcol);
    } else if (key == "threads") {
        cfg.threads = parse_int(value, key, line, vcol);
    } else {
        throw config_error("unknown key '" + key + "'", line, kcol);
    }
}

inline void require(bool ok, const std::string& msg, const ParseScratch& ps,
                    const std::string& anchor_key) {
    if (ok) return;
    auto it = ps.seen.find(anchor_key);
    if (it != ps.seen.end()) throw config_error(msg, it->second.line, it->second.col);
    throw config_error(msg);
}

}  // namespace detail

/// Cross-field validation; diagnostics are anchored at the offending key's
/// position when it appeared in the text.
inline void validate_config(const SimConfig& cfg, const detail::ParseScratch& ps) {
    using detail::require;
    require(cfg.dim == 2 || cfg.dim == 3, "dim must be 2 or 3", ps, "dim");
    require(cfg.n >= 8 && cfg.n % 2 == 0, "n must be an even integer >= 8", ps, "n");
    require(cfg.L > 0.0, "L must be positive", ps, "L");
    require(cfg.trunc_ratio >= 1.0, "trunc_ratio must be >= 1", ps, "trunc_ratio");
    require(cfg.kernel_cphi > 0.0, "kernel_cphi must be positive", ps, "kernel_cphi");
    require(cfg.kernel_gamma >= 0.0 && cfg.kernel_gamma <= 1.0, "kernel_gamma must be in [0, 1]",
            ps, "kernel_gamma");
    require(cfg.M >= 1, "M must be >= 1", ps, "M");
    require(cfg.M1 >= 1 && cfg.M2 >= 1, "M1/M2 must be >= 1", ps, cfg.M1 >= 1 ? "M2" : "M1");
    require(cfg.dt > 0.0, "dt must be positive", ps, "dt");
    require(cfg.t_final >= 0.0, "t_final must be nonnegative", ps, "t_final");
    require(cfg.c >= 0.0, "c must be nonnegative", ps, "c");
    require(cfg.ic_rho > 0.0, "ic_rho must be positive", ps, "ic_rho");
    require(cfg.ic_sigma > 0.0, "ic_sigma must be positive", ps, "ic_sigma");
    require(cfg.ic_e > 0.0, "ic_e must be positive", ps, "ic_e");
    require(cfg.record_every >= 1, "record_every must be >= 1", ps, "record_every");
    require(cfg.threads >= 1, "threads must be >= 1", ps, "threads");
    for (double t : cfg.snapshot_times)
        require(t >= 0.0, "snapshot_times must be nonnegative", ps, "snapshot_times");

    if (cfg.kernel == KernelChoice::maxwell2d)
        require(cfg.dim == 2, "kernel maxwell2d requires dim = 2", ps, "kernel");
    if (cfg.kernel == KernelChoice::hardsphere3d)
        require(cfg.dim == 3, "kernel hardsphere3d requires dim = 3", ps, "kernel");

    if (cfg.stats == StatsChoice::classical) {
        require(!cfg.hbar, "hbar has no meaning for classical statistics", ps, "hbar");
        require(!cfg.r, "r has no meaning for classical statistics", ps, "r");
        require(cfg.ic != IcChoice::quantum_maxwellian,
                "ic quantum_maxwellian requires quantum statistics", ps, "ic");
    } else {
        require(cfg.hbar.has_value() || cfg.r.has_value(),
                "quantum statistics need either hbar or r", ps, "stats");
        require(!(cfg.hbar.has_value() && cfg.r.has_value()),
                "hbar and r are mutually exclusive", ps, "r");
        if (cfg.hbar) require(*cfg.hbar > 0.0, "hbar must be positive", ps, "hbar");
        if (cfg.r) {
            require(*cfg.r > 0.0, "r must be positive", ps, "r");
            require(cfg.ic != IcChoice::quantum_maxwellian,
                    "r-form statistics cannot seed a quantum_maxwellian ic (the fugacity "
                    "needs hbar first); give hbar explicitly",
                    ps, "r");
        }
    }
    if (ps.ic_u_count != 0)
        require(ps.ic_u_count == cfg.dim, "ic_u component count must match dim", ps, "ic_u");
}

/// Parse the line-oriented `key = value` text ('#' starts a comment). Unknown
/// keys, malformed values, duplicates, and cross-field inconsistencies raise
/// config_error with 1-based line/column positions.
inline SimConfig parse_config(const std::string& text) {
    SimConfig cfg;
    detail::ParseScratch ps;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string line =
            text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string stripped = detail::trim(line);
        if (!stripped.empty()) {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("expected 'key = value'", line_no,
                                   int(line.find_first_not_of(" \t")) + 1);
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            const int kcol = int(line.find_first_not_of(" \t")) + 1;
            std::size_t vstart = line.find_first_not_of(" \t", eq + 1);
            const int vcol = vstart == std::string::npos ? int(eq) + 2 : int(vstart) + 1;
            if (key.empty()) throw config_error("missing key before '='", line_no, kcol);
            if (value.empty())
                throw config_error("missing value for '" + key + "'", line_no, vcol);
            detail::apply_key(cfg, ps, key, value, line_no, kcol, vcol);
        }
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }
    validate_config(cfg, ps);
    return cfg;
}

// ---------------------------------------------------------------------------
// Resolution of derived quantities.

/// Kernel homogeneity exponent implied by the kernel choice.
inline double kernel_gamma_of(const SimConfig& cfg) {
    switch (cfg.kernel) {
        case KernelChoice::maxwell2d: return 0.0;
        case KernelChoice::hardsphere3d: return 1.0;
        case KernelChoice::vhs: return cfg.kernel_gamma;
    }
    return 0.0;
}

/// Nominal (continuum) specific internal energy of the configured initial
/// condition. The quantum-Maxwellian case needs resolved statistics.
inline double nominal_ic_energy(const SimConfig& cfg, const ParticleStatistics* stats = nullptr) {
    switch (cfg.ic) {
        case IcChoice::ball_indicator: return cfg.ic_e;
        case IcChoice::classical_maxwellian: return 0.5 * cfg.dim * cfg.ic_sigma;
        case IcChoice::quantum_maxwellian: {
            if (stats == nullptr || stats->kind == StatsKind::Classical)
                throw config_error("nominal_ic_energy: quantum_maxwellian needs quantum stats");
            return solve_from_mass_temperature(*stats, cfg.ic_rho, cfg.ic_sigma).e;
        }
    }
    throw config_error("nominal_ic_energy: unreachable");
}

/// Particle statistics with hbar resolved (r-form: hbar = r * hbar_star at the
/// nominal IC moments).
inline ParticleStatistics resolve_stats(const SimConfig& cfg) {
    if (cfg.stats == StatsChoice::classical)
        return ParticleStatistics{StatsKind::Classical, 0.0, cfg.dim};
    const StatsKind kind =
        cfg.stats == StatsChoice::fermi ? StatsKind::FermiDirac : StatsKind::BoseEinstein;
    if (cfg.hbar) return ParticleStatistics{kind, *cfg.hbar, cfg.dim};
    const double e = nominal_ic_energy(cfg);
    const std::optional<double> star = hbar_star(kind, cfg.dim, cfg.ic_rho, e);
    if (!star) throw config_error("resolve_stats: hbar_star undefined for this configuration");
    return ParticleStatistics{kind, *cfg.r * *star, cfg.dim};
}

/// Initial frame. Static-grid runs get the fixed (0, 1, (L/pi)^d) frame; the
/// rescaling method starts at the velocity scale the scheme's own moment map
/// assigns to the nominal IC (the omega update has no incremental form, so a
/// run must begin at its fixed point to avoid a spurious divergence kick).
inline FrameState initial_frame(const SimConfig& cfg, const ParticleStatistics& stats) {
    if (!cfg.rescaling) return classical_frame(cfg.dim, cfg.L);
    const double e = nominal_ic_energy(cfg, &stats);
    const OmegaUpdate ou = update_omega(stats, cfg.ic_rho, cfg.ic_u, e, 1.0);
    return rescaled_frame(cfg.dim, cfg.L, cfg.ic_u, ou.omega);
}

/// Pointwise sampler for the configured initial condition, in G-variables.
inline SpectralField sample_initial(const SimConfig& cfg, const ParticleStatistics& stats,
                                    const GridSpec& g, std::shared_ptr<Fft> fft,
                                    const FrameState& fr) {
    switch (cfg.ic) {
        case IcChoice::ball_indicator: {
            const double A = std::sqrt(2.0 * cfg.ic_e * (cfg.dim + 2) / cfg.dim);
            const double vol =
                cfg.dim == 2 ? pi * A * A : 4.0 * pi * A * A * A / 3.0;
            const double height = cfg.ic_rho / vol / fr.phys_scale();
            SpectralField G(g, std::move(fft));
            for (std::size_t j = 0; j < g.size(); ++j) {
                const std::array<double, 3> v = node_velocity(fr, g, j);
                double r2 = 0.0;
                for (int ax = 0; ax < cfg.dim; ++ax) r2 += sq(v[ax] - cfg.ic_u[ax]);
                G.phys[j] = r2 <= A * A ? height : 0.0;
            }
            G.mark_phys();
            return G;
        }
        case IcChoice::classical_maxwellian: {
            const ClassicalMaxwellian m{cfg.dim, cfg.ic_rho, cfg.ic_u, cfg.ic_sigma};
            return std::move(discretize(EquilibriumState{m}, g, std::move(fft), fr).field);
        }
        case IcChoice::quantum_maxwellian: {
            const MassTemperatureSolve mt =
                solve_from_mass_temperature(stats, cfg.ic_rho, cfg.ic_sigma);
            if (mt.condensate)
                throw config_error(
                    "sample_initial: (ic_rho, ic_sigma) is supercritical; no regular "
                    "quantum maxwellian exists");
            const QuantumMaxwellian m{stats, mt.z, cfg.ic_sigma, cfg.ic_u};
            return std::move(discretize(EquilibriumState{m}, g, std::move(fft), fr).field);
        }
    }
    throw config_error("sample_initial: unreachable");
}

/// Kernel table dispatch.
inline KernelTable build_kernel_table(const SimConfig& cfg, const GridSpec& g) {
    switch (cfg.kernel) {
        case KernelChoice::maxwell2d: return build_maxwell2d(g, cfg.M, cfg.kernel_cphi);
        case KernelChoice::hardsphere3d:
            return build_hardsphere3d(g, cfg.M1, cfg.M2, cfg.kernel_cphi);
        case KernelChoice::vhs: {
            const double p = cfg.kernel_gamma + 2.0 - cfg.dim;
            const double amp = std::pow(2.0, cfg.dim - 1) * cfg.kernel_cphi;
            const auto a_fn = [amp, p](double rho) { return amp * std::pow(rho, p); };
            const auto b_fn = [](double) { return 1.0; };
            return build_vhs_quadrature(g, a_fn, b_fn, 64, cfg.dim == 2 ? cfg.M : cfg.M1,
                                        cfg.M2);
        }
    }
    throw config_error("build_kernel_table: unreachable");
}

// ---------------------------------------------------------------------------
// Canonical text and hash (recorded in every output artifact).

inline std::string canonical_config_text(const SimConfig& cfg) {
    char buf[64];
    std::string out;
    auto put = [&](const char* key, const std::string& v) {
        out += key;
        out += '=';
        out += v;
        out += '\n';
    };
    auto real = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    put("dim", std::to_string(cfg.dim));
    put("n", std::to_string(cfg.n));
    put("L", real(cfg.L));
    put("trunc_ratio", real(cfg.trunc_ratio));
    put("kernel", cfg.kernel == KernelChoice::maxwell2d      ? "maxwell2d"
                  : cfg.kernel == KernelChoice::hardsphere3d ? "hardsphere3d"
                                                             : "vhs");
    put("kernel_gamma", real(cfg.kernel_gamma));
    put("kernel_cphi", real(cfg.kernel_cphi));
    put("M", std::to_string(cfg.M));
    put("M1", std::to_string(cfg.M1));
    put("M2", std::to_string(cfg.M2));
    put("stats", cfg.stats == StatsChoice::classical ? "classical"
                 : cfg.stats == StatsChoice::fermi   ? "fermi"
                                                     : "bose");
    put("hbar", cfg.hbar ? real(*cfg.hbar) : "none");
    put("r", cfg.r ? real(*cfg.r) : "none");
    put("rescaling", cfg.rescaling ? "true" : "false");
    put("integrator", cfg.integrator == IntegratorChoice::euler ? "euler" : "rk2ssp");
    put("dt", real(cfg.dt));
    put("t_final", real(cfg.t_final));
    put("c", real(cfg.c));
    put("ic", cfg.ic == IcChoice::quantum_maxwellian     ? "quantum_maxwellian"
              : cfg.ic == IcChoice::classical_maxwellian ? "classical_maxwellian"
                                                         : "ball_indicator");
    put("ic_rho", real(cfg.ic_rho));
    {
        std::string u = real(cfg.ic_u[0]);
        for (int ax = 1; ax < cfg.dim; ++ax) u += "," + real(cfg.ic_u[ax]);
        put("ic_u", u);
    }
    put("ic_sigma", real(cfg.ic_sigma));
    put("ic_e", real(cfg.ic_e));
    put("record_every", std::to_string(cfg.record_every));
    {
        std::string s;
        for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i)
            s += (i ? "," : "") + real(cfg.snapshot_times[i]);
        put("snapshot_times", s.empty() ? "none" : s);
    }
    put("deterministic", cfg.deterministic ? "true" : "false");
    put("threads", std::to_string(cfg.threads));
    return out;
}

/// FNV-1a 64-bit over the canonical text, as 16 hex digits.
inline std::string config_hash(const SimConfig& cfg) {
    const std::string text = canonical_config_text(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// Assembly.

/// Everything needed to step a configured run. Holds the kernel table that the
/// workspace references, so it is pinned in place (no copy/move).
struct Simulation {
    SimConfig cfg;
    ParticleStatistics stats;
    GridSpec grid;
    std::shared_ptr<Fft> fft;
    KernelTable table;
    CollisionWorkspace ws;
    SimState state;
    std::string hash;

    explicit Simulation(const SimConfig& c)
        : cfg(c),
          stats(resolve_stats(c)),
          grid(build_grid(c.dim, c.n, c.L, c.trunc_ratio)),
          fft(std::make_shared<Fft>(grid, c.threads, c.deterministic)),
          table(build_kernel_table(c, grid)),
          ws(table, fft),
          state(make_state(sample_initial(c, stats, grid, fft, initial_frame(c, stats)),
                           initial_frame(c, stats), stats, c.dt, c.c, kernel_gamma_of(c),
                           c.rescaling)),
          hash(config_hash(c)) {}

    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    /// Run to cfg.t_final with the configured integrator and cadence.
    RunRecord run_configured(const real_vec* G_limit = nullptr) {
        RunOptions opt;
        opt.t_final = cfg.t_final;
        opt.record_every = cfg.record_every;
        opt.snapshot_times = cfg.snapshot_times;
        opt.use_rk2 = cfg.integrator == IntegratorChoice::rk2ssp;
        opt.G_limit = G_limit;
        return run(state, ws, opt);
    }
};

inline std::unique_ptr<Simulation> make_simulation(const SimConfig& cfg) {
    return std::make_unique<Simulation>(cfg);
}

/// Discrete limit state for relaxation-error tracking: the equilibrium with
/// the IC's *measured* invariants, sampled on the run's (static) frame.
/// Returns nothing when no equilibrium exists (supercritical Fermi states).
inline std::optional<real_vec> relaxation_limit(Simulation& sim) {
    const Moments m = moments(sim.state.G.phys, sim.state.frame, sim.grid);
    EquilibriumState eq = classify(sim.stats, m.rho, m.u, m.e);
    if (std::holds_alternative<UndeterminedState>(eq)) return std::nullopt;
    DiscreteEquilibrium de = discretize(eq, sim.grid, sim.fft, sim.state.frame);
    return std::optional<real_vec>(std::move(de.field.phys));
}

}  // namespace bne
