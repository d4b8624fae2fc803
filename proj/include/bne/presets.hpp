#pragma once
// Named experiment presets. Residual presets run the spectral-accuracy
// protocol (discretize a limit-state candidate, snap its invariants, rebuild
// the equilibrium from the snapped values, report the sup-norm collision
// residual). Relaxation presets configure the time-marched scenarios.
//
// Stable ids:
//   residual.<fam>[.rho<RR>].sigma<SS>.L<NN>[.ub]   fam in {fd2d, be2d, fd3d, be3d}
//   relax.<fam>.<ic>.r<RR>                          fam in {fd2d, fd3d, be3d},
//                                                   ic in {ball, cmax}
// Numeric suffixes read as first-digit integer part, remaining digits
// fraction: sigma05 = 0.5, L10 = 10, r105 = 1.05, rho02 = 0.2.

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bne/config.hpp"

namespace bne {

/// One spectral-accuracy case (a table's caption row).
struct ResidualCase {
    int dim = 2;
    StatsKind kind = StatsKind::FermiDirac;
    double hbar = 3.0;
    double rho = 1.0;
    double sigma = 0.5;
    double L = 4.0;
    std::array<double, 3> u0{0.0, 0.0, 0.0};
    // kernel: maxwell (2D) / hard spheres (3D), both with C_phi = 1, c = 1
    int M = 8;
    int M1 = 4;
    int M2 = 4;
    std::string id;
};

/// One row of a residual table.
struct ResidualRow {
    int n = 0;
    double residual = std::numeric_limits<double>::quiet_NaN();
    double T_h = 0.0;
    double z_h = std::numeric_limits<double>::quiet_NaN();
    double omega_h = 1.0;
    double m0_h = 0.0;       ///< condensate weight of the snapped state
    bool condensate = false;
    bool hazard = false;     ///< non-finite numbers near condensation
    std::string note;
};

namespace detail {

/// "05" -> 0.5, "105" -> 1.05, "1" -> 1, "10" -> 10 (two leading digits
/// before the implied point when the tag starts "10" and has >2 digits is not
/// needed by any preset; L tags are whole numbers, parsed separately).
inline double tag_fraction(const std::string& digits) {
    if (digits.empty()) throw config_error("preset: empty numeric tag");
    for (char ch : digits)
        if (ch < '0' || ch > '9') throw config_error("preset: bad numeric tag '" + digits + "'");
    double v = digits[0] - '0';
    double scale = 0.1;
    for (std::size_t i = 1; i < digits.size(); ++i, scale *= 0.1)
        v += (digits[i] - '0') * scale;
    return v;
}

inline std::vector<std::string> split_dots(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t dot = s.find('.', start);
        parts.push_back(s.substr(start, dot == std::string::npos ? dot : dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return parts;
}

}  // namespace detail

/// Mean-velocity offset used by the drifted residual cases.
inline std::array<double, 3> drift_velocity(int dim) {
    if (dim == 2) {
        const double s = 8.0 / (3.0 * std::sqrt(2.0) + 2.0);
        return {s, s, 0.0};
    }
    const double s = 4.0 / (3.0 + std::sqrt(2.0));
    return {s, s, s * std::sqrt(2.0)};
}

inline ResidualCase preset_residual(const std::string& id) {
    const std::vector<std::string> parts = detail::split_dots(id);
    if (parts.size() < 4 || parts[0] != "residual")
        throw config_error("preset_residual: bad id '" + id + "'");
    ResidualCase rc;
    rc.id = id;
    const std::string& fam = parts[1];
    if (fam == "fd2d") {
        rc.dim = 2;
        rc.kind = StatsKind::FermiDirac;
    } else if (fam == "be2d") {
        rc.dim = 2;
        rc.kind = StatsKind::BoseEinstein;
    } else if (fam == "fd3d") {
        rc.dim = 3;
        rc.kind = StatsKind::FermiDirac;
    } else if (fam == "be3d") {
        rc.dim = 3;
        rc.kind = StatsKind::BoseEinstein;
    } else {
        throw config_error("preset_residual: unknown family '" + fam + "' in '" + id + "'");
    }
    std::size_t i = 2;
    bool have_sigma = false, have_L = false;
    for (; i < parts.size(); ++i) {
        const std::string& p = parts[i];
        if (p.rfind("rho", 0) == 0) {
            rc.rho = detail::tag_fraction(p.substr(3));
        } else if (p.rfind("sigma", 0) == 0) {
            rc.sigma = detail::tag_fraction(p.substr(5));
            have_sigma = true;
        } else if (p.rfind("L", 0) == 0) {
            rc.L = double(std::stoi(p.substr(1)));
            have_L = true;
        } else if (p == "ub") {
            rc.u0 = drift_velocity(rc.dim);
        } else {
            throw config_error("preset_residual: unknown tag '" + p + "' in '" + id + "'");
        }
    }
    if (!have_sigma || !have_L)
        throw config_error("preset_residual: id needs sigma and L tags: '" + id + "'");
    if (!(rc.rho > 0.0) || !(rc.sigma > 0.0) || !(rc.L > 0.0))
        throw config_error("preset_residual: nonpositive parameters in '" + id + "'");
    return rc;
}

/// Run one grid size of the residual protocol. The rescaled variant pins the
/// mean velocity, snaps (T, z) from the measured invariants, and sets the
/// velocity scale to sqrt(T_h); the static variant keeps the fixed frame.
inline ResidualRow run_residual_point(const ResidualCase& rc, int n, bool rescaled,
                                      int threads = 1) {
    ResidualRow row;
    row.n = n;
    const ParticleStatistics stats{rc.kind, rc.hbar, rc.dim};
    const GridSpec g = build_grid(rc.dim, n, rc.L, 1.0);
    auto fft = std::make_shared<Fft>(g, threads);
    const KernelTable table = rc.dim == 2 ? build_maxwell2d(g, rc.M, 1.0)
                                          : build_hardsphere3d(g, rc.M1, rc.M2, 1.0);
    CollisionWorkspace ws(table, fft);
    const double gamma = rc.dim == 2 ? 0.0 : 1.0;

    const MassTemperatureSolve mt = solve_from_mass_temperature(stats, rc.rho, rc.sigma);
    if (mt.condensate)
        throw config_error("run_residual_point: case (rho, sigma) is supercritical");
    const EquilibriumState f0 = QuantumMaxwellian{stats, mt.z, rc.sigma, rc.u0};

    try {
        FrameState fr_init = rescaled ? rescaled_frame(rc.dim, rc.L, rc.u0, std::sqrt(rc.sigma))
                                      : classical_frame(rc.dim, rc.L);
        const DiscreteEquilibrium d0 = discretize(f0, g, fft, fr_init);
        const Moments m = moments(d0.field.phys, fr_init, g);
        const DegeneracyReport rep = solve_from_mass_energy(stats, m.rho, m.e);
        row.T_h = rep.T;
        row.z_h = rep.z;
        row.m0_h = rep.m0;
        row.condensate = rep.cls == DegeneracyClass::CondensateBE3D;

        const EquilibriumState f_inf = classify(stats, m.rho, rc.u0, m.e);
        if (std::holds_alternative<UndeterminedState>(f_inf)) {
            row.hazard = true;
            row.note = "snapped invariants exceed the saturation bound";
            return row;
        }

        const FrameState fr =
            rescaled ? rescaled_frame(rc.dim, rc.L, rc.u0,
                                      std::max(std::sqrt(std::max(rep.T, 0.0)), omega_floor))
                     : classical_frame(rc.dim, rc.L);
        row.omega_h = fr.omega;
        const DiscreteEquilibrium de = discretize(f_inf, g, fft, fr);
        if (de.singular_node) {
            row.hazard = true;
            row.note = "a grid node hit the z = 1 singularity of the snapped state";
            return row;
        }
        const ScaleFactors sf = scale_factors(fr, stats, gamma, 1.0);
        ws.alpha_eff = sf.alpha_eff;
        ws.c_pre = sf.c_pre;
        const real_vec Q = assemble_Q(ws, de.field.phys);
        row.residual = linf_residual(Q, fr);
        if (!std::isfinite(row.residual)) {
            row.hazard = true;
            row.note = "non-finite residual (near-condensate amplification)";
        }
    } catch (const blowup_error&) {
        row.hazard = true;
        row.note = "collision input exceeded the amplitude guard";
    } catch (const numeric_error& err) {
        row.hazard = true;
        row.note = err.what();
    }
    return row;
}

/// Relaxation / blow-up scenario presets. Full-scale defaults follow the
/// source experiments (2D: 128^2 on [-8,8]^2, dt = 0.025, RK2-SSP, static
/// frame; 3D: 32^3, Fermi on [-8,8]^3, Bose on [-6,6]^3); callers downscale n
/// for desk runs.
inline SimConfig preset_relaxation(const std::string& id) {
    const std::vector<std::string> parts = detail::split_dots(id);
    if (parts.size() != 4 || parts[0] != "relax")
        throw config_error("preset_relaxation: bad id '" + id + "' (relax.<fam>.<ic>.r<RR>)");
    SimConfig cfg;
    cfg.rescaling = false;
    cfg.integrator = IntegratorChoice::rk2ssp;
    cfg.dt = 0.025;
    cfg.c = 1.0;
    cfg.record_every = 10;

    const std::string& fam = parts[1];
    if (fam == "fd2d") {
        cfg.dim = 2;
        cfg.stats = StatsChoice::fermi;
        cfg.n = 128;
        cfg.L = 8.0;
        cfg.kernel = KernelChoice::maxwell2d;
        cfg.M = 8;
    } else if (fam == "fd3d") {
        cfg.dim = 3;
        cfg.stats = StatsChoice::fermi;
        cfg.n = 32;
        cfg.L = 8.0;
        cfg.kernel = KernelChoice::hardsphere3d;
        cfg.M1 = cfg.M2 = 4;
    } else if (fam == "be3d") {
        cfg.dim = 3;
        cfg.stats = StatsChoice::bose;
        cfg.n = 32;
        cfg.L = 6.0;
        cfg.kernel = KernelChoice::hardsphere3d;
        cfg.M1 = cfg.M2 = 4;
    } else {
        throw config_error("preset_relaxation: unknown family '" + fam + "' in '" + id + "'");
    }

    const std::string& icname = parts[2];
    if (icname == "ball") {
        cfg.ic = IcChoice::ball_indicator;
        cfg.ic_rho = 1.0;
        cfg.ic_e = 1.0;
    } else if (icname == "cmax") {
        cfg.ic = IcChoice::classical_maxwellian;
        cfg.ic_rho = 1.0;
        cfg.ic_sigma = 1.0;
    } else {
        throw config_error("preset_relaxation: unknown ic '" + icname + "' in '" + id + "'");
    }

    if (parts[3].rfind("r", 0) != 0)
        throw config_error("preset_relaxation: missing r tag in '" + id + "'");
    cfg.r = detail::tag_fraction(parts[3].substr(1));
    cfg.t_final = *cfg.r < 1.0 ? 30.0 : 10.0;
    return cfg;
}

}  // namespace bne
