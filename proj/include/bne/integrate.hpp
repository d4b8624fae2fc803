#pragma once

// Time loops for the homogeneous relaxation problem: forward Euler and
// RK2-SSP (Heun), each step running the full cycle
//   collision assembly -> moment rates -> velocity-scale update ->
//   frame-divergence correction -> state advance,
// in the frame-following (rescaled) mode, or the plain
//   collision assembly -> advance -> re-measure moments
// cycle on a static grid.  Blow-up is a reported outcome, not an error: the
// step that detects it returns the last healthy state with a flag and a
// time stamp, and run() exits early.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "bne/collision.hpp"
#include "bne/common.hpp"
#include "bne/diagnostics.hpp"
#include "bne/frame.hpp"
#include "bne/grid.hpp"
#include "bne/quantum.hpp"

namespace bne {

struct SimFlags {
    bool blowup = false;
    double blowup_time = 0.0;   ///< valid when blowup is set
    bool omega_floored = false; ///< saturation drove T to 0; omega clamped
    bool undetermined = false;  ///< super-critical Fermi moments encountered
};

struct SimState {
    int step = 0;
    double time = 0.0;
    SpectralField G;
    FrameState frame;
    Moments mom;  ///< scheme-internal moments (conserved update when rescaling)
    ParticleStatistics stats;
    double dt = 0.025;
    double c = 1.0;      ///< collision time scaling
    double gamma = 0.0;  ///< kernel homogeneity exponent
    bool rescaling = false;
    SimFlags flags;
};

/// Assemble a fresh state: moments are measured from G; with rescaling the
/// mean velocity is pinned to the frame drift (the scheme keeps them equal).
inline SimState make_state(SpectralField G, const FrameState& fr, const ParticleStatistics& stats,
                           double dt, double c, double gamma, bool rescaling) {
    if (!(dt > 0.0)) throw config_error("make_state: dt must be positive");
    if (fr.dim != G.grid.dim) throw config_error("make_state: frame/grid dimension mismatch");
    if (rescaling && fr.lambda != 1)
        throw config_error("make_state: rescaling needs a frame-following grid (lambda = 1)");
    if (!rescaling && fr.lambda != 0)
        throw config_error("make_state: static-grid mode needs lambda = 0");
    SimState s;
    s.G = std::move(G);
    s.frame = fr;
    s.stats = stats;
    s.dt = dt;
    s.c = c;
    s.gamma = gamma;
    s.rescaling = rescaling;
    s.mom = moments(s.G.phys, s.frame, s.G.grid);
    if (rescaling) s.mom.u = fr.u;
    return s;
}

/// Extra per-step observables, measured on the state the step departs from.
struct StepDiag {
    double linf_q = std::numeric_limits<double>::quiet_NaN();        ///< physical units
    double dissipation = std::numeric_limits<double>::quiet_NaN();   ///< dv sum Q psi
};

inline SimState euler_step(const SimState& s, CollisionWorkspace& ws,
                           StepDiag* diag = nullptr) {
    if (s.flags.blowup) throw config_error("euler_step: state already blew up");
    const GridSpec& g = s.G.grid;
    if (ws.grid.n != g.n || ws.grid.dim != g.dim)
        throw config_error("euler_step: workspace grid mismatch");

    SimState out = s;
    ++out.step;
    out.time = s.time + s.dt;

    const ScaleFactors sf = scale_factors(s.frame, s.stats, s.gamma, s.c);
    ws.alpha_eff = sf.alpha_eff;
    ws.c_pre = sf.c_pre;
    real_vec Q;
    try {
        Q = assemble_Q(ws, s.G.phys);
    } catch (const blowup_error&) {
        out = s;
        out.flags.blowup = true;
        out.flags.blowup_time = s.time;
        return out;
    }
    if (diag) {
        diag->linf_q = linf_residual(Q, s.frame);
        diag->dissipation = entropy_dissipation(Q, s.G.phys, s.frame, g, s.stats);
    }

    if (s.rescaling) {
        const MomentRates rates = moment_rates(Q, s.frame, g, s.frame.u);
        const double rho1 = s.mom.rho + s.dt * rates.drho;
        if (!(rho1 > 0.0)) {
            out = s;
            out.flags.blowup = true;
            out.flags.blowup_time = out.time;
            return out;
        }
        std::array<double, 3> u1{0.0, 0.0, 0.0};
        for (int ax = 0; ax < g.dim; ++ax)
            u1[ax] = (s.mom.rho * s.mom.u[ax] + s.dt * rates.dmom[ax]) / rho1;
        const double e1 = (s.mom.rho * s.mom.e + s.dt * rates.dE) / rho1;

        const OmegaUpdate up = update_omega(s.stats, rho1, u1, e1, s.frame.omega);
        out.flags.omega_floored = s.flags.omega_floored || up.floored;
        out.flags.undetermined = s.flags.undetermined || up.undetermined;

        const double omega_rate = (up.omega - s.frame.omega) / s.dt;
        std::array<double, 3> u_rate{0.0, 0.0, 0.0};
        for (int ax = 0; ax < g.dim; ++ax) u_rate[ax] = (u1[ax] - s.frame.u[ax]) / s.dt;
        const SpectralField div = divergence_term(s.G, s.frame, omega_rate, u_rate);

        for (std::size_t j = 0; j < g.size(); ++j)
            out.G.phys[j] = s.G.phys[j] + s.dt * (Q[j] - div.phys[j]);
        out.G.mark_phys();
        out.frame.omega = up.omega;
        out.frame.u = u1;
        out.mom.rho = rho1;
        out.mom.u = u1;
        out.mom.e = e1;
    } else {
        for (std::size_t j = 0; j < g.size(); ++j) out.G.phys[j] = s.G.phys[j] + s.dt * Q[j];
        out.G.mark_phys();
        out.mom = moments(out.G.phys, out.frame, g);
    }

    double amp = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) amp = std::max(amp, std::abs(out.G.phys[j]));
    if (!std::isfinite(amp) || amp > ws.blowup_bound) {
        out.flags.blowup = true;
        out.flags.blowup_time = out.time;
    }
    return out;
}

/// Heun / SSP2: two Euler stages, then the half-half average.  Each stage
/// recomputes its own frame scale factors; the averaged state combines G,
/// the frame (omega, u), and the conserved quantities (rho, rho u, rho e)
/// linearly.  The static-grid path re-measures moments from the averaged G.
inline SimState rk2_ssp_step(const SimState& s, CollisionWorkspace& ws,
                             StepDiag* diag = nullptr) {
    const SimState s1 = euler_step(s, ws, diag);
    if (s1.flags.blowup) return s1;
    SimState s2 = euler_step(s1, ws);
    if (s2.flags.blowup) {
        // the failure happened inside the [t, t + dt] step; normalize the stamp
        s2.step = s.step + 1;
        s2.time = s.time + s.dt;
        s2.flags.blowup_time = s2.time;
        return s2;
    }

    SimState out = std::move(s2);
    out.step = s.step + 1;
    out.time = s.time + s.dt;
    const std::size_t sz = s.G.grid.size();
    for (std::size_t j = 0; j < sz; ++j) out.G.phys[j] = 0.5 * (s.G.phys[j] + out.G.phys[j]);
    out.G.mark_phys();

    if (s.rescaling) {
        out.frame.omega = 0.5 * (s.frame.omega + out.frame.omega);
        const double rho = 0.5 * (s.mom.rho + out.mom.rho);
        double e = 0.5 * (s.mom.rho * s.mom.e + out.mom.rho * out.mom.e) / rho;
        for (int ax = 0; ax < s.G.grid.dim; ++ax) {
            const double uax =
                0.5 * (s.mom.rho * s.mom.u[ax] + out.mom.rho * out.mom.u[ax]) / rho;
            out.frame.u[ax] = uax;
            out.mom.u[ax] = uax;
        }
        out.mom.rho = rho;
        out.mom.e = e;
    } else {
        out.mom = moments(out.G.phys, out.frame, out.G.grid);
    }

    double amp = 0.0;
    for (std::size_t j = 0; j < sz; ++j) amp = std::max(amp, std::abs(out.G.phys[j]));
    if (!std::isfinite(amp) || amp > ws.blowup_bound) {
        out.flags.blowup = true;
        out.flags.blowup_time = out.time;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Run loop.
// ---------------------------------------------------------------------------

struct SeriesPoint {
    int step = 0;
    double t = 0.0;
    Moments mom;             ///< measured from G by the display quadratures
    double entropy = std::numeric_limits<double>::quiet_NaN();
    bool entropy_defined = false;
    double lp1 = 0.0;
    double lp2 = 0.0;
    double linf_q = std::numeric_limits<double>::quiet_NaN();
    double dissipation = std::numeric_limits<double>::quiet_NaN();
    double max_f = 0.0;
    double omega = 1.0;
    double relax_err = std::numeric_limits<double>::quiet_NaN();
};

struct Snapshot {
    int step = 0;
    double t = 0.0;
    FrameState frame;
    real_vec G;
};

struct RunRecord {
    std::vector<SeriesPoint> series;
    std::vector<Snapshot> snapshots;
    SimFlags flags;
    int final_step = 0;
    double final_time = 0.0;
};

struct RunOptions {
    double t_final = 1.0;
    int record_every = 1;
    std::vector<double> snapshot_times;
    bool use_rk2 = true;
    /// Limit state sampled on the run's frame, for the l1 relaxation error
    /// (meaningful on a static grid, where the frame never changes).
    const real_vec* G_limit = nullptr;
};

namespace detail {

inline SeriesPoint record_point(const SimState& s, const StepDiag& diag, const RunOptions& opt) {
    const GridSpec& g = s.G.grid;
    SeriesPoint p;
    p.step = s.step;
    p.t = s.time;
    p.mom = moments(s.G.phys, s.frame, g);
    const EntropyReport ent = s.stats.kind == StatsKind::Classical
                                  ? entropy_classical(s.G.phys, s.frame, g)
                                  : entropy_quantum(s.G.phys, s.frame, g, s.stats);
    p.entropy = ent.value;
    p.entropy_defined = ent.defined;
    p.lp1 = lp_norm(s.G.phys, s.frame, g, 1.0);
    p.lp2 = lp_norm(s.G.phys, s.frame, g, 2.0);
    p.linf_q = diag.linf_q;
    p.dissipation = diag.dissipation;
    p.max_f = max_density(s.G.phys, s.frame);
    p.omega = s.frame.omega;
    if (opt.G_limit) p.relax_err = relaxation_error(s.G.phys, *opt.G_limit, s.frame, g);
    return p;
}

}  // namespace detail

/// March to t_final (or blow-up), recording diagnostics every record_every
/// steps and grid snapshots at the requested times (each attached to the
/// nearest step boundary).  Deterministic given the same state and options.
inline RunRecord run(SimState s, CollisionWorkspace& ws, const RunOptions& opt) {
    if (!(opt.t_final >= 0.0)) throw config_error("run: t_final must be nonnegative");
    if (opt.record_every < 1) throw config_error("run: record_every must be >= 1");
    RunRecord rec;
    const int total_steps = int(std::lround(opt.t_final / s.dt));
    std::vector<double> snaps = opt.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t snap_idx = 0;

    auto take_snapshot = [&](const SimState& st) {
        while (snap_idx < snaps.size() && snaps[snap_idx] <= st.time + 0.5 * st.dt) {
            rec.snapshots.push_back(Snapshot{st.step, st.time, st.frame, st.G.phys});
            ++snap_idx;
        }
    };

    while (s.step < total_steps && !s.flags.blowup) {
        take_snapshot(s);
        const bool rec_now = s.step % opt.record_every == 0;
        StepDiag diag;
        SimState next = opt.use_rk2 ? rk2_ssp_step(s, ws, rec_now ? &diag : nullptr)
                                    : euler_step(s, ws, rec_now ? &diag : nullptr);
        if (rec_now && !(next.flags.blowup && next.step == s.step))
            rec.series.push_back(detail::record_point(s, diag, opt));
        s = std::move(next);
    }
    if (!s.flags.blowup) {
        take_snapshot(s);
        if (rec.series.empty() || rec.series.back().step != s.step)
            rec.series.push_back(detail::record_point(s, StepDiag{}, opt));
    }
    rec.flags = s.flags;
    rec.final_step = s.step;
    rec.final_time = s.time;
    return rec;
}

}  // namespace bne
