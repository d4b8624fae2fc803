// bne — homogeneous quantum Boltzmann relaxation on a Fourier velocity grid.
//
// Subcommands:
//   residual      grid-refinement table of ||Q(f_eq)||_inf for an equilibrium
//   relax         relaxation / blow-up scenario with time-series output
//   run           general run driven by a key = value config file
//   kernel-cache  precompute a collision kernel table to a binary file
//   oracle        cross-check the transform assembly against the direct sums
//
// Exit codes: 0 success, 2 bad configuration, 3 run ended in blow-up
// (outputs are still written), 4 numerical failure / oracle mismatch.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bne/bne.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_blowup = 3;
constexpr int exit_numeric = 4;

std::string read_text_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw bne::config_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// residual
// ---------------------------------------------------------------------------

int cmd_residual(const std::string& preset, std::vector<int> ns, bool static_frame,
                 int threads, const std::string& out_path) {
    const bne::ResidualCase rc = bne::preset_residual(preset);
    std::printf("# %s  (%s frame)\n", rc.id.c_str(), static_frame ? "static" : "rescaled");
    std::printf("# %6s  %14s  %12s  %12s  %12s\n", "n", "residual", "T_h", "z_h", "omega_h");

    std::ofstream csv;
    if (!out_path.empty()) {
        csv.open(out_path);
        if (!csv) throw bne::io_error("cannot open '" + out_path + "' for writing");
        csv << "n,residual,T_h,z_h,omega_h,m0_h,hazard,note\n";
    }

    int healthy = 0;
    for (int n : ns) {
        const bne::ResidualRow row = bne::run_residual_point(rc, n, !static_frame, threads);
        if (row.hazard) {
            std::printf("  %6d  %14s  (%s)\n", row.n, "-", row.note.c_str());
        } else {
            std::printf("  %6d  %14.6e  %12.6g  %12.6g  %12.6g\n", row.n, row.residual, row.T_h,
                        row.z_h, row.omega_h);
            ++healthy;
        }
        if (csv.is_open()) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d,", row.n,
                          row.residual, row.T_h, row.z_h, row.omega_h, row.m0_h,
                          row.hazard ? 1 : 0);
            csv << buf << row.note << "\n";
        }
    }
    return healthy > 0 ? exit_ok : exit_numeric;
}

// ---------------------------------------------------------------------------
// relax / run
// ---------------------------------------------------------------------------

void print_series_header(bool have_limit) {
    std::printf("# %6s  %10s  %12s  %12s  %14s  %12s  %12s\n", "step", "t", "rho", "e",
                "entropy", "max_f", have_limit ? "relax_err" : "lp2");
}

void print_series_point(const bne::SeriesPoint& p, bool have_limit) {
    char ent[32];
    if (p.entropy_defined)
        std::snprintf(ent, sizeof ent, "%14.8g", p.entropy);
    else
        std::snprintf(ent, sizeof ent, "%14s", "undefined");
    std::printf("  %6d  %10.4f  %12.8g  %12.8g  %s  %12.6g  %12.6g\n", p.step, p.t, p.mom.rho,
                p.mom.e, ent, p.max_f, have_limit ? p.relax_err : p.lp2);
}

int run_and_report(bne::Simulation& sim, const std::string& out_path,
                   const std::string& snap_dir, bool track_limit) {
    std::optional<bne::real_vec> limit;
    if (track_limit) limit = bne::relaxation_limit(sim);
    if (track_limit && !limit)
        std::printf("# no relaxation limit: measured invariants admit no regular equilibrium\n");

    print_series_header(limit.has_value());
    const bne::RunRecord rec = sim.run_configured(limit ? &*limit : nullptr);
    for (const bne::SeriesPoint& p : rec.series) print_series_point(p, limit.has_value());

    if (rec.flags.blowup)
        std::printf("# blow-up at t = %.6g (step %d)\n", rec.flags.blowup_time, rec.final_step);
    else
        std::printf("# done: t = %.6g (step %d)\n", rec.final_time, rec.final_step);
    if (rec.flags.omega_floored)
        std::printf("# note: the velocity scale hit its lower guard during the run\n");
    if (rec.flags.undetermined)
        std::printf("# note: moments left the region where the scale update is defined\n");

    if (!out_path.empty()) {
        bne::write_series(rec, sim.cfg, out_path);
        std::printf("# series -> %s\n", out_path.c_str());
    }
    if (!snap_dir.empty()) {
        for (const bne::Snapshot& snap : rec.snapshots) {
            char name[64];
            std::snprintf(name, sizeof name, "/snap_%06d.csv", snap.step);
            const std::string path = snap_dir + name;
            bne::write_snapshot(snap, sim.grid, sim.cfg, path);
            std::printf("# snapshot t = %.6g -> %s\n", snap.t, path.c_str());
        }
    }
    return rec.flags.blowup ? exit_blowup : exit_ok;
}

int cmd_relax(const std::string& preset, int n_override, double dt_override,
              double tfinal_override, const std::vector<double>& snap_times,
              const std::string& out_path, const std::string& snap_dir, int threads) {
    bne::SimConfig cfg = bne::preset_relaxation(preset);
    if (n_override > 0) cfg.n = n_override;
    if (dt_override > 0.0) cfg.dt = dt_override;
    if (tfinal_override >= 0.0) cfg.t_final = tfinal_override;
    if (!snap_times.empty()) cfg.snapshot_times = snap_times;
    cfg.threads = threads;
    bne::detail::ParseScratch ps;
    bne::validate_config(cfg, ps);

    std::printf("# %s: %dD n = %d, dt = %g, t_final = %g, hash %s\n", preset.c_str(), cfg.dim,
                cfg.n, cfg.dt, cfg.t_final, bne::config_hash(cfg).c_str());
    bne::Simulation sim(cfg);
    std::printf("# hbar = %.12g, initial omega = %.12g\n", sim.stats.hbar,
                sim.state.frame.omega);
    return run_and_report(sim, out_path, snap_dir, /*track_limit=*/true);
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& snap_dir) {
    const bne::SimConfig cfg = bne::parse_config(read_text_file(config_path));
    std::printf("# %s: %dD n = %d, dt = %g, t_final = %g, hash %s\n", config_path.c_str(),
                cfg.dim, cfg.n, cfg.dt, cfg.t_final, bne::config_hash(cfg).c_str());
    bne::Simulation sim(cfg);
    return run_and_report(sim, out_path, snap_dir,
                          /*track_limit=*/!cfg.rescaling);
}

// ---------------------------------------------------------------------------
// kernel-cache / oracle
// ---------------------------------------------------------------------------

int cmd_kernel_cache(const std::string& config_path, const std::string& out_path) {
    const bne::SimConfig cfg = bne::parse_config(read_text_file(config_path));
    const bne::GridSpec g = bne::build_grid(cfg.dim, cfg.n, cfg.L, cfg.trunc_ratio);
    const bne::KernelTable t = bne::build_kernel_table(cfg, g);
    bne::save_kernel_table(t, out_path);
    const std::size_t bytes = (t.alpha.size() + t.alpha_prime.size() + t.beta_diag.size()) *
                              sizeof(double);
    std::printf("%s: %d quadrature pairs on %dD n = %d, ~%.1f MiB -> %s\n", t.kernel_id.c_str(),
                t.count_P, g.dim, g.n, double(bytes) / (1024.0 * 1024.0), out_path.c_str());
    return exit_ok;
}

int cmd_oracle(const std::string& config_path, int trials, double tol) {
    const bne::SimConfig cfg = bne::parse_config(read_text_file(config_path));
    bne::Simulation sim(cfg);
    const bne::ScaleFactors sf =
        bne::scale_factors(sim.state.frame, sim.stats, bne::kernel_gamma_of(cfg), cfg.c);
    sim.ws.alpha_eff = sf.alpha_eff;
    sim.ws.c_pre = 1.0;  // the direct sums carry no time scaling

    auto rel_linf = [](const bne::real_vec& a, const bne::real_vec& b) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            num = std::max(num, std::abs(a[i] - b[i]));
            den = std::max(den, std::abs(b[i]));
        }
        return den > 0.0 ? num / den : num;
    };

    double worst = 0.0;
    {
        const bne::real_vec fast = bne::assemble_Q(sim.ws, sim.state.G.phys);
        const bne::real_vec direct =
            bne::direct_Q_oracle(sim.table, sim.state.G.phys, sf.alpha_eff);
        worst = rel_linf(fast, direct);
        std::printf("configured ic : rel linf %.3e\n", worst);
    }
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < trials; ++trial) {
        bne::real_vec G(sim.grid.size());
        for (std::size_t i = 0; i < G.size(); ++i) G[i] = unif(rng);
        const bne::real_vec fast = bne::assemble_Q(sim.ws, G);
        const bne::real_vec direct = bne::direct_Q_oracle(sim.table, G, sf.alpha_eff);
        const double err = rel_linf(fast, direct);
        worst = std::max(worst, err);
        std::printf("random %2d     : rel linf %.3e\n", trial, err);
    }
    std::printf("worst %.3e vs tolerance %.1e: %s\n", worst, tol, worst <= tol ? "OK" : "FAIL");
    return worst <= tol ? exit_ok : exit_numeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homogeneous quantum Boltzmann relaxation on a Fourier velocity grid"};
    app.require_subcommand(1);

    // residual
    std::string res_preset;
    std::vector<int> res_ns{16, 32, 64};
    bool res_static = false;
    int res_threads = 1;
    std::string res_out;
    CLI::App* res = app.add_subcommand(
        "residual", "grid-refinement residual table for an equilibrium family");
    res->add_option("preset", res_preset,
                    "case id, e.g. residual.fd2d.sigma05.L4 or residual.be3d.sigma1.L6.ub")
        ->required();
    res->add_option("--n", res_ns, "grid sizes per axis")->delimiter(',');
    res->add_flag("--static", res_static, "fixed frame instead of the velocity-rescaled one");
    res->add_option("--threads", res_threads, "FFT threads");
    res->add_option("--out", res_out, "also write the rows as CSV");

    // relax
    std::string rel_preset, rel_out, rel_snap_dir;
    int rel_n = 0, rel_threads = 1;
    double rel_dt = 0.0, rel_tfinal = -1.0;
    std::vector<double> rel_snaps;
    CLI::App* rel =
        app.add_subcommand("relax", "relaxation / blow-up scenario with series output");
    rel->add_option("preset", rel_preset, "scenario id, e.g. relax.fd2d.ball.r05")->required();
    rel->add_option("--n", rel_n, "override grid size per axis");
    rel->add_option("--dt", rel_dt, "override time step");
    rel->add_option("--tfinal", rel_tfinal, "override final time");
    rel->add_option("--snap", rel_snaps, "snapshot times")->delimiter(',');
    rel->add_option("--out", rel_out, "time series file (NDJSON)");
    rel->add_option("--snap-dir", rel_snap_dir, "directory for snapshot CSV files");
    rel->add_option("--threads", rel_threads, "FFT threads");

    // run
    std::string run_config, run_out, run_snap_dir;
    CLI::App* runc = app.add_subcommand("run", "general run from a key = value config file");
    runc->add_option("config", run_config, "config file path")->required();
    runc->add_option("--out", run_out, "time series file (NDJSON)");
    runc->add_option("--snap-dir", run_snap_dir, "directory for snapshot CSV files");

    // kernel-cache
    std::string kc_config, kc_out;
    CLI::App* kc = app.add_subcommand("kernel-cache",
                                      "precompute a collision kernel table to a binary file");
    kc->add_option("config", kc_config, "config file path")->required();
    kc->add_option("--out", kc_out, "output file")->required();

    // oracle
    std::string or_config;
    int or_trials = 3;
    double or_tol = 1e-10;
    CLI::App* orc = app.add_subcommand(
        "oracle", "cross-check the transform assembly against the direct quadrature sums");
    orc->add_option("config", or_config, "config file path (small n only)")->required();
    orc->add_option("--trials", or_trials, "number of random fields");
    orc->add_option("--tol", or_tol, "relative tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (res->parsed())
            return cmd_residual(res_preset, res_ns, res_static, res_threads, res_out);
        if (rel->parsed())
            return cmd_relax(rel_preset, rel_n, rel_dt, rel_tfinal, rel_snaps, rel_out,
                             rel_snap_dir, rel_threads);
        if (runc->parsed()) return cmd_run(run_config, run_out, run_snap_dir);
        if (kc->parsed()) return cmd_kernel_cache(kc_config, kc_out);
        if (orc->parsed()) return cmd_oracle(or_config, or_trials, or_tol);
    } catch (const bne::config_error& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return exit_config;
    } catch (const bne::io_error& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return exit_config;
    } catch (const bne::numeric_error& err) {
        std::fprintf(stderr, "numerical failure: %s\n", err.what());
        return exit_numeric;
    }
    return exit_ok;
}
