#pragma once

#include <memory>
#include <string>

#include "bne/grid.hpp"
#include "bne/kernel.hpp"

namespace bne {

/// Raised when a field's amplitude escapes the configured bound during a
/// collision evaluation. Degenerate Bose runs are *expected* to end this way,
/// so it carries the observed sup-norm and callers annotate it with the
/// simulation time instead of treating it as a crash.
struct blowup_error : numeric_error {
    double linf;
    explicit blowup_error(double v)
        : numeric_error("numerical blow-up: field sup-norm reached " + std::to_string(v)),
          linf(v) {}
};

// ---------------------------------------------------------------------------
// CollisionWorkspace: scratch buffers and FFT plans for one evaluation stream.
// The kernel table is shared read-only; distinct workspaces may evaluate
// concurrently. alpha_eff and c_pre are the frame-dependent coefficients the
// operator is assembled with (quantum coupling and collision prefactor).
// ---------------------------------------------------------------------------
struct CollisionWorkspace {
    const KernelTable* table = nullptr;
    GridSpec grid;
    std::shared_ptr<Fft> fft;

    double alpha_eff = 0.0;
    double c_pre = 1.0;
    double blowup_bound = 1e6;
    /// Largest imaginary residue (relative to the output sup-norm) seen when a
    /// physical-space result was truncated to real storage; diagnostic only.
    double last_imag_residue = 0.0;

    // scratch, all fftw-aligned
    cplx_vec ca, cb, cc, cd, pacc;
    cplx_vec sha, shb, fa, fb, cacc;
    cplx_vec ap, app;

    CollisionWorkspace(const KernelTable& t, std::shared_ptr<Fft> engine)
        : table(&t), grid(t.grid), fft(std::move(engine)) {
        if (!fft) throw config_error("collision workspace needs an FFT engine");
        if (fft->grid().n != grid.n || fft->grid().dim != grid.dim)
            throw config_error("collision workspace: FFT engine grid does not match table grid");
        const std::size_t sz = grid.size();
        ca.resize(sz);
        cb.resize(sz);
        cc.resize(sz);
        cd.resize(sz);
        pacc.resize(sz);
        sha.resize(sz);
        shb.resize(sz);
        fa.resize(sz);
        fb.resize(sz);
        cacc.resize(sz);
        ap.resize(sz);
        app.resize(sz);
    }
};

namespace detail {

inline void require_size(const CollisionWorkspace& ws, std::size_t got, const char* what) {
    if (got != ws.grid.size())
        throw config_error(std::string(what) + ": field size does not match workspace grid");
}

inline void guard_amplitude(const CollisionWorkspace& ws, const real_vec& g, const char* what) {
    double mx = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double a = std::abs(g[i]);
        if (!(a <= ws.blowup_bound)) {  // catches NaN too
            (void)what;
            for (std::size_t k = 0; k < g.size(); ++k)
                if (std::isfinite(g[k])) mx = std::max(mx, std::abs(g[k]));
            throw blowup_error(std::isfinite(g[i]) ? std::abs(g[i]) : mx);
        }
        mx = std::max(mx, a);
    }
}

/// out[x] = a[x] * b[x (+) j], indices componentwise mod n (row-major flat).
/// Shift components must already lie in [0, n).
template <typename TA, typename TB, typename TO>
inline void mul_shift(const GridSpec& g, const TA* a, const TB* b, const int* j, TO* out) {
    const int n = g.n;
    if (g.dim == 2) {
        for (int x0 = 0; x0 < n; ++x0) {
            int s0 = x0 + j[0];
            if (s0 >= n) s0 -= n;
            const TA* arow = a + std::size_t(x0) * n;
            const TB* brow = b + std::size_t(s0) * n;
            TO* orow = out + std::size_t(x0) * n;
            const int split = n - j[1];
            for (int x1 = 0; x1 < split; ++x1) orow[x1] = arow[x1] * brow[x1 + j[1]];
            for (int x1 = split; x1 < n; ++x1) orow[x1] = arow[x1] * brow[x1 + j[1] - n];
        }
        return;
    }
    for (int x0 = 0; x0 < n; ++x0) {
        int s0 = x0 + j[0];
        if (s0 >= n) s0 -= n;
        for (int x1 = 0; x1 < n; ++x1) {
            int s1 = x1 + j[1];
            if (s1 >= n) s1 -= n;
            const TA* arow = a + (std::size_t(x0) * n + x1) * n;
            const TB* brow = b + (std::size_t(s0) * n + s1) * n;
            TO* orow = out + (std::size_t(x0) * n + x1) * n;
            const int split = n - j[2];
            for (int x2 = 0; x2 < split; ++x2) orow[x2] = arow[x2] * brow[x2 + j[2]];
            for (int x2 = split; x2 < n; ++x2) orow[x2] = arow[x2] * brow[x2 + j[2] - n];
        }
    }
}

/// Inverse transform of one weight row at the physical nodes. The rows are
/// even in the signed mode, but the asymmetric index set {-n/2..n/2-1} leaves
/// the mixed Nyquist entries unpaired, so the image is genuinely complex for
/// directions that are not axis-aligned; it must be kept complex.
inline void weight_to_physical(CollisionWorkspace& ws, const double* row, cplx_vec& out) {
    const std::size_t sz = ws.grid.size();
    for (std::size_t i = 0; i < sz; ++i) ws.ca[i] = row[i];
    ws.fft->exec_bwd(ws.ca.data(), out.data());
}

inline void record_imag_residue(CollisionWorkspace& ws, const cplx* v, std::size_t sz) {
    double im = 0.0, re = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
        im = std::max(im, std::abs(v[i].imag()));
        re = std::max(re, std::abs(v[i].real()));
    }
    ws.last_imag_residue = (re > 0.0) ? im / re : im;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bilinear gain: out_n = C sum_p sum_{k+l == n (mod n)} alpha_p(k) F_k *
// alpha'_p(l) G_l. Each p-term is a circular convolution, evaluated as
// inverse-transform / pointwise product / one shared forward transform.
// Input and output coefficients use the n^{-d}-normalized convention.
// ---------------------------------------------------------------------------
inline cplx_vec q1c(CollisionWorkspace& ws, const cplx_vec& Fh, const cplx_vec& Gh) {
    detail::require_size(ws, Fh.size(), "q1c F");
    detail::require_size(ws, Gh.size(), "q1c G");
    const std::size_t sz = ws.grid.size();
    const KernelTable& t = *ws.table;
    for (std::size_t i = 0; i < sz; ++i) ws.pacc[i] = cplx{};
    for (int p = 0; p < t.count_P; ++p) {
        const double* al = t.alpha_row(p);
        const double* ar = t.alpha_prime_row(p);
        for (std::size_t i = 0; i < sz; ++i) ws.ca[i] = al[i] * Fh[i];
        for (std::size_t i = 0; i < sz; ++i) ws.cb[i] = ar[i] * Gh[i];
        ws.fft->exec_bwd(ws.ca.data(), ws.cc.data());
        ws.fft->exec_bwd(ws.cb.data(), ws.cd.data());
        for (std::size_t i = 0; i < sz; ++i) ws.pacc[i] += ws.cc[i] * ws.cd[i];
    }
    cplx_vec out(sz);
    ws.fft->exec_fwd(ws.pacc.data(), out.data());
    const double s = t.weight_C / double(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] *= s;
    return out;
}

// ---------------------------------------------------------------------------
// Bilinear loss: out_n = sum_{k+l == n} beta(l,l) F_k G_l — one circular
// convolution of F against the diagonally-weighted G.
// ---------------------------------------------------------------------------
inline cplx_vec q2c(CollisionWorkspace& ws, const cplx_vec& Fh, const cplx_vec& Gh) {
    detail::require_size(ws, Fh.size(), "q2c F");
    detail::require_size(ws, Gh.size(), "q2c G");
    const std::size_t sz = ws.grid.size();
    const KernelTable& t = *ws.table;
    for (std::size_t i = 0; i < sz; ++i) ws.ca[i] = Fh[i];
    for (std::size_t i = 0; i < sz; ++i) ws.cb[i] = t.beta_diag[i] * Gh[i];
    ws.fft->exec_bwd(ws.ca.data(), ws.cc.data());
    ws.fft->exec_bwd(ws.cb.data(), ws.cd.data());
    for (std::size_t i = 0; i < sz; ++i) ws.pacc[i] = ws.cc[i] * ws.cd[i];
    cplx_vec out(sz);
    ws.fft->exec_fwd(ws.pacc.data(), out.data());
    const double s = 1.0 / double(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] *= s;
    return out;
}

// ---------------------------------------------------------------------------
// Trilinear gain, the dominant cost. For each direction p and each grid
// shift j, two size-n^d transforms of the shifted products
//   a_p(x) G(x+j)   and   a'_p(x-j) G(x)
// are multiplied modewise and accumulated with weight G_j; a single inverse
// transform then yields the physical-space result. The shifted-product form
// absorbs the e^{2 i pi n.j/n} phase of the plain convolution identity. The
// transforms are complex: the weight images a_p carry an imaginary part from
// the unpaired Nyquist modes (see weight_to_physical) that the direct sum
// keeps, so dropping it would break oracle equivalence. Total cost
// O(P n^{2d} log n); the weight C and all DFT normalizations are folded into
// one final prefactor C / n^{3d}.
// ---------------------------------------------------------------------------
inline real_vec q1q_fast(CollisionWorkspace& ws, const real_vec& G) {
    detail::require_size(ws, G.size(), "q1q G");
    detail::guard_amplitude(ws, G, "q1q");
    const std::size_t sz = ws.grid.size();
    const KernelTable& t = *ws.table;
    const int n = ws.grid.n;
    const int dim = ws.grid.dim;

    for (std::size_t i = 0; i < sz; ++i) ws.cacc[i] = cplx{};
    for (int p = 0; p < t.count_P; ++p) {
        detail::weight_to_physical(ws, t.alpha_row(p), ws.ap);
        detail::weight_to_physical(ws, t.alpha_prime_row(p), ws.app);
        int jc[3] = {0, 0, 0};
        int mjc[3] = {0, 0, 0};
        for (std::size_t jf = 0; jf < sz; ++jf) {
            const double Gj = G[jf];
            if (Gj != 0.0) {
                detail::mul_shift(ws.grid, ws.ap.data(), G.data(), jc, ws.sha.data());
                for (int d = 0; d < dim; ++d) mjc[d] = (n - jc[d]) % n;
                detail::mul_shift(ws.grid, G.data(), ws.app.data(), mjc, ws.shb.data());
                ws.fft->exec_fwd(ws.sha.data(), ws.fa.data());
                ws.fft->exec_fwd(ws.shb.data(), ws.fb.data());
                for (std::size_t i = 0; i < sz; ++i) ws.cacc[i] += Gj * ws.fa[i] * ws.fb[i];
            }
            // row-major increment of the shift coordinates
            for (int d = dim - 1; d >= 0; --d) {
                if (++jc[d] < n) break;
                jc[d] = 0;
            }
        }
    }
    ws.fft->exec_bwd(ws.cacc.data(), ws.cc.data());
    detail::record_imag_residue(ws, ws.cc.data(), sz);
    real_vec out(sz);
    double scale = t.weight_C;
    for (int k = 0; k < 3; ++k) scale /= double(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = ws.cc[i].real() * scale;
    return out;
}

// ---------------------------------------------------------------------------
// Trilinear loss pieces. Each factorizes into a physical multiplier F against
// an inverse-transformed spectral pair coupling:
//   q2q: F . inv( sum beta(k,l)      G_k H_l )   = F . inv(q1c(G,H))
//   q3q: F . inv( sum beta(k+l,l)    G_l H_k )   weight alpha  on the sum index
//   q4q: F . inv( sum beta(l,k+l)    G_l H_k )   weight alpha' on the sum index
// where for q3q/q4q the inner sum at output mode s runs over l+k == s with
// the primed/unprimed row on G, as obtained by substituting s for the first
// (resp. second) argument of beta.
// ---------------------------------------------------------------------------
inline real_vec q2q(CollisionWorkspace& ws, const real_vec& F, const cplx_vec& Gh,
                    const cplx_vec& Hh) {
    detail::require_size(ws, F.size(), "q2q F");
    const std::size_t sz = ws.grid.size();
    cplx_vec pair = q1c(ws, Gh, Hh);
    ws.fft->exec_bwd(pair.data(), ws.cc.data());
    detail::record_imag_residue(ws, ws.cc.data(), sz);
    real_vec out(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = F[i] * ws.cc[i].real();
    return out;
}

namespace detail {

/// Shared body of q3q/q4q: pair_hat_s = C sum_p w_out,p(s) * [(w_in,p . G) * H]_s
inline real_vec weighted_pair_loss(CollisionWorkspace& ws, const real_vec& F, const cplx_vec& Gh,
                                   const cplx_vec& Hh, bool alpha_on_output) {
    require_size(ws, F.size(), "pair loss F");
    require_size(ws, Gh.size(), "pair loss G");
    require_size(ws, Hh.size(), "pair loss H");
    const std::size_t sz = ws.grid.size();
    const KernelTable& t = *ws.table;
    // plans carry FFTW_DESTROY_INPUT, so transform a scratch copy of H, never
    // the caller's array; ws.cd (H's physical image) is not touched below.
    for (std::size_t i = 0; i < sz; ++i) ws.ca[i] = Hh[i];
    ws.fft->exec_bwd(ws.ca.data(), ws.cd.data());
    cplx_vec acc(sz);
    for (std::size_t i = 0; i < sz; ++i) acc[i] = cplx{};
    for (int p = 0; p < t.count_P; ++p) {
        const double* win = alpha_on_output ? t.alpha_prime_row(p) : t.alpha_row(p);
        const double* wout = alpha_on_output ? t.alpha_row(p) : t.alpha_prime_row(p);
        for (std::size_t i = 0; i < sz; ++i) ws.ca[i] = win[i] * Gh[i];
        ws.fft->exec_bwd(ws.ca.data(), ws.cc.data());
        for (std::size_t i = 0; i < sz; ++i) ws.cc[i] *= ws.cd[i];
        ws.fft->exec_fwd(ws.cc.data(), ws.cb.data());
        for (std::size_t i = 0; i < sz; ++i) acc[i] += wout[i] * ws.cb[i];
    }
    const double s = t.weight_C / double(sz);
    for (std::size_t i = 0; i < sz; ++i) acc[i] *= s;
    ws.fft->exec_bwd(acc.data(), ws.cc.data());
    record_imag_residue(ws, ws.cc.data(), sz);
    real_vec out(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = F[i] * ws.cc[i].real();
    return out;
}

}  // namespace detail

inline real_vec q3q(CollisionWorkspace& ws, const real_vec& F, const cplx_vec& Gh,
                    const cplx_vec& Hh) {
    return detail::weighted_pair_loss(ws, F, Gh, Hh, true);
}

inline real_vec q4q(CollisionWorkspace& ws, const real_vec& F, const cplx_vec& Gh,
                    const cplx_vec& Hh) {
    return detail::weighted_pair_loss(ws, F, Gh, Hh, false);
}

// ---------------------------------------------------------------------------
// Full operator on a single real field:
//   c_pre * ( q1c - q2c - alpha_eff (q1q + q2q - q3q - q4q) )
// with every piece evaluated at F = G = H. alpha_eff == 0 short-circuits the
// trilinear pieces entirely (classical particles).
// ---------------------------------------------------------------------------
inline real_vec assemble_Q(CollisionWorkspace& ws, const real_vec& G) {
    detail::require_size(ws, G.size(), "assemble_Q G");
    detail::guard_amplitude(ws, G, "assemble_Q");
    const std::size_t sz = ws.grid.size();
    cplx_vec Gh(sz);
    for (std::size_t i = 0; i < sz; ++i) ws.ca[i] = G[i];
    ws.fft->forward_norm(ws.ca.data(), Gh.data());

    cplx_vec gain = q1c(ws, Gh, Gh);
    cplx_vec loss = q2c(ws, Gh, Gh);
    for (std::size_t i = 0; i < sz; ++i) gain[i] -= loss[i];
    ws.fft->exec_bwd(gain.data(), ws.cc.data());
    detail::record_imag_residue(ws, ws.cc.data(), sz);
    real_vec out(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = ws.cc[i].real();

    if (ws.alpha_eff != 0.0) {
        const real_vec t1 = q1q_fast(ws, G);
        const real_vec t2 = q2q(ws, G, Gh, Gh);
        const real_vec t3 = q3q(ws, G, Gh, Gh);
        const real_vec t4 = q4q(ws, G, Gh, Gh);
        for (std::size_t i = 0; i < sz; ++i)
            out[i] -= ws.alpha_eff * (t1[i] + t2[i] - t3[i] - t4[i]);
    }
    for (std::size_t i = 0; i < sz; ++i) out[i] *= ws.c_pre;
    return out;
}

// ---------------------------------------------------------------------------
// Direct-sum oracles: literal nested sums over the mode set with beta
// reconstructed from the table, O(n^{2d}) / O(n^{3d}). Reference for every
// fast path; cost-guarded to small grids.
// ---------------------------------------------------------------------------
namespace oracle {

namespace detail2 {

/// Pairwise mod-n index addition table on flat row-major storage indices.
inline std::vector<std::uint32_t> wrap_add_table(const GridSpec& g) {
    const std::size_t sz = g.size();
    const int n = g.n;
    std::vector<std::uint32_t> tab(sz * sz);
    std::vector<std::array<int, 3>> coord(sz);
    for (std::size_t f = 0; f < sz; ++f) {
        std::size_t r = f;
        for (int d = g.dim - 1; d >= 0; --d) {
            coord[f][d] = int(r % n);
            r /= n;
        }
    }
    for (std::size_t a = 0; a < sz; ++a)
        for (std::size_t b = 0; b < sz; ++b) {
            std::size_t out = 0;
            for (int d = 0; d < g.dim; ++d) {
                int c = coord[a][d] + coord[b][d];
                if (c >= n) c -= n;
                out = out * n + c;
            }
            tab[a * sz + b] = std::uint32_t(out);
        }
    return tab;
}

inline std::vector<double> dense_beta(const KernelTable& t) {
    const std::size_t sz = t.grid.size();
    std::vector<double> b(sz * sz);
    for (std::size_t k = 0; k < sz; ++k)
        for (std::size_t l = 0; l < sz; ++l) b[k * sz + l] = t.beta(k, l);
    return b;
}

inline void check_small(const GridSpec& g) {
    if ((g.dim == 2 && g.n > 16) || (g.dim == 3 && g.n > 8))
        throw config_error("direct oracle refuses this grid size (O(n^{3d}) cost)");
}

}  // namespace detail2

inline cplx_vec q1c(const KernelTable& t, const cplx_vec& Fh, const cplx_vec& Gh) {
    detail2::check_small(t.grid);
    const std::size_t sz = t.grid.size();
    const auto wadd = detail2::wrap_add_table(t.grid);
    cplx_vec out(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = cplx{};
    for (std::size_t k = 0; k < sz; ++k)
        for (std::size_t l = 0; l < sz; ++l) out[wadd[k * sz + l]] += t.beta(k, l) * Fh[k] * Gh[l];
    return out;
}

inline cplx_vec q2c(const KernelTable& t, const cplx_vec& Fh, const cplx_vec& Gh) {
    detail2::check_small(t.grid);
    const std::size_t sz = t.grid.size();
    const auto wadd = detail2::wrap_add_table(t.grid);
    cplx_vec out(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = cplx{};
    for (std::size_t k = 0; k < sz; ++k)
        for (std::size_t l = 0; l < sz; ++l) out[wadd[k * sz + l]] += t.beta(l, l) * Fh[k] * Gh[l];
    return out;
}

inline cplx_vec q1q(const KernelTable& t, const cplx_vec& Fh, const cplx_vec& Gh,
                    const cplx_vec& Hh) {
    detail2::check_small(t.grid);
    const std::size_t sz = t.grid.size();
    const auto wadd = detail2::wrap_add_table(t.grid);
    const auto beta = detail2::dense_beta(t);
    cplx_vec out(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = cplx{};
    for (std::size_t m = 0; m < sz; ++m) {
        const std::uint32_t* wm = wadd.data() + m * sz;
        for (std::size_t k = 0; k < sz; ++k) {
            const cplx fk_hm = Fh[k] * Hh[m];
            const std::uint32_t a = wm[k];  // k + m
            const double* brow = beta.data() + std::size_t(a) * sz;
            const std::uint32_t* wa = wadd.data() + std::size_t(a) * sz;
            for (std::size_t l = 0; l < sz; ++l)
                out[wa[l]] += brow[wm[l]] * fk_hm * Gh[l];  // modes k+l+m, beta(k+m, l+m)
        }
    }
    return out;
}

/// Spectral pair coupling of q3q: sum over a+b == s of beta(s, a) G_a H_b.
inline cplx_vec q3q_pair(const KernelTable& t, const cplx_vec& Gh, const cplx_vec& Hh) {
    detail2::check_small(t.grid);
    const std::size_t sz = t.grid.size();
    const auto wadd = detail2::wrap_add_table(t.grid);
    cplx_vec out(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = cplx{};
    for (std::size_t a = 0; a < sz; ++a)
        for (std::size_t b = 0; b < sz; ++b) {
            const std::uint32_t s = wadd[a * sz + b];
            out[s] += t.beta(s, a) * Gh[a] * Hh[b];
        }
    return out;
}

/// Spectral pair coupling of q4q: sum over a+b == s of beta(a, s) G_a H_b.
inline cplx_vec q4q_pair(const KernelTable& t, const cplx_vec& Gh, const cplx_vec& Hh) {
    detail2::check_small(t.grid);
    const std::size_t sz = t.grid.size();
    const auto wadd = detail2::wrap_add_table(t.grid);
    cplx_vec out(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = cplx{};
    for (std::size_t a = 0; a < sz; ++a)
        for (std::size_t b = 0; b < sz; ++b) {
            const std::uint32_t s = wadd[a * sz + b];
            out[s] += t.beta(a, s) * Gh[a] * Hh[b];
        }
    return out;
}

}  // namespace oracle

/// Literal-sum evaluation of the assembled operator (c_pre == 1); reference
/// for assemble_Q on tiny grids.
inline real_vec direct_Q_oracle(const KernelTable& t, const real_vec& G, double alpha_eff) {
    oracle::detail2::check_small(t.grid);
    const std::size_t sz = t.grid.size();
    if (G.size() != sz) throw config_error("direct_Q_oracle: field size mismatch");
    auto fft = std::make_shared<Fft>(t.grid);
    cplx_vec tmp(sz), Gh(sz);
    for (std::size_t i = 0; i < sz; ++i) tmp[i] = G[i];
    fft->forward_norm(tmp.data(), Gh.data());

    auto to_phys_re = [&](const cplx_vec& spec) {
        cplx_vec in(sz), outc(sz);
        for (std::size_t i = 0; i < sz; ++i) in[i] = spec[i];
        fft->exec_bwd(in.data(), outc.data());
        real_vec r(sz);
        for (std::size_t i = 0; i < sz; ++i) r[i] = outc[i].real();
        return r;
    };

    cplx_vec gain = oracle::q1c(t, Gh, Gh);
    const cplx_vec loss = oracle::q2c(t, Gh, Gh);
    for (std::size_t i = 0; i < sz; ++i) gain[i] -= loss[i];
    real_vec out = to_phys_re(gain);

    if (alpha_eff != 0.0) {
        const real_vec t1 = to_phys_re(oracle::q1q(t, Gh, Gh, Gh));
        const real_vec pair2 = to_phys_re(oracle::q1c(t, Gh, Gh));
        const real_vec pair3 = to_phys_re(oracle::q3q_pair(t, Gh, Gh));
        const real_vec pair4 = to_phys_re(oracle::q4q_pair(t, Gh, Gh));
        for (std::size_t i = 0; i < sz; ++i)
            out[i] -= alpha_eff * (t1[i] + G[i] * (pair2[i] - pair3[i] - pair4[i]));
    }
    return out;
}

}  // namespace bne
