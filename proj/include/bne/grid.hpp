#pragma once

#include <array>
#include <cassert>
#include <memory>
#include <mutex>

#include "bne/common.hpp"

namespace bne {

// ---------------------------------------------------------------------------
// GridSpec: uniform velocity grid on [-L,L]^d seen through the rescaled
// variable xi in [-pi,pi)^d, nodes xi_j = 2*pi*j/n for j in {-n/2..n/2-1}^d.
// support_S / trunc_R are the support and truncation radii of the collision
// operator in xi-units; they satisfy the anti-aliasing inequality in ratio
// form: with lambda = R/S, S <= 2*pi/(2*lambda + 1 + sqrt(2)).
// ---------------------------------------------------------------------------
struct GridSpec {
    int dim = 2;
    int n = 0;
    double half_width_L = 0.0;
    double support_S = 0.0;
    double trunc_R = 0.0;
    bool pow2 = true;  // non-power-of-two sizes work but are flagged

    std::size_t size() const noexcept {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }
    double xi_node(int j) const noexcept { return 2.0 * pi * j / n; }
    double dxi() const noexcept { return std::pow(2.0 * pi / n, dim); }
};

inline GridSpec build_grid(int dim, int n, double half_width_L, double trunc_ratio) {
    if (dim != 2 && dim != 3) throw config_error("dim must be 2 or 3");
    if (n < 4 || n % 2 != 0) throw config_error("n must be even and >= 4");
    if (half_width_L <= 0.0) throw config_error("half_width_L must be positive");
    if (trunc_ratio < 1.0) throw config_error("trunc_ratio must be >= 1");
    GridSpec g;
    g.dim = dim;
    g.n = n;
    g.half_width_L = half_width_L;
    g.support_S = 2.0 * pi / (2.0 * trunc_ratio + 1.0 + std::sqrt(2.0));
    g.trunc_R = trunc_ratio * g.support_S;
    g.pow2 = (n & (n - 1)) == 0;
    return g;
}

// ---------------------------------------------------------------------------
// Fft: FFTW plan set for one grid. Forward is normalized by n^{-d} (so that
// \hat G_k = n^{-d} sum_j G_j e^{-2 i pi k.j/n}); inverse is the plain sum.
// Raw (unnormalized) executors are exposed for hot paths that fold the
// normalization into their final prefactor.
//
// Plans are created once on scratch buffers and run on caller arrays through
// the new-array execute interface; every buffer must come from fftw_malloc
// (AlignedVec) so alignment classes match. Executing one plan on distinct
// arrays from several threads is safe; plan creation is serialized.
// ---------------------------------------------------------------------------
class Fft {
public:
    /// deterministic_plan forces FFTW_ESTIMATE so repeated runs pick the same
    /// algorithm (FFTW_MEASURE times candidates and may tie-break differently
    /// between processes, changing results at the rounding level).
    explicit Fft(const GridSpec& g, int threads = 1, bool deterministic_plan = false) : g_(g) {
        const std::size_t nt = g.size();
        nc_ = complex_size(g);
        scr_r_.resize(nt);
        scr_c_.resize(nt);
        scr_c2_.resize(nt);
        scr_h_.resize(nc_);
        scr_r_.zero();
        scr_c_.zero();
        scr_c2_.zero();
        scr_h_.zero();

        std::array<int, 3> dims{g.n, g.n, g.n};
        const unsigned flags =
            ((nt >= 4096 && !deterministic_plan) ? FFTW_MEASURE : FFTW_ESTIMATE) |
            FFTW_DESTROY_INPUT;

        static std::mutex planner_mutex;
        std::lock_guard<std::mutex> lock(planner_mutex);
#ifdef BNE_HAVE_FFTW_OMP
        static std::once_flag once;
        std::call_once(once, [] { fftw_init_threads(); });
        fftw_plan_with_nthreads(threads > 0 ? threads : 1);
#else
        (void)threads;
#endif
        auto* ci = reinterpret_cast<fftw_complex*>(scr_c_.data());
        auto* co = reinterpret_cast<fftw_complex*>(scr_c2_.data());
        auto* h = reinterpret_cast<fftw_complex*>(scr_h_.data());
        plan_fwd_ = fftw_plan_dft(g.dim, dims.data(), ci, co, FFTW_FORWARD, flags);
        plan_bwd_ = fftw_plan_dft(g.dim, dims.data(), ci, co, FFTW_BACKWARD, flags);
        plan_r2c_ = fftw_plan_dft_r2c(g.dim, dims.data(), scr_r_.data(), h, flags);
        plan_c2r_ = fftw_plan_dft_c2r(g.dim, dims.data(), h, scr_r_.data(), flags);
        if (!plan_fwd_ || !plan_bwd_ || !plan_r2c_ || !plan_c2r_)
            throw numeric_error("fftw plan creation failed");
    }
    ~Fft() {
        fftw_destroy_plan(plan_fwd_);
        fftw_destroy_plan(plan_bwd_);
        fftw_destroy_plan(plan_r2c_);
        fftw_destroy_plan(plan_c2r_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    const GridSpec& grid() const noexcept { return g_; }

    /// Number of complex entries in the half-spectrum (r2c) layout.
    static std::size_t complex_size(const GridSpec& g) noexcept {
        std::size_t s = static_cast<std::size_t>(g.n / 2 + 1);
        for (int d = 0; d < g.dim - 1; ++d) s *= static_cast<std::size_t>(g.n);
        return s;
    }
    std::size_t half_size() const noexcept { return nc_; }

    // --- raw executors (no normalization) ---------------------------------
    void exec_fwd(const cplx* in, cplx* out) const {
        fftw_execute_dft(plan_fwd_, to_fftw(in), reinterpret_cast<fftw_complex*>(out));
    }
    void exec_bwd(const cplx* in, cplx* out) const {
        fftw_execute_dft(plan_bwd_, to_fftw(in), reinterpret_cast<fftw_complex*>(out));
    }
    void exec_r2c(const double* in, cplx* out) const {
        // r2c never destroys its (real) input
        fftw_execute_dft_r2c(plan_r2c_, const_cast<double*>(in),
                             reinterpret_cast<fftw_complex*>(out));
    }
    /// NOTE: destroys `in` (multi-dimensional c2r cannot preserve input).
    void exec_c2r(cplx* in, double* out) const {
        fftw_execute_dft_c2r(plan_c2r_, reinterpret_cast<fftw_complex*>(in), out);
    }

    // --- normalized helpers ------------------------------------------------
    /// coef_k = n^{-d} sum_j phys_j e^{-2 i pi k.j/n}
    void forward_norm(const cplx* in, cplx* out) const {
        exec_fwd(in, out);
        const double s = 1.0 / static_cast<double>(g_.size());
        for (std::size_t i = 0; i < g_.size(); ++i) out[i] *= s;
    }
    /// phys_j = sum_k coef_k e^{+2 i pi k.j/n}
    void inverse_norm(const cplx* in, cplx* out) const { exec_bwd(in, out); }

private:
    static fftw_complex* to_fftw(const cplx* p) {
        return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p));
    }
    GridSpec g_;
    std::size_t nc_ = 0;
    real_vec scr_r_;
    cplx_vec scr_c_, scr_c2_, scr_h_;
    fftw_plan plan_fwd_{}, plan_bwd_{}, plan_r2c_{}, plan_c2r_{};
};

// ---------------------------------------------------------------------------
// SpectralField: a real-valued grid function together with its (full) Fourier
// coefficients, with currency flags. Real input keeps the coefficient array
// Hermitian: coef(-k) = conj(coef(k)) with indices mod n.
// ---------------------------------------------------------------------------
struct SpectralField {
    GridSpec grid;
    std::shared_ptr<Fft> fft;
    real_vec phys;
    cplx_vec coef;
    bool phys_ok = false;
    bool coef_ok = false;

    SpectralField() = default;
    SpectralField(const GridSpec& g, std::shared_ptr<Fft> engine)
        : grid(g), fft(std::move(engine)), phys(g.size(), 0.0), coef(g.size(), cplx{}) {}

    static SpectralField zeros(const GridSpec& g, std::shared_ptr<Fft> engine) {
        SpectralField f(g, std::move(engine));
        f.phys_ok = true;
        return f;
    }

    void mark_phys() {
        phys_ok = true;
        coef_ok = false;
    }
    void mark_coef() {
        coef_ok = true;
        phys_ok = false;
    }

    void forward() {
        if (coef_ok) return;
        if (!phys_ok) throw numeric_error("forward: no current representation");
        cplx_vec tmp(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) tmp[i] = phys[i];
        fft->forward_norm(tmp.data(), coef.data());
        coef_ok = true;
    }
    void inverse() {
        if (phys_ok) return;
        if (!coef_ok) throw numeric_error("inverse: no current representation");
        cplx_vec tmp(grid.size());
        fft->inverse_norm(coef.data(), tmp.data());
        for (std::size_t i = 0; i < grid.size(); ++i) phys[i] = tmp[i].real();
        phys_ok = true;
    }
};

/// Spectral derivative along `axis` (0-based): coefficients become
/// i*k_axis*coef_k. The unpaired Nyquist mode k_axis = -n/2 is zeroed so real
/// fields stay real.
inline SpectralField fourier_derivative(SpectralField field, int axis) {
    if (axis < 0 || axis >= field.grid.dim) throw config_error("derivative axis out of range");
    field.forward();
    const int n = field.grid.n;
    const int dim = field.grid.dim;
    const std::size_t total = field.grid.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        int a = 0;
        // row-major decode of the axis coordinate
        for (int d = dim - 1; d >= 0; --d) {
            int c = static_cast<int>(rest % n);
            rest /= n;
            if (d == axis) a = c;
        }
        const int k = signed_of(a, n);
        if (k == -n / 2)
            field.coef[idx] = cplx{};
        else
            field.coef[idx] *= cplx(0.0, static_cast<double>(k));
    }
    field.mark_coef();
    return field;
}

}  // namespace bne
