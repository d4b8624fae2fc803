#pragma once

#include <complex>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>

namespace bne {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Error in user-supplied configuration (bad key, inconsistent fields, ...).
/// Carries an optional source location for line-oriented config files.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg, int line = 0, int col = 0)
        : std::runtime_error(line > 0 ? (std::to_string(line) + ":" + std::to_string(col) + ": " + msg)
                                      : msg),
          line_(line), col_(col) {}
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_, col_;
};

/// Unrecoverable numerical failure (NaN/Inf contamination, bracket failure, ...).
class numeric_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// sin(x)/x, continuous at 0. The series branch keeps full double accuracy
/// for |x| below the switch point (next term is ~x^6/5040 < 1e-24 there).
inline double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + (x2 * x2) / 120.0;
    }
    return std::sin(x) / x;
}

inline double sq(double x) { return x * x; }

// ---------------------------------------------------------------------------
// FFTW-aligned storage. All transform buffers come from fftw_malloc so that
// plans created on one buffer can be executed on any other (same SIMD
// alignment class).
// ---------------------------------------------------------------------------
template <typename T>
struct AlignedVec {
    AlignedVec() = default;
    explicit AlignedVec(std::size_t n) { resize(n); }
    AlignedVec(std::size_t n, T value) {
        resize(n);
        for (std::size_t i = 0; i < n; ++i) ptr_[i] = value;
    }
    AlignedVec(const AlignedVec& o) { *this = o; }
    AlignedVec& operator=(const AlignedVec& o) {
        if (this != &o) {
            resize(o.size_);
            for (std::size_t i = 0; i < size_; ++i) ptr_[i] = o.ptr_[i];
        }
        return *this;
    }
    AlignedVec(AlignedVec&& o) noexcept : ptr_(o.ptr_), size_(o.size_) {
        o.ptr_ = nullptr;
        o.size_ = 0;
    }
    AlignedVec& operator=(AlignedVec&& o) noexcept {
        if (this != &o) {
            free();
            ptr_ = o.ptr_;
            size_ = o.size_;
            o.ptr_ = nullptr;
            o.size_ = 0;
        }
        return *this;
    }
    ~AlignedVec() { free(); }

    void resize(std::size_t n) {
        if (n == size_) return;
        free();
        if (n > 0) {
            ptr_ = static_cast<T*>(fftw_malloc(n * sizeof(T)));
            if (!ptr_) throw std::bad_alloc();
        }
        size_ = n;
    }
    void assign(std::size_t n, T value) {
        resize(n);
        for (std::size_t i = 0; i < n; ++i) ptr_[i] = value;
    }
    void zero() {
        for (std::size_t i = 0; i < size_; ++i) ptr_[i] = T{};
    }

    T* data() noexcept { return ptr_; }
    const T* data() const noexcept { return ptr_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    T& operator[](std::size_t i) noexcept { return ptr_[i]; }
    const T& operator[](std::size_t i) const noexcept { return ptr_[i]; }
    T* begin() noexcept { return ptr_; }
    T* end() noexcept { return ptr_ + size_; }
    const T* begin() const noexcept { return ptr_; }
    const T* end() const noexcept { return ptr_ + size_; }

private:
    void free() {
        if (ptr_) fftw_free(ptr_);
        ptr_ = nullptr;
        size_ = 0;
    }
    T* ptr_ = nullptr;
    std::size_t size_ = 0;
};

using real_vec = AlignedVec<double>;
using cplx_vec = AlignedVec<cplx>;

// ---------------------------------------------------------------------------
// Index conventions. Storage is row-major with per-axis index a in [0,n);
// the signed frequency / node integer is j = a for a < n/2 and a - n above.
// All mode arithmetic is circular (mod n), mapped back into [-n/2, n/2).
// ---------------------------------------------------------------------------
inline int signed_of(int a, int n) noexcept { return a < n / 2 ? a : a - n; }
inline int storage_of(int j, int n) noexcept { return j >= 0 ? j : j + n; }

/// Wrap an arbitrary integer onto the storage range [0, n).
inline int wrap_storage(int j, int n) noexcept {
    int r = j % n;
    return r < 0 ? r + n : r;
}

/// Wrap an arbitrary integer into the signed mode range [-n/2, n/2).
inline int wrap_signed(int j, int n) noexcept { return signed_of(wrap_storage(j, n), n); }

}  // namespace bne
