#pragma once

// Thin RAII layer over FFTW. Private to the library.

#include <complex>
#include <cstddef>

namespace dctpa::detail {

/// fftw_malloc'd complex buffer (SIMD-aligned).
class AlignedBuffer {
public:
    AlignedBuffer() = default;
    explicit AlignedBuffer(std::size_t n);
    ~AlignedBuffer();
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;
    AlignedBuffer(AlignedBuffer&& other) noexcept;
    AlignedBuffer& operator=(AlignedBuffer&& other) noexcept;

    std::complex<double>* data() noexcept { return data_; }
    const std::complex<double>* data() const noexcept { return data_; }
    std::size_t size() const noexcept { return size_; }
    std::complex<double>& operator[](std::size_t i) noexcept { return data_[i]; }
    const std::complex<double>& operator[](std::size_t i) const noexcept { return data_[i]; }

    void fill_zero() noexcept;

private:
    std::complex<double>* data_ = nullptr;
    std::size_t size_ = 0;
};

enum class FftDirection { forward, backward };

/// In-place unnormalized DFT on an AlignedBuffer of length n.
/// forward:  X_k = sum_j x_j exp(-2 pi i jk / n)
/// backward: x_j = sum_k X_k exp(+2 pi i jk / n)
/// Plans are created once per (n, direction) under a lock and shared; execution
/// is thread-safe.
void fft_inplace(AlignedBuffer& buffer, FftDirection direction);

}  // namespace dctpa::detail
