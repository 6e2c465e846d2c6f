#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace dctpa::detail {

AlignedBuffer::AlignedBuffer(std::size_t n)
    : data_(reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n))),
      size_(n)
{
    if (data_ == nullptr && n > 0) {
        throw std::bad_alloc();
    }
    fill_zero();
}

AlignedBuffer::~AlignedBuffer()
{
    if (data_ != nullptr) {
        fftw_free(data_);
    }
}

AlignedBuffer::AlignedBuffer(AlignedBuffer&& other) noexcept
    : data_(std::exchange(other.data_, nullptr)), size_(std::exchange(other.size_, 0))
{
}

AlignedBuffer& AlignedBuffer::operator=(AlignedBuffer&& other) noexcept
{
    if (this != &other) {
        if (data_ != nullptr) {
            fftw_free(data_);
        }
        data_ = std::exchange(other.data_, nullptr);
        size_ = std::exchange(other.size_, 0);
    }
    return *this;
}

void AlignedBuffer::fill_zero() noexcept
{
    for (std::size_t i = 0; i < size_; ++i) {
        data_[i] = {0.0, 0.0};
    }
}

namespace {

class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(std::size_t n, FftDirection direction)
    {
        const std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, direction);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        // FFTW_ESTIMATE keeps the chosen algorithm, and therefore every output
        // bit, identical from run to run.
        AlignedBuffer scratch(n);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr,
                                          direction == FftDirection::forward ? FFTW_FORWARD
                                                                              : FFTW_BACKWARD,
                                          FFTW_ESTIMATE);
        if (plan == nullptr) {
            throw std::runtime_error("fftw: failed to create plan");
        }
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, FftDirection>, fftw_plan> plans_;
};

PlanCache& plan_cache()
{
    static PlanCache cache;
    return cache;
}

}  // namespace

void fft_inplace(AlignedBuffer& buffer, FftDirection direction)
{
    fftw_plan plan = plan_cache().get(buffer.size(), direction);
    auto* ptr = reinterpret_cast<fftw_complex*>(buffer.data());
    fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace dctpa::detail
