#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace chnls {

using cx = std::complex<double>;

/// Owning wrapper around a pair of FFTW plans of fixed length.
///
/// `forward` is unnormalized, `inverse` divides by N so that
/// inverse(forward(f)) == f. An instance keeps an internal aligned buffer and
/// must not be used by two threads at the same time; use `thread_transform`
/// to obtain a per-thread instance.
class FourierTransform {
public:
    explicit FourierTransform(std::size_t n);
    ~FourierTransform();

    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;
    FourierTransform(FourierTransform&& other) noexcept;
    FourierTransform& operator=(FourierTransform&& other) noexcept;

    std::size_t size() const noexcept { return n_; }

    void forward(std::span<const cx> in, std::span<cx> out);
    void inverse(std::span<const cx> in, std::span<cx> out);
    /// Inverse transform without the 1/N factor.
    void inverse_unscaled(std::span<const cx> in, std::span<cx> out);

private:
    void release() noexcept;
    void execute(void* plan, std::span<const cx> in, std::span<cx> out);

    std::size_t n_ = 0;
    cx* buffer_ = nullptr;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

/// Per-thread cached transform of length n.
FourierTransform& thread_transform(std::size_t n);

}  // namespace chnls
