#include "chnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace chnls {

namespace {

// The FFTW planner is not re-entrant; plan execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

FourierTransform::FourierTransform(std::size_t n) : n_(n) {
    if (n == 0) {
        throw std::invalid_argument("FourierTransform: zero length");
    }
    std::lock_guard lock(planner_mutex());
    auto* buf = fftw_alloc_complex(2 * n);
    if (buf == nullptr) {
        throw std::bad_alloc();
    }
    buffer_ = reinterpret_cast<cx*>(buf);
    const int len = static_cast<int>(n);
    // Out-of-place plans: c2c transforms then leave their input untouched,
    // and the plans can run directly on caller arrays of matching alignment.
    forward_plan_ = fftw_plan_dft_1d(len, buf, buf + n, FFTW_FORWARD, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_1d(len, buf, buf + n, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FourierTransform::~FourierTransform() { release(); }

FourierTransform::FourierTransform(FourierTransform&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

FourierTransform& FourierTransform::operator=(FourierTransform&& other) noexcept {
    if (this != &other) {
        release();
        n_ = std::exchange(other.n_, 0);
        buffer_ = std::exchange(other.buffer_, nullptr);
        forward_plan_ = std::exchange(other.forward_plan_, nullptr);
        inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
    }
    return *this;
}

void FourierTransform::release() noexcept {
    if (buffer_ == nullptr) {
        return;
    }
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
    fftw_free(buffer_);
    buffer_ = nullptr;
}

void FourierTransform::execute(void* plan, std::span<const cx> in, std::span<cx> out) {
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cx*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    auto* buf = reinterpret_cast<fftw_complex*>(buffer_);
    const bool overlap = in.data() < out.data() + n_ && out.data() < in.data() + n_;
    if (!overlap && fftw_alignment_of(reinterpret_cast<double*>(src)) == fftw_alignment_of(reinterpret_cast<double*>(buf)) &&
        fftw_alignment_of(reinterpret_cast<double*>(dst)) == fftw_alignment_of(reinterpret_cast<double*>(buf + n_))) {
        fftw_execute_dft(static_cast<fftw_plan>(plan), src, dst);
        return;
    }
    std::copy(in.begin(), in.end(), buffer_);
    fftw_execute(static_cast<fftw_plan>(plan));
    std::copy(buffer_ + n_, buffer_ + 2 * n_, out.begin());
}

void FourierTransform::forward(std::span<const cx> in, std::span<cx> out) {
    if (in.size() != n_ || out.size() != n_) {
        throw std::invalid_argument("FourierTransform::forward: length mismatch");
    }
    execute(forward_plan_, in, out);
}

void FourierTransform::inverse(std::span<const cx> in, std::span<cx> out) {
    inverse_unscaled(in, out);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& z : out) {
        z *= scale;
    }
}

void FourierTransform::inverse_unscaled(std::span<const cx> in, std::span<cx> out) {
    if (in.size() != n_ || out.size() != n_) {
        throw std::invalid_argument("FourierTransform::inverse: length mismatch");
    }
    execute(inverse_plan_, in, out);
}

FourierTransform& thread_transform(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<FourierTransform>> cache;
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<FourierTransform>(n);
    }
    return *slot;
}

}  // namespace chnls
