#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "chnls/fft.hpp"

namespace chnls {

/// Uniform periodic grid on [-L, L) with its FFT-ordered wavenumber table.
///
/// Node j sits at x_j = -L + j*dx, dx = 2L/N. Wavenumbers follow the FFT
/// layout k_j = (pi/L) * {0, 1, ..., N/2-1, -N/2, ..., -1}.
class GridSpec {
public:
    /// Throws GridError unless half_length > 0 and n_points is a power of two >= 8.
    GridSpec(double half_length, std::size_t n_points);

    double half_length() const noexcept { return half_length_; }
    std::size_t n_points() const noexcept { return n_points_; }
    double dx() const noexcept { return dx_; }
    /// Fundamental wavenumber pi/L.
    double dk() const noexcept { return dk_; }
    std::span<const double> wavenumbers() const noexcept { return wavenumbers_; }
    double node(std::size_t j) const noexcept { return -half_length_ + static_cast<double>(j) * dx_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }

private:
    double half_length_;
    std::size_t n_points_;
    double dx_;
    double dk_;
    std::vector<double> wavenumbers_;
    std::vector<double> nodes_;
};

using GridPtr = std::shared_ptr<const GridSpec>;

GridPtr make_grid(double half_length, std::size_t n_points);

/// Physical-space samples of a complex field on a grid.
class SpectralField {
public:
    SpectralField(GridPtr grid, std::vector<cx> values);
    static SpectralField zeros(GridPtr grid);
    static SpectralField constant(GridPtr grid, cx value);

    const GridSpec& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const cx> values() const noexcept { return values_; }
    std::span<cx> values() noexcept { return values_; }
    cx operator[](std::size_t j) const noexcept { return values_[j]; }
    cx& operator[](std::size_t j) noexcept { return values_[j]; }

private:
    GridPtr grid_;
    std::vector<cx> values_;
};

/// A field together with the time it belongs to.
struct FieldState {
    SpectralField psi;
    double t = 0.0;
};

/// FFT-ordered Fourier coefficients of a field (unnormalized forward DFT).
std::vector<cx> to_spectrum(const SpectralField& f);
SpectralField from_spectrum(GridPtr grid, std::span<const cx> spectrum);

/// Multiply each mode by (ik)^order. For odd orders the Nyquist mode is
/// dropped so that real input stays real.
SpectralField spectral_derivative(const SpectralField& f, int order);

/// Apply 1 - a^2 d_xx (symbol 1 + a^2 k^2).
SpectralField helmholtz_apply(const SpectralField& f, double a);

/// Invert 1 - a^2 d_xx; well posed for every a since 1 + a^2 k^2 >= 1.
SpectralField helmholtz_invert(const SpectralField& f, double a);

/// Discrete L2 inner product sum(conj(f) g) dx.
cx inner_product(const SpectralField& f, const SpectralField& g);

}  // namespace chnls
