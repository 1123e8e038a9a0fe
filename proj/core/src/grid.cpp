#include "chnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chnls/error.hpp"

namespace chnls {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_grid(const SpectralField& f, const SpectralField& g) {
    if (f.size() != g.size()) {
        throw GridError("fields live on different grids");
    }
}

template <typename Symbol>
SpectralField apply_symbol(const SpectralField& f, Symbol&& symbol) {
    auto spectrum = to_spectrum(f);
    const auto k = f.grid().wavenumbers();
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        spectrum[j] *= symbol(j, k[j]);
    }
    return from_spectrum(f.grid_ptr(), spectrum);
}

}  // namespace

GridSpec::GridSpec(double half_length, std::size_t n_points)
    : half_length_(half_length), n_points_(n_points) {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw GridError("half_length must be positive and finite, got " + std::to_string(half_length));
    }
    if (n_points < 8 || !is_power_of_two(n_points)) {
        throw GridError("n_points must be a power of two >= 8, got " + std::to_string(n_points));
    }
    dx_ = 2.0 * half_length / static_cast<double>(n_points);
    dk_ = std::numbers::pi / half_length;
    wavenumbers_.resize(n_points);
    nodes_.resize(n_points);
    const auto half = static_cast<long>(n_points / 2);
    for (std::size_t j = 0; j < n_points; ++j) {
        const long m = static_cast<long>(j) < half ? static_cast<long>(j) : static_cast<long>(j) - 2 * half;
        wavenumbers_[j] = dk_ * static_cast<double>(m);
        nodes_[j] = node(j);
    }
}

GridPtr make_grid(double half_length, std::size_t n_points) {
    return std::make_shared<const GridSpec>(half_length, n_points);
}

SpectralField::SpectralField(GridPtr grid, std::vector<cx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) {
        throw GridError("SpectralField requires a grid");
    }
    if (values_.size() != grid_->n_points()) {
        throw GridError("SpectralField: expected " + std::to_string(grid_->n_points()) + " samples, got " +
                        std::to_string(values_.size()));
    }
}

SpectralField SpectralField::zeros(GridPtr grid) { return constant(std::move(grid), cx{0.0, 0.0}); }

SpectralField SpectralField::constant(GridPtr grid, cx value) {
    const auto n = grid->n_points();
    return SpectralField(std::move(grid), std::vector<cx>(n, value));
}

std::vector<cx> to_spectrum(const SpectralField& f) {
    std::vector<cx> out(f.size());
    thread_transform(f.size()).forward(f.values(), out);
    return out;
}

SpectralField from_spectrum(GridPtr grid, std::span<const cx> spectrum) {
    std::vector<cx> values(spectrum.size());
    thread_transform(spectrum.size()).inverse(spectrum, values);
    return SpectralField(std::move(grid), std::move(values));
}

SpectralField spectral_derivative(const SpectralField& f, int order) {
    if (order < 1) {
        throw PreconditionError("spectral_derivative: order must be positive");
    }
    const std::size_t nyquist = f.size() / 2;
    return apply_symbol(f, [order, nyquist](std::size_t j, double k) {
        if (j == nyquist && order % 2 == 1) {
            return cx{0.0, 0.0};
        }
        const double kn = std::pow(k, order);
        switch (order % 4) {
            case 0: return cx{kn, 0.0};
            case 1: return cx{0.0, kn};
            case 2: return cx{-kn, 0.0};
            default: return cx{0.0, -kn};
        }
    });
}

SpectralField helmholtz_apply(const SpectralField& f, double a) {
    if (a < 0.0) {
        throw PreconditionError("helmholtz_apply: a must be non-negative");
    }
    return apply_symbol(f, [a](std::size_t, double k) { return cx{1.0 + a * a * k * k, 0.0}; });
}

SpectralField helmholtz_invert(const SpectralField& f, double a) {
    if (a < 0.0) {
        throw PreconditionError("helmholtz_invert: a must be non-negative");
    }
    return apply_symbol(f, [a](std::size_t, double k) { return cx{1.0 / (1.0 + a * a * k * k), 0.0}; });
}

cx inner_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f, g);
    cx sum{0.0, 0.0};
    for (std::size_t j = 0; j < f.size(); ++j) {
        sum += std::conj(f[j]) * g[j];
    }
    return sum * f.grid().dx();
}

}  // namespace chnls
