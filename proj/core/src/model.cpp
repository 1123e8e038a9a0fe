#include "chnls/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chnls/error.hpp"

namespace chnls {

namespace {

// Relative tolerance for landing exactly on p = 1/2 or p = 2.
constexpr double kDegenerateTol = 1e-12;

}  // namespace

void ModelParams::validate() const {
    if (sigma != -1 && sigma != 1) {
        throw PreconditionError("sigma must be -1 or +1, got " + std::to_string(sigma));
    }
    if (!(u0 > 0.0) || !std::isfinite(u0)) {
        throw PreconditionError("u0 must be positive, got " + std::to_string(u0));
    }
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw PreconditionError("a must be non-negative, got " + std::to_string(a));
    }
}

double ModelParams::p() const noexcept {
    const double c = sound_speed();
    return a * a * c * c;
}

double ModelParams::q() const { return q_parameter(a, sound_speed()); }

std::string_view to_string(SolitonClass c) noexcept {
    switch (c) {
        case SolitonClass::Dark: return "Dark";
        case SolitonClass::Antidark: return "Antidark";
        case SolitonClass::Degenerate: return "Degenerate";
    }
    return "?";
}

double sound_speed(const ModelParams& params) noexcept { return params.sound_speed(); }

double dispersion_omega_squared(const ModelParams& params, double k) noexcept {
    const double k2 = k * k;
    const double h = 1.0 + params.a * params.a * k2;
    return k2 * (-4.0 * params.sigma * params.u0 * params.u0 + k2) / (h * h);
}

double mi_growth_rate(const ModelParams& params, double k) noexcept {
    return std::sqrt(std::max(0.0, -dispersion_omega_squared(params, k)));
}

double q_parameter(double a_eff, double c) {
    const double p = a_eff * a_eff * c * c;
    if (std::abs(p - 2.0) <= kDegenerateTol * 2.0) {
        throw SingularParameterError("q is singular at p = a^2 C^2 = 2");
    }
    return (1.0 - 2.0 * p) / (2.0 - p);
}

SolitonClass classify_soliton(const ModelParams& params) {
    params.validate();
    if (params.sigma != -1) {
        throw UnsupportedRegimeError("soliton classification requires the defocusing model (sigma = -1)");
    }
    const double p = params.p();
    if (std::abs(p - 2.0) <= kDegenerateTol * 2.0 || std::abs(p - 0.5) <= kDegenerateTol * 0.5) {
        return SolitonClass::Degenerate;
    }
    return params.q() < 0.0 ? SolitonClass::Antidark : SolitonClass::Dark;
}

cx linear_symbol(const ModelParams& params, double k) noexcept {
    const double k2 = k * k;
    return {0.0, -k2 / (1.0 + params.a * params.a * k2)};
}

std::vector<cx> linear_symbols(const ModelParams& params, const GridSpec& grid) {
    const auto k = grid.wavenumbers();
    std::vector<cx> out(k.size());
    std::transform(k.begin(), k.end(), out.begin(), [&](double kj) { return linear_symbol(params, kj); });
    return out;
}

std::vector<double> two_thirds_mask(const GridSpec& grid) {
    const auto k = grid.wavenumbers();
    const double cutoff = (2.0 / 3.0) * grid.dk() * static_cast<double>(grid.n_points() / 2);
    std::vector<double> mask(k.size());
    std::transform(k.begin(), k.end(), mask.begin(), [cutoff](double kj) { return std::abs(kj) <= cutoff ? 1.0 : 0.0; });
    return mask;
}

ChnlsNonlinearity::ChnlsNonlinearity(GridPtr grid, const ModelParams& params, bool dealias)
    : grid_(std::move(grid)), params_(params), fft_(grid_->n_points()) {
    params_.validate();
    const auto n = grid_->n_points();
    const auto k = grid_->wavenumbers();
    const auto mask = dealias ? two_thirds_mask(*grid_) : std::vector<double>(n, 1.0);
    const double a2 = params_.a * params_.a;
    const double coupling = 2.0 * params_.sigma * params_.u0 * params_.u0;
    prefactor_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        prefactor_[j] = cx{0.0, coupling} * (mask[j] / (1.0 + a2 * k[j] * k[j]));
    }
    psi_.resize(n);
    psi_x_.resize(n);
    m_.resize(n);
    work_.resize(n);
}

void ChnlsNonlinearity::operator()(std::span<const cx> psi_hat, std::span<cx> out_hat) {
    const auto n = grid_->n_points();
    if (psi_hat.size() != n || out_hat.size() != n) {
        throw GridError("ChnlsNonlinearity: field does not match the model grid");
    }
    const auto k = grid_->wavenumbers();
    const double a2 = params_.a * params_.a;
    const std::size_t nyquist = n / 2;

    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        work_[j] = psi_hat[j] * inv_n;
    }
    fft_.inverse_unscaled(work_, psi_);
    for (std::size_t j = 0; j < n; ++j) {
        work_[j] = j == nyquist ? cx{} : cx{0.0, k[j] * inv_n} * psi_hat[j];
    }
    fft_.inverse_unscaled(work_, psi_x_);
    for (std::size_t j = 0; j < n; ++j) {
        work_[j] = ((1.0 + a2 * k[j] * k[j]) * inv_n) * psi_hat[j];
    }
    fft_.inverse_unscaled(work_, m_);

    for (std::size_t j = 0; j < n; ++j) {
        const double local = std::norm(psi_[j]) - a2 * std::norm(psi_x_[j]) - 1.0;
        work_[j] = m_[j] * local;
    }
    fft_.forward(work_, out_hat);
    for (std::size_t j = 0; j < n; ++j) {
        out_hat[j] *= prefactor_[j];
    }
}

SpectralField nonlinear_term(const SpectralField& psi, const ModelParams& params, bool dealias) {
    ChnlsNonlinearity rhs(psi.grid_ptr(), params, dealias);
    const auto psi_hat = to_spectrum(psi);
    std::vector<cx> out_hat(psi_hat.size());
    rhs(psi_hat, out_hat);
    return from_spectrum(psi.grid_ptr(), out_hat);
}

double q_functional(const SpectralField& psi, const ModelParams& params) {
    const auto psi_x = spectral_derivative(psi, 1);
    const double a2 = params.a * params.a;
    double sum = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        sum += std::norm(psi[j]) + a2 * std::norm(psi_x[j]);
    }
    return sum * psi.grid().dx();
}

}  // namespace chnls
