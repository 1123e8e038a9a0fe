#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "chnls/grid.hpp"

namespace chnls {

/// Physical parameters of one CH-NLS run.
///
/// `a` is the Helmholtz length, `sigma` the nonlinearity sign (-1 defocusing,
/// +1 focusing) and `u0` the real, positive background amplitude. The phase
/// of a complex background is absorbed into psi.
struct ModelParams {
    double a = 0.0;
    int sigma = -1;
    double u0 = 1.0;

    /// Throws PreconditionError when an invariant is violated.
    void validate() const;
    /// Right-going speed of sound C = 2 u0.
    double sound_speed() const noexcept { return 2.0 * u0; }
    /// p = a^2 C^2.
    double p() const noexcept;
    /// q = (1 - 2p)/(2 - p); throws SingularParameterError at p = 2.
    double q() const;
};

enum class SolitonClass { Dark, Antidark, Degenerate };

std::string_view to_string(SolitonClass c) noexcept;

double sound_speed(const ModelParams& params) noexcept;

/// omega^2(k) of small perturbations on the cw background; negative values
/// signal modulational instability.
double dispersion_omega_squared(const ModelParams& params, double k) noexcept;

/// Exponential growth rate sqrt(max(0, -omega^2)).
double mi_growth_rate(const ModelParams& params, double k) noexcept;

/// Soliton amplitude parameter q for an effective Helmholtz length a_eff and
/// signed speed of sound c. Throws SingularParameterError when a_eff^2 c^2 = 2.
double q_parameter(double a_eff, double c);

/// Dark for q > 0, Antidark for q < 0, Degenerate at p = 1/2 or p = 2.
/// Only defined for the defocusing model; sigma = +1 throws UnsupportedRegimeError.
SolitonClass classify_soliton(const ModelParams& params);

/// Diagonal generator -i k^2/(1 + a^2 k^2) of the linear part.
cx linear_symbol(const ModelParams& params, double k) noexcept;
std::vector<cx> linear_symbols(const ModelParams& params, const GridSpec& grid);

/// 2/3-rule mask: 1 for |k| <= (2/3) k_max, 0 otherwise.
std::vector<double> two_thirds_mask(const GridSpec& grid);

/// Fourier-space evaluator of the nonlinear part of the rotated-frame
/// equation,
///
///   N_hat = 2 i sigma u0^2 / (1 + a^2 k^2) * F[(psi - a^2 psi_xx)(|psi|^2 - a^2 |psi_x|^2 - 1)].
///
/// Together with `linear_symbol` this closes psi_hat_t = L psi_hat + N_hat.
/// Owns its FFT workspace; one instance per evolving thread.
class ChnlsNonlinearity {
public:
    ChnlsNonlinearity(GridPtr grid, const ModelParams& params, bool dealias = true);

    void operator()(std::span<const cx> psi_hat, std::span<cx> out_hat);

    const GridSpec& grid() const noexcept { return *grid_; }

private:
    GridPtr grid_;
    ModelParams params_;
    FourierTransform fft_;
    std::vector<cx> prefactor_;
    std::vector<cx> psi_, psi_x_, m_, work_;
};

/// Physical-space nonlinear term (inverse transform of N_hat above).
SpectralField nonlinear_term(const SpectralField& psi, const ModelParams& params, bool dealias = true);

/// Integral of |psi|^2 + a^2 |psi_x|^2 over the periodic domain.
double q_functional(const SpectralField& psi, const ModelParams& params);

}  // namespace chnls
