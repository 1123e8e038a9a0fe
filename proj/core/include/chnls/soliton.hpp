#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "chnls/grid.hpp"
#include "chnls/model.hpp"

namespace chnls {

/// One small-amplitude soliton of the defocusing model.
///
/// The travelling coordinate is xi = (1/2) sqrt(eps beta) [x - v t + x0], so a
/// soliton with offset x0 is centred at x = -x0 at t = 0. `direction` selects
/// the signed speed of sound C = direction * 2 u0. `a_eff` overrides the
/// model's Helmholtz length inside q (mixed-collision initial data).
struct SolitonSpec {
    double epsilon = 0.04;
    double beta = 0.1;
    double x0 = 100.0;
    int direction = +1;
    std::optional<double> a_eff;

    void validate(const ModelParams& params) const;
};

/// Super-Gaussian background window exp(-(x/l_star)^gamma).
struct BackgroundEnvelope {
    double l_star = 1500.0;
    int gamma = 34;

    void validate() const;
    void validate(const GridSpec& grid) const;
};

double effective_a(const SolitonSpec& spec, const ModelParams& params) noexcept;
/// Signed speed of sound direction * 2 u0.
double signed_sound_speed(const SolitonSpec& spec, const ModelParams& params) noexcept;
/// q evaluated with the spec's effective a and signed C.
double soliton_q(const SolitonSpec& spec, const ModelParams& params);
/// Amplitude parameter eps beta q / C^2; the modulus deviation at the core is its negative.
double amplitude_parameter(const SolitonSpec& spec, const ModelParams& params);
/// Nominal core width 2/sqrt(eps beta) (inverse of the sech^2 argument scale).
double core_width(const SolitonSpec& spec) noexcept;

/// v = C + eps beta (1 - 2 a^2 C^2)/(2C) with signed C.
double predicted_velocity(const SolitonSpec& spec, const ModelParams& params);

/// Rotated-frame asymptotic soliton
///   psi = [1 - (eps beta/C^2) q sech^2 xi] exp[-2i (sqrt(eps beta)/C) q tanh xi].
/// The phase is the integral of the one-way relation phi_x = eps C rho_1, so
/// the jump across the core is -4 (sqrt(eps beta)/C) q.
cx asymptotic_psi_at(const SolitonSpec& spec, const ModelParams& params, double x, double t);
std::vector<cx> asymptotic_psi(const SolitonSpec& spec, const ModelParams& params, std::span<const double> x,
                               double t);

double envelope_at(const BackgroundEnvelope& env, double x) noexcept;
std::vector<double> envelope(const BackgroundEnvelope& env, std::span<const double> x);

/// asymptotic_psi at t = 0 times the envelope.
FieldState single_soliton_ic(const SolitonSpec& spec, const ModelParams& params, GridPtr grid,
                             const BackgroundEnvelope& env);

/// Product of a right-going and a left-going soliton factor, times the envelope.
FieldState two_soliton_ic(const SolitonSpec& right, const SolitonSpec& left, const ModelParams& params, GridPtr grid,
                          const BackgroundEnvelope& env);

struct BoostResult {
    FieldState state;
    double requested_nu = 0.0;
    double applied_nu = 0.0;
};

/// Nearest integer multiple of pi/L.
double quantize_wavenumber(double nu, const GridSpec& grid) noexcept;

/// Multiplies by exp(i nu x) after snapping nu to the periodic lattice.
BoostResult galilean_boost(const FieldState& state, double nu);

}  // namespace chnls
