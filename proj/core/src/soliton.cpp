#include "chnls/soliton.hpp"

#include <cmath>
#include <string>

#include "chnls/error.hpp"

namespace chnls {

namespace {

void require_defocusing(const ModelParams& params) {
    params.validate();
    if (params.sigma != -1) {
        throw UnsupportedRegimeError("asymptotic solitons exist only for the defocusing model (sigma = -1)");
    }
}

}  // namespace

void SolitonSpec::validate(const ModelParams& params) const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw PreconditionError("soliton epsilon must be positive");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw PreconditionError("soliton beta must be positive");
    }
    if (direction != 1 && direction != -1) {
        throw PreconditionError("soliton direction must be +1 or -1");
    }
    if (a_eff && !(*a_eff >= 0.0)) {
        throw PreconditionError("soliton a_eff must be non-negative");
    }
    if (!std::isfinite(x0)) {
        throw PreconditionError("soliton x0 must be finite");
    }
    require_defocusing(params);
    (void)soliton_q(*this, params);
}

void BackgroundEnvelope::validate() const {
    if (!(l_star > 0.0)) {
        throw PreconditionError("envelope l_star must be positive");
    }
    if (gamma <= 0 || gamma % 2 != 0) {
        throw PreconditionError("envelope gamma must be an even positive integer, got " + std::to_string(gamma));
    }
}

void BackgroundEnvelope::validate(const GridSpec& grid) const {
    validate();
    if (!(l_star < grid.half_length())) {
        throw PreconditionError("envelope l_star must be smaller than the grid half length");
    }
}

double effective_a(const SolitonSpec& spec, const ModelParams& params) noexcept {
    return spec.a_eff.value_or(params.a);
}

double signed_sound_speed(const SolitonSpec& spec, const ModelParams& params) noexcept {
    return spec.direction * params.sound_speed();
}

double soliton_q(const SolitonSpec& spec, const ModelParams& params) {
    return q_parameter(effective_a(spec, params), signed_sound_speed(spec, params));
}

double amplitude_parameter(const SolitonSpec& spec, const ModelParams& params) {
    const double c = signed_sound_speed(spec, params);
    return spec.epsilon * spec.beta * soliton_q(spec, params) / (c * c);
}

double core_width(const SolitonSpec& spec) noexcept { return 2.0 / std::sqrt(spec.epsilon * spec.beta); }

double predicted_velocity(const SolitonSpec& spec, const ModelParams& params) {
    const double c = signed_sound_speed(spec, params);
    const double a = effective_a(spec, params);
    return c + spec.epsilon * spec.beta * (1.0 - 2.0 * a * a * c * c) / (2.0 * c);
}

cx asymptotic_psi_at(const SolitonSpec& spec, const ModelParams& params, double x, double t) {
    const double c = signed_sound_speed(spec, params);
    const double q = soliton_q(spec, params);
    const double root = std::sqrt(spec.epsilon * spec.beta);
    const double xi = 0.5 * root * (x - predicted_velocity(spec, params) * t + spec.x0);
    const double sech = 1.0 / std::cosh(xi);
    const double modulus = 1.0 - spec.epsilon * spec.beta / (c * c) * q * sech * sech;
    // Phase from integrating phi_x = eps C rho_1: twice the sqrt(eps beta)/C
    // prefactor, which is what makes the profile a purely one-way wave.
    const double phase = -2.0 * (root / c) * q * std::tanh(xi);
    return std::polar(modulus, phase);
}

std::vector<cx> asymptotic_psi(const SolitonSpec& spec, const ModelParams& params, std::span<const double> x,
                               double t) {
    spec.validate(params);
    std::vector<cx> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = asymptotic_psi_at(spec, params, x[j], t);
    }
    return out;
}

double envelope_at(const BackgroundEnvelope& env, double x) noexcept {
    return std::exp(-std::pow(x / env.l_star, env.gamma));
}

std::vector<double> envelope(const BackgroundEnvelope& env, std::span<const double> x) {
    env.validate();
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = envelope_at(env, x[j]);
    }
    return out;
}

FieldState single_soliton_ic(const SolitonSpec& spec, const ModelParams& params, GridPtr grid,
                             const BackgroundEnvelope& env) {
    env.validate(*grid);
    auto psi = asymptotic_psi(spec, params, grid->nodes(), 0.0);
    const auto w = envelope(env, grid->nodes());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        psi[j] *= w[j];
    }
    return FieldState{SpectralField(std::move(grid), std::move(psi)), 0.0};
}

FieldState two_soliton_ic(const SolitonSpec& right, const SolitonSpec& left, const ModelParams& params, GridPtr grid,
                          const BackgroundEnvelope& env) {
    if (right.direction != 1 || left.direction != -1) {
        throw PreconditionError("two_soliton_ic expects a right-going and a left-going soliton");
    }
    env.validate(*grid);
    auto psi = asymptotic_psi(right, params, grid->nodes(), 0.0);
    const auto second = asymptotic_psi(left, params, grid->nodes(), 0.0);
    const auto w = envelope(env, grid->nodes());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        psi[j] *= second[j] * w[j];
    }
    return FieldState{SpectralField(std::move(grid), std::move(psi)), 0.0};
}

double quantize_wavenumber(double nu, const GridSpec& grid) noexcept {
    return std::round(nu / grid.dk()) * grid.dk();
}

BoostResult galilean_boost(const FieldState& state, double nu) {
    const auto& grid = state.psi.grid();
    const double applied = quantize_wavenumber(nu, grid);
    BoostResult result{state, nu, applied};
    if (applied == 0.0) {
        return result;
    }
    auto values = result.state.psi.values();
    for (std::size_t j = 0; j < values.size(); ++j) {
        values[j] *= std::polar(1.0, applied * grid.node(j));
    }
    return result;
}

}  // namespace chnls
