#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chnls/etdrk4.hpp"
#include "chnls/grid.hpp"
#include "chnls/model.hpp"
#include "chnls/soliton.hpp"

namespace chnls {

/// Real KdV field U(chi) at reduced time t_hat on a periodic chi grid.
struct KdvState {
    GridPtr grid;
    std::vector<double> u_values;
    double t_hat = 0.0;
};

/// U = -(beta/2) sech^2[(sqrt(beta)/2)(chi - beta t_hat + chi0)], the soliton of
/// U_t - 6 U U_chi + U_chichichi = 0.
std::vector<double> kdv_soliton(double beta, double chi0, std::span<const double> chi, double t_hat);

/// Linear symbol +i k^3 and dealiased nonlinear term 3 i k F[U^2].
SpectralModel kdv_model(GridPtr grid, bool dealias = true);

/// Integral of U over the periodic domain.
double kdv_mass(const KdvState& state);

/// Evolves the standard-form KdV equation with the shared ETDRK4 stepper.
/// `t_end` may precede `initial.t_hat`: the equation is invariant under
/// (chi, t_hat) -> (-chi, -t_hat), so backward runs are computed as forward
/// runs of the mirrored field. Returned states are ordered by step.
std::vector<KdvState> kdv_evolve(const KdvState& initial, double t_end, double dt, double cadence,
                                 const EvolveOptions& options = {});

/// Scale factors tying one CH-NLS direction to its KdV equation.
/// `c` is the signed speed of sound, `p` = a^2 c^2 and q = (1 - 2p)/(2 - p).
struct ReductionScales {
    double epsilon = 0.0;
    double c = 0.0;
    double p = 0.0;
    double q = 0.0;
};

ReductionScales make_reduction_scales(const ModelParams& params, double epsilon, int direction = +1,
                                      std::optional<double> a_eff = std::nullopt);
ReductionScales make_reduction_scales(const SolitonSpec& spec, const ModelParams& params);

struct ReducedCoordinates {
    double chi = 0.0;
    double t_hat = 0.0;
};

/// chi = sqrt(eps) (x - c t), t_hat = ((1 - 2p)/(2c)) eps^{3/2} t.
ReducedCoordinates to_reduced(double x, double t, const ReductionScales& scales) noexcept;
double time_rescale(double t_physical, const ReductionScales& scales) noexcept;

/// rho_1 = (2 q / c^2) U; the modulus of psi is 1 + eps rho_1 to first order.
std::vector<double> kdv_to_density(std::span<const double> u, const ReductionScales& scales);

/// Space-time samples Phi(X_i, T_n), row-major in time: values[n * nx + i].
struct SpaceTimeSamples {
    std::size_t nx = 0;
    std::size_t nt = 0;
    double x_start = 0.0;
    double t_start = 0.0;
    double dX = 0.0;
    double dT = 0.0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t n) const noexcept { return values[n * nx + i]; }
};

/// Phase potential of the KdV soliton lifted to slow variables, obtained by
/// integrating Phi_chi = c rho_1:  Phi = -(2 q sqrt(beta)/c) tanh(s),
/// s = (sqrt(beta)/2)(chi - beta t_hat + chi0), chi = X - cT, t_hat = ((1-2p)/(2c)) eps T.
SpaceTimeSamples soliton_potential_samples(double beta, double chi0, const ReductionScales& scales, double x_start,
                                           std::size_t nx, double dX, double t_start, std::size_t nt, double dT);

/// Discrete L2 norm over the interior of
///   Phi_TT - c^2 Phi_XX + eps{2a^2 Phi_XXTT - 4 Phi_X Phi_XT (1 - 3a^2 u0^2) - 2 Phi_T Phi_XX - Phi_XXXX}
/// using second-order centred differences. Throws PreconditionError when the
/// sampled feature spans fewer than 9 points.
double boussinesq_residual(const SpaceTimeSamples& phi, const ReductionScales& scales, const ModelParams& params);

/// Modulus predicted by transporting the KdV soliton of `spec` numerically
/// and mapping it back through the reduction scales: one vector per entry of
/// `times`, sampled at `x`.
struct KdvTransportOptions {
    double half_length = 100.0;
    std::size_t n_points = 512;
    double dt = 1e-3;
};
std::vector<std::vector<double>> kdv_transported_modulus(const SolitonSpec& spec, const ModelParams& params,
                                                         std::span<const double> x, std::span<const double> times,
                                                         const KdvTransportOptions& options = {});

}  // namespace chnls
