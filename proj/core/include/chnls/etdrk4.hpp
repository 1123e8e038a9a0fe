#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chnls/error.hpp"
#include "chnls/grid.hpp"

namespace chnls {

/// Precomputed per-mode ETDRK4 tables for v_t = lambda v + N(v).
///
/// With z = h*lambda:
///   e_full = exp(z), e_half = exp(z/2),
///   half_weight = h (exp(z/2) - 1)/z          (stage weight),
///   w1 = h (-4 - z + e^z (4 - 3z + z^2))/z^3, (weight on N(v))
///   w2 = 2h (2 + z + e^z (z - 2))/z^3,        (weight on N(a) + N(b))
///   w3 = h (-4 - 3z - z^2 + e^z (4 - z))/z^3. (weight on N(c))
/// At lambda = 0 the weights reduce to the classical RK4 values h/6, h/3, h/6.
struct EtdCoefficients {
    double dt = 0.0;
    std::vector<cx> e_full;
    std::vector<cx> e_half;
    std::vector<cx> half_weight;
    std::vector<cx> w1;
    std::vector<cx> w2;
    std::vector<cx> w3;

    std::size_t size() const noexcept { return e_full.size(); }
};

inline constexpr int kDefaultContourPoints = 32;
inline constexpr double kDefaultContourRadius = 1.0;

/// Evaluates the phi-function weights by averaging over a circle of the given
/// radius centred on each h*lambda, which removes the cancellation near zero.
EtdCoefficients precompute_coefficients(std::span<const cx> symbol, double dt,
                                        int contour_points = kDefaultContourPoints,
                                        double contour_radius = kDefaultContourRadius);

/// Spectral-space nonlinear operator: writes N_hat(v_hat) into the second argument.
using NonlinearFn = std::function<void(std::span<const cx>, std::span<cx>)>;

/// One ETDRK4 stepper over a fixed coefficient table. Holds stage workspaces,
/// so a stepper belongs to a single evolution.
class EtdStepper {
public:
    EtdStepper(EtdCoefficients coeffs, NonlinearFn nonlinear);

    /// Advances v_hat in place by coeffs().dt. Returns false when the result
    /// contains non-finite values.
    bool advance(std::vector<cx>& v_hat);

    const EtdCoefficients& coeffs() const noexcept { return coeffs_; }

private:
    EtdCoefficients coeffs_;
    NonlinearFn nonlinear_;
    std::vector<cx> nv_, na_, nb_, nc_, a_, b_, c_;
};

/// One ETDRK4 step of a physical-space state. Throws DivergenceError if the
/// result is not finite.
FieldState step(const FieldState& state, const EtdCoefficients& coeffs, const NonlinearFn& nonlinear);

/// Diagonal linear symbol plus nonlinear operator, both in Fourier space.
struct SpectralModel {
    std::vector<cx> symbol;
    NonlinearFn nonlinear;
};

/// Snapshots of an evolution at a fixed cadence.
struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> snapshots;
    std::string manifest_ref;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
};

using Observer = std::function<void(const FieldState&)>;

struct EvolveOptions {
    int contour_points = kDefaultContourPoints;
    double contour_radius = kDefaultContourRadius;
    /// Keep snapshot fields in the returned trajectory (times are always kept).
    bool keep_snapshots = true;
};

/// Thrown by `evolve` on divergence; carries everything recorded before the failure.
class EvolutionDiverged : public DivergenceError {
public:
    EvolutionDiverged(double time, Trajectory partial)
        : DivergenceError(time), partial_(std::move(partial)) {}
    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// Number of dt steps in `span`; throws PreconditionError unless span/dt is
/// an integer within 1e-9.
std::size_t whole_steps(double span, double dt, const char* what);

/// Steps `initial` to t_end with step dt, recording a snapshot (and calling
/// every observer) at the initial time and then every `cadence`.
/// The final state is recorded even when t_end is not on the cadence.
Trajectory evolve(const FieldState& initial, const SpectralModel& model, double t_end, double dt, double cadence,
                  std::span<const Observer> observers = {}, const EvolveOptions& options = {});

}  // namespace chnls
