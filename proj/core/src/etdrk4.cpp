#include "chnls/etdrk4.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace chnls {

namespace {

bool all_finite(std::span<const cx> v) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

}  // namespace

EtdCoefficients precompute_coefficients(std::span<const cx> symbol, double dt, int contour_points,
                                        double contour_radius) {
    if (!(dt > 0.0)) {
        throw PreconditionError("precompute_coefficients: dt must be positive");
    }
    if (contour_points < 16) {
        throw PreconditionError("precompute_coefficients: need at least 16 contour points");
    }
    if (!(contour_radius > 0.0)) {
        throw PreconditionError("precompute_coefficients: contour radius must be positive");
    }
    const std::size_t n = symbol.size();
    EtdCoefficients c;
    c.dt = dt;
    c.e_full.resize(n);
    c.e_half.resize(n);
    c.half_weight.resize(n);
    c.w1.resize(n);
    c.w2.resize(n);
    c.w3.resize(n);

    std::vector<cx> roots(static_cast<std::size_t>(contour_points));
    for (int m = 0; m < contour_points; ++m) {
        const double theta = std::numbers::pi * (static_cast<double>(m) + 0.5) / contour_points;
        roots[static_cast<std::size_t>(m)] = contour_radius * std::exp(cx{0.0, 2.0 * theta});
    }
    const double inv_m = 1.0 / contour_points;

    for (std::size_t j = 0; j < n; ++j) {
        const cx z = dt * symbol[j];
        c.e_full[j] = std::exp(z);
        c.e_half[j] = std::exp(z / 2.0);
        cx q{}, f1{}, f2{}, f3{};
        for (const auto& r : roots) {
            const cx lr = z + r;
            const cx e = std::exp(lr);
            const cx lr2 = lr * lr;
            const cx lr3 = lr2 * lr;
            q += (std::exp(lr / 2.0) - 1.0) / lr;
            f1 += (-4.0 - lr + e * (4.0 - 3.0 * lr + lr2)) / lr3;
            f2 += (2.0 + lr + e * (lr - 2.0)) / lr3;
            f3 += (-4.0 - 3.0 * lr - lr2 + e * (4.0 - lr)) / lr3;
        }
        c.half_weight[j] = dt * q * inv_m;
        c.w1[j] = dt * f1 * inv_m;
        c.w2[j] = 2.0 * dt * f2 * inv_m;
        c.w3[j] = dt * f3 * inv_m;
    }
    return c;
}

EtdStepper::EtdStepper(EtdCoefficients coeffs, NonlinearFn nonlinear)
    : coeffs_(std::move(coeffs)), nonlinear_(std::move(nonlinear)) {
    if (!nonlinear_) {
        throw PreconditionError("EtdStepper: nonlinear operator is empty");
    }
    const auto n = coeffs_.size();
    for (auto* v : {&nv_, &na_, &nb_, &nc_, &a_, &b_, &c_}) {
        v->resize(n);
    }
}

bool EtdStepper::advance(std::vector<cx>& v) {
    const auto n = coeffs_.size();
    if (v.size() != n) {
        throw PreconditionError("EtdStepper: state size does not match coefficient table");
    }
    const auto& E = coeffs_.e_full;
    const auto& E2 = coeffs_.e_half;
    const auto& Q = coeffs_.half_weight;

    nonlinear_(v, nv_);
    for (std::size_t j = 0; j < n; ++j) {
        a_[j] = E2[j] * v[j] + Q[j] * nv_[j];
    }
    nonlinear_(a_, na_);
    for (std::size_t j = 0; j < n; ++j) {
        b_[j] = E2[j] * v[j] + Q[j] * na_[j];
    }
    nonlinear_(b_, nb_);
    for (std::size_t j = 0; j < n; ++j) {
        c_[j] = E2[j] * a_[j] + Q[j] * (2.0 * nb_[j] - nv_[j]);
    }
    nonlinear_(c_, nc_);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = E[j] * v[j] + coeffs_.w1[j] * nv_[j] + coeffs_.w2[j] * (na_[j] + nb_[j]) + coeffs_.w3[j] * nc_[j];
    }
    return all_finite(v);
}

FieldState step(const FieldState& state, const EtdCoefficients& coeffs, const NonlinearFn& nonlinear) {
    if (coeffs.size() != state.psi.size()) {
        throw PreconditionError("step: coefficient table was built for a different grid");
    }
    EtdStepper stepper(coeffs, nonlinear);
    auto v = to_spectrum(state.psi);
    const double t_next = state.t + coeffs.dt;
    if (!stepper.advance(v)) {
        throw DivergenceError(t_next);
    }
    return FieldState{from_spectrum(state.psi.grid_ptr(), v), t_next};
}

std::size_t whole_steps(double span, double dt, const char* what) {
    if (!(dt > 0.0)) {
        throw PreconditionError(std::string(what) + ": dt must be positive");
    }
    const double ratio = span / dt;
    const double rounded = std::round(ratio);
    if (ratio < -1e-9 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
        throw PreconditionError(std::string(what) + " must be a non-negative integer multiple of dt");
    }
    return static_cast<std::size_t>(rounded);
}

Trajectory evolve(const FieldState& initial, const SpectralModel& model, double t_end, double dt, double cadence,
                  std::span<const Observer> observers, const EvolveOptions& options) {
    if (t_end < initial.t) {
        throw PreconditionError("evolve: t_end precedes the initial time");
    }
    if (model.symbol.size() != initial.psi.size()) {
        throw PreconditionError("evolve: model symbol does not match the grid");
    }
    const std::size_t total = whole_steps(t_end - initial.t, dt, "evolve: t_end - t0");
    const std::size_t per_snapshot = whole_steps(cadence, dt, "evolve: cadence");
    if (per_snapshot == 0) {
        throw PreconditionError("evolve: cadence must be positive");
    }

    Trajectory traj;
    const auto record = [&](const FieldState& s) {
        for (const auto& obs : observers) {
            obs(s);
        }
        traj.times.push_back(s.t);
        if (options.keep_snapshots) {
            traj.snapshots.push_back(s.psi);
        }
    };

    record(initial);
    if (total == 0) {
        return traj;
    }

    EtdStepper stepper(precompute_coefficients(model.symbol, dt, options.contour_points, options.contour_radius),
                       model.nonlinear);
    const auto grid = initial.psi.grid_ptr();
    auto v = to_spectrum(initial.psi);
    for (std::size_t n = 1; n <= total; ++n) {
        const double t = initial.t + static_cast<double>(n) * dt;
        if (!stepper.advance(v)) {
            throw EvolutionDiverged(t, std::move(traj));
        }
        if (n % per_snapshot == 0 || n == total) {
            record(FieldState{from_spectrum(grid, v), t});
        }
    }
    return traj;
}

}  // namespace chnls
