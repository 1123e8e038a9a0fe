#include "chnls/kdv.hpp"

#include <algorithm>
#include <cmath>

#include "chnls/error.hpp"

namespace chnls {

namespace {

std::vector<cx> to_complex(std::span<const double> v) { return {v.begin(), v.end()}; }

std::vector<double> real_part(std::span<const cx> v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cx z) { return z.real(); });
    return out;
}

// Periodic node mirror chi_j -> -chi_j, i.e. j -> (N - j) mod N.
std::vector<double> mirrored(std::span<const double> v) {
    const auto n = v.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = v[(n - j) % n];
    }
    return out;
}

// Band-limited evaluation of a periodic sampled function at arbitrary points.
class TrigInterpolant {
public:
    TrigInterpolant(const GridSpec& grid, std::span<const double> values)
        : start_(-grid.half_length()), k_(grid.wavenumbers().begin(), grid.wavenumbers().end()) {
        std::vector<cx> spectrum(values.size());
        thread_transform(values.size()).forward(to_complex(values), spectrum);
        const double n = static_cast<double>(values.size());
        double peak = 0.0;
        for (const auto& z : spectrum) {
            peak = std::max(peak, std::abs(z));
        }
        const std::size_t nyquist = values.size() / 2;
        for (std::size_t j = 0; j < spectrum.size(); ++j) {
            if (j != nyquist && std::abs(spectrum[j]) > 1e-17 * peak) {
                modes_.push_back(j);
                coeff_.push_back(spectrum[j] / n);
            }
        }
    }

    double operator()(double x) const {
        double sum = 0.0;
        const double s = x - start_;
        for (std::size_t m = 0; m < modes_.size(); ++m) {
            sum += (coeff_[m] * std::polar(1.0, k_[modes_[m]] * s)).real();
        }
        return sum;
    }

private:
    double start_;
    std::vector<double> k_;
    std::vector<std::size_t> modes_;
    std::vector<cx> coeff_;
};

}  // namespace

std::vector<double> kdv_soliton(double beta, double chi0, std::span<const double> chi, double t_hat) {
    if (!(beta > 0.0)) {
        throw PreconditionError("kdv_soliton: beta must be positive");
    }
    const double half_root = 0.5 * std::sqrt(beta);
    std::vector<double> out(chi.size());
    for (std::size_t j = 0; j < chi.size(); ++j) {
        const double sech = 1.0 / std::cosh(half_root * (chi[j] - beta * t_hat + chi0));
        out[j] = -0.5 * beta * sech * sech;
    }
    return out;
}

SpectralModel kdv_model(GridPtr grid, bool dealias) {
    const auto n = grid->n_points();
    const auto k = grid->wavenumbers();
    SpectralModel model;
    model.symbol.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        model.symbol[j] = cx{0.0, k[j] * k[j] * k[j]};
    }
    const auto mask = dealias ? two_thirds_mask(*grid) : std::vector<double>(n, 1.0);
    std::vector<cx> factor(n);
    for (std::size_t j = 0; j < n; ++j) {
        factor[j] = j == n / 2 ? cx{} : cx{0.0, 3.0 * k[j] * mask[j]};
    }
    auto fft = std::make_shared<FourierTransform>(n);
    auto u = std::make_shared<std::vector<cx>>(n);
    model.nonlinear = [fft, u, factor = std::move(factor)](std::span<const cx> u_hat, std::span<cx> out) {
        fft->inverse(u_hat, *u);
        for (auto& z : *u) {
            const double r = z.real();
            z = cx{r * r, 0.0};
        }
        fft->forward(*u, out);
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] *= factor[j];
        }
    };
    return model;
}

double kdv_mass(const KdvState& state) {
    double sum = 0.0;
    for (double v : state.u_values) {
        sum += v;
    }
    return sum * state.grid->dx();
}

std::vector<KdvState> kdv_evolve(const KdvState& initial, double t_end, double dt, double cadence,
                                 const EvolveOptions& options) {
    if (!initial.grid || initial.u_values.size() != initial.grid->n_points()) {
        throw PreconditionError("kdv_evolve: state does not match its grid");
    }
    if (!std::all_of(initial.u_values.begin(), initial.u_values.end(), [](double v) { return std::isfinite(v); })) {
        throw PreconditionError("kdv_evolve: initial data must be finite");
    }
    const bool backward = t_end < initial.t_hat;
    const double span = std::abs(t_end - initial.t_hat);
    const auto start = backward ? mirrored(initial.u_values) : initial.u_values;

    FieldState field{SpectralField(initial.grid, to_complex(start)), 0.0};
    Trajectory traj;
    try {
        traj = evolve(field, kdv_model(initial.grid), span, dt, cadence, {}, options);
    } catch (const EvolutionDiverged& e) {
        const double sign = backward ? -1.0 : 1.0;
        throw DivergenceError(initial.t_hat + sign * e.time());
    }

    std::vector<KdvState> out;
    out.reserve(traj.size());
    for (std::size_t s = 0; s < traj.size(); ++s) {
        auto values = real_part(traj.snapshots[s].values());
        if (backward) {
            values = mirrored(values);
        }
        const double t_hat = backward ? initial.t_hat - traj.times[s] : initial.t_hat + traj.times[s];
        out.push_back(KdvState{initial.grid, std::move(values), t_hat});
    }
    return out;
}

ReductionScales make_reduction_scales(const ModelParams& params, double epsilon, int direction,
                                      std::optional<double> a_eff) {
    if (direction != 1 && direction != -1) {
        throw PreconditionError("direction must be +1 or -1");
    }
    const double c = direction * params.sound_speed();
    const double a = a_eff.value_or(params.a);
    return ReductionScales{epsilon, c, a * a * c * c, q_parameter(a, c)};
}

ReductionScales make_reduction_scales(const SolitonSpec& spec, const ModelParams& params) {
    return make_reduction_scales(params, spec.epsilon, spec.direction, spec.a_eff);
}

double time_rescale(double t_physical, const ReductionScales& s) noexcept {
    return (1.0 - 2.0 * s.p) / (2.0 * s.c) * std::pow(s.epsilon, 1.5) * t_physical;
}

ReducedCoordinates to_reduced(double x, double t, const ReductionScales& s) noexcept {
    return {std::sqrt(s.epsilon) * (x - s.c * t), time_rescale(t, s)};
}

std::vector<double> kdv_to_density(std::span<const double> u, const ReductionScales& s) {
    const double factor = 2.0 * s.q / (s.c * s.c);
    std::vector<double> out(u.size());
    std::transform(u.begin(), u.end(), out.begin(), [factor](double v) { return factor * v; });
    return out;
}

SpaceTimeSamples soliton_potential_samples(double beta, double chi0, const ReductionScales& s, double x_start,
                                           std::size_t nx, double dX, double t_start, std::size_t nt, double dT) {
    if (!(beta > 0.0)) {
        throw PreconditionError("soliton_potential_samples: beta must be positive");
    }
    SpaceTimeSamples out{nx, nt, x_start, t_start, dX, dT, std::vector<double>(nx * nt)};
    const double amplitude = -2.0 * s.q * std::sqrt(beta) / s.c;
    const double half_root = 0.5 * std::sqrt(beta);
    const double rate = (1.0 - 2.0 * s.p) / (2.0 * s.c) * s.epsilon;
    for (std::size_t n = 0; n < nt; ++n) {
        const double T = t_start + static_cast<double>(n) * dT;
        const double t_hat = rate * T;
        for (std::size_t i = 0; i < nx; ++i) {
            const double X = x_start + static_cast<double>(i) * dX;
            const double chi = X - s.c * T;
            out.values[n * nx + i] = amplitude * std::tanh(half_root * (chi - beta * t_hat + chi0));
        }
    }
    return out;
}

double boussinesq_residual(const SpaceTimeSamples& phi, const ReductionScales& s, const ModelParams& params) {
    const std::size_t nx = phi.nx;
    const std::size_t nt = phi.nt;
    if (nx < 5 || nt < 3 || phi.values.size() != nx * nt) {
        throw PreconditionError("boussinesq_residual: need at least 5 x 3 samples");
    }
    if (!(phi.dX > 0.0) || !(phi.dT > 0.0)) {
        throw PreconditionError("boussinesq_residual: spacings must be positive");
    }

    // Resolution check on the first time slice: the half-maximum width of |Phi_X|.
    double peak = 0.0;
    std::vector<double> slope(nx, 0.0);
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        slope[i] = std::abs(phi.at(i + 1, 0) - phi.at(i - 1, 0));
        peak = std::max(peak, slope[i]);
    }
    if (peak > 0.0) {
        const auto resolved = std::count_if(slope.begin(), slope.end(), [peak](double v) { return v >= 0.5 * peak; });
        if (resolved < 9) {
            throw PreconditionError("boussinesq_residual: grid too coarse (" + std::to_string(resolved) +
                                    " points across the feature, need 9)");
        }
    }

    const double hx = phi.dX;
    const double ht = phi.dT;
    const double c2 = s.c * s.c;
    const double a2 = params.a * params.a;
    const double coupling = 1.0 - 3.0 * a2 * params.u0 * params.u0;
    const auto f = [&phi](std::size_t i, std::size_t n) { return phi.at(i, n); };
    const auto dxx = [&](std::size_t i, std::size_t n) {
        return (f(i + 1, n) - 2.0 * f(i, n) + f(i - 1, n)) / (hx * hx);
    };

    double sum = 0.0;
    for (std::size_t n = 1; n + 1 < nt; ++n) {
        for (std::size_t i = 2; i + 2 < nx; ++i) {
            const double p_x = (f(i + 1, n) - f(i - 1, n)) / (2.0 * hx);
            const double p_t = (f(i, n + 1) - f(i, n - 1)) / (2.0 * ht);
            const double p_xx = dxx(i, n);
            const double p_tt = (f(i, n + 1) - 2.0 * f(i, n) + f(i, n - 1)) / (ht * ht);
            const double p_xt =
                (f(i + 1, n + 1) - f(i + 1, n - 1) - f(i - 1, n + 1) + f(i - 1, n - 1)) / (4.0 * hx * ht);
            const double p_xxtt = (dxx(i, n + 1) - 2.0 * p_xx + dxx(i, n - 1)) / (ht * ht);
            const double p_xxxx =
                (f(i + 2, n) - 4.0 * f(i + 1, n) + 6.0 * f(i, n) - 4.0 * f(i - 1, n) + f(i - 2, n)) /
                (hx * hx * hx * hx);
            const double r = p_tt - c2 * p_xx +
                             s.epsilon * (2.0 * a2 * p_xxtt - 4.0 * p_x * p_xt * coupling - 2.0 * p_t * p_xx - p_xxxx);
            sum += r * r;
        }
    }
    return std::sqrt(sum * hx * ht);
}

std::vector<std::vector<double>> kdv_transported_modulus(const SolitonSpec& spec, const ModelParams& params,
                                                         std::span<const double> x, std::span<const double> times,
                                                         const KdvTransportOptions& options) {
    spec.validate(params);
    const auto scales = make_reduction_scales(spec, params);
    const double root_eps = std::sqrt(spec.epsilon);
    const auto grid = make_grid(options.half_length, options.n_points);
    const double chi0 = root_eps * spec.x0;

    KdvState state{grid, kdv_soliton(spec.beta, chi0, grid->nodes(), 0.0), 0.0};
    std::vector<std::vector<double>> out;
    out.reserve(times.size());
    double t_prev = 0.0;
    for (double t : times) {
        if (t < t_prev) {
            throw PreconditionError("kdv_transported_modulus: times must be non-decreasing and start at >= 0");
        }
        const double target = time_rescale(t, scales);
        const double span = std::abs(target - state.t_hat);
        if (span > 0.0) {
            // Largest step <= options.dt that divides the interval exactly.
            const double steps = std::ceil(span / options.dt);
            const double dt = span / steps;
            state = kdv_evolve(state, target, dt, span).back();
        }
        const auto rho = kdv_to_density(state.u_values, scales);
        const TrigInterpolant interp(*grid, rho);
        std::vector<double> modulus(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            double chi = root_eps * (x[j] - scales.c * t);
            chi -= 2.0 * options.half_length * std::floor((chi + options.half_length) / (2.0 * options.half_length));
            modulus[j] = 1.0 + spec.epsilon * interp(chi);
        }
        out.push_back(std::move(modulus));
        t_prev = t;
    }
    return out;
}

}  // namespace chnls
