#include <benchmark/benchmark.h>

#include "chnls/etdrk4.hpp"
#include "chnls/harness.hpp"
#include "chnls/model.hpp"
#include "chnls/soliton.hpp"

using namespace chnls;

namespace {

const ModelParams kParams{.a = 0.5, .sigma = -1, .u0 = 1.0};

FieldState fig1b_state(std::size_t n) {
    const auto grid = make_grid(2500.0, n);
    const SolitonSpec spec{.epsilon = 0.04, .beta = 0.1, .x0 = 100.0, .direction = 1, .a_eff = std::nullopt};
    return single_soliton_ic(spec, kParams, grid, BackgroundEnvelope{});
}

void BM_SpectralDerivative(benchmark::State& state) {
    const auto s = fig1b_state(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_derivative(s.psi, 1));
    }
}
BENCHMARK(BM_SpectralDerivative)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_NonlinearTerm(benchmark::State& state) {
    const auto s = fig1b_state(static_cast<std::size_t>(state.range(0)));
    ChnlsNonlinearity nonlinear(s.psi.grid_ptr(), kParams);
    const auto spectrum = to_spectrum(s.psi);
    std::vector<cx> out(spectrum.size());
    for (auto _ : state) {
        nonlinear(spectrum, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_NonlinearTerm)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_EtdStep(benchmark::State& state) {
    const auto s = fig1b_state(static_cast<std::size_t>(state.range(0)));
    const auto model = chnls_model(s.psi.grid_ptr(), kParams);
    EtdStepper stepper(precompute_coefficients(model.symbol, 0.01), model.nonlinear);
    auto v = to_spectrum(s.psi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stepper.advance(v));
    }
}
BENCHMARK(BM_EtdStep)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_Coefficients(benchmark::State& state) {
    const auto grid = make_grid(2500.0, static_cast<std::size_t>(state.range(0)));
    const auto symbol = linear_symbols(kParams, *grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(precompute_coefficients(symbol, 0.01));
    }
}
BENCHMARK(BM_Coefficients)->Arg(1 << 14);

}  // namespace

BENCHMARK_MAIN();
