#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chnls/error.hpp"
#include "chnls/etdrk4.hpp"
#include "chnls/harness.hpp"
#include "chnls/model.hpp"
#include "chnls/soliton.hpp"
#include "support.hpp"

using namespace chnls;

namespace {

ModelParams defocusing(double a, double u0 = 1.0) { return ModelParams{.a = a, .sigma = -1, .u0 = u0}; }

SolitonSpec spec(double eps, double x0 = 100.0, int direction = +1) {
    return SolitonSpec{.epsilon = eps, .beta = 0.1, .x0 = x0, .direction = direction, .a_eff = std::nullopt};
}

// Independent evaluation of the travelling profile, written out term by term.
cx oracle_psi(double a, double u0, double eps, double beta, double x0, int dir, double x, double t) {
    const double c = dir * 2.0 * u0;
    const double p = a * a * c * c;
    const double q = (1.0 - 2.0 * p) / (2.0 - p);
    const double v = c + eps * beta * (1.0 - 2.0 * p) / (2.0 * c);
    const double xi = 0.5 * std::sqrt(eps * beta) * (x - v * t + x0);
    const double sech2 = 1.0 / (std::cosh(xi) * std::cosh(xi));
    const double mod = 1.0 - eps * beta * q * sech2 / (c * c);
    const double ph = -2.0 * std::sqrt(eps * beta) / c * q * std::tanh(xi);
    return {mod * std::cos(ph), mod * std::sin(ph)};
}

}  // namespace

TEST_SUITE("soliton") {
    TEST_CASE("core modulus deviation for the antidark example") {
        const auto params = defocusing(0.5);
        const auto s = SolitonSpec{.epsilon = 1.0, .beta = 0.1, .x0 = 0.0, .direction = +1, .a_eff = std::nullopt};
        const auto psi = asymptotic_psi_at(s, params, 0.0, 0.0);
        CHECK(std::abs(psi) - 1.0 == doctest::Approx(0.025).epsilon(1e-12));
        CHECK(amplitude_parameter(s, params) == doctest::Approx(-0.025).epsilon(1e-12));
        CHECK(std::arg(psi) == doctest::Approx(0.0));
    }

    TEST_CASE("matches an independent evaluation") {
        std::mt19937 gen(11);
        std::uniform_real_distribution<double> ua(0.0, 1.0), ux(-400.0, 400.0), ut(0.0, 100.0), ue(0.001, 1.0);
        for (int n = 0; n < 200; ++n) {
            const double a = ua(gen);
            if (std::abs(4.0 * a * a - 2.0) < 1e-3) {
                continue;
            }
            const int dir = n % 2 == 0 ? 1 : -1;
            const auto params = defocusing(a);
            auto s = spec(ue(gen), ux(gen) / 4.0, dir);
            const double x = ux(gen), t = ut(gen);
            const auto got = asymptotic_psi_at(s, params, x, t);
            const auto want = oracle_psi(a, 1.0, s.epsilon, s.beta, s.x0, dir, x, t);
            CHECK(std::abs(got - want) < 1e-13);
        }
    }

    TEST_CASE("q = 0 gives the bare background") {
        // p = 1/2 at a = 1/(2 sqrt 2) for u0 = 1.
        const auto params = defocusing(1.0 / (2.0 * std::numbers::sqrt2));
        const auto s = spec(0.3);
        CHECK(soliton_q(s, params) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
        const std::vector<double> x{-500.0, -100.0, 0.0, 37.5, 900.0};
        for (double t : {0.0, 12.0, 100.0}) {
            for (const auto& z : asymptotic_psi(s, params, x, t)) {
                CHECK(std::abs(z - cx{1.0, 0.0}) < 1e-15);
            }
        }
    }

    TEST_CASE("far-field limits") {
        const auto params = defocusing(0.5);
        const auto s = spec(0.04, 0.0);
        const double root = std::sqrt(s.epsilon * s.beta);
        const double q = soliton_q(s, params);
        const auto left = asymptotic_psi_at(s, params, -1e4, 0.0);
        const auto right = asymptotic_psi_at(s, params, 1e4, 0.0);
        CHECK(std::abs(left) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(right) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::arg(right) == doctest::Approx(-2.0 * root / 2.0 * q).epsilon(1e-12));
        CHECK(std::arg(left) == doctest::Approx(2.0 * root / 2.0 * q).epsilon(1e-12));
    }

    TEST_CASE("phase jump across the core") {
        for (double a : {0.0, 0.3, 0.5, 0.62, 0.8}) {
            for (int dir : {1, -1}) {
                const auto params = defocusing(a);
                const auto s = spec(0.04, 0.0, dir);
                const double c = signed_sound_speed(s, params);
                const double expected = -4.0 * std::sqrt(s.epsilon * s.beta) / c * soliton_q(s, params);
                const double jump = std::arg(asymptotic_psi_at(s, params, 5e4, 0.0)) -
                                    std::arg(asymptotic_psi_at(s, params, -5e4, 0.0));
                CHECK(std::abs(jump - expected) < 1e-10);
            }
        }
    }

    TEST_CASE("predicted velocity examples") {
        const auto s = spec(0.04);
        CHECK(predicted_velocity(s, defocusing(0.5)) == doctest::Approx(1.999).epsilon(1e-14));
        CHECK(predicted_velocity(s, defocusing(0.0)) == doctest::Approx(2.001).epsilon(1e-14));
        CHECK(predicted_velocity(spec(1e-12), defocusing(0.5)) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(predicted_velocity(spec(1e-12, 0.0, -1), defocusing(0.5)) == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(predicted_velocity(spec(0.04, 0.0, -1), defocusing(0.5)) == doctest::Approx(-1.999).epsilon(1e-14));
    }

    TEST_CASE("translational coherence") {
        const auto params = defocusing(0.65);
        const auto s = spec(0.1, 40.0);
        const double v = predicted_velocity(s, params);
        std::mt19937 gen(5);
        std::uniform_real_distribution<double> ud(-50.0, 50.0), ux(-300.0, 300.0);
        for (int n = 0; n < 100; ++n) {
            const double delta = ud(gen), x = ux(gen);
            const auto now = asymptotic_psi_at(s, params, x, 30.0);
            const auto earlier = asymptotic_psi_at(s, params, x - v * delta, 30.0 - delta);
            CHECK(std::abs(now - earlier) < 1e-12);
        }
    }

    TEST_CASE("deviation sign agrees with the classification") {
        std::mt19937 gen(2024);
        std::uniform_real_distribution<double> ua(0.0, 1.2), uu(0.2, 2.0), ue(0.01, 1.0);
        int checked = 0;
        while (checked < 50) {
            const auto params = defocusing(ua(gen), uu(gen));
            const double p = params.p();
            if (std::abs(p - 2.0) < 1e-2 || std::abs(p - 0.5) < 1e-2) {
                continue;
            }
            auto s = spec(ue(gen), 0.0);
            std::vector<double> x(401);
            for (std::size_t j = 0; j < x.size(); ++j) {
                x[j] = -200.0 + static_cast<double>(j);
            }
            double hi = 0.0, lo = 0.0;
            for (const auto& z : asymptotic_psi(s, params, x, 0.0)) {
                hi = std::max(hi, std::norm(z) - 1.0);
                lo = std::max(lo, 1.0 - std::norm(z));
            }
            const auto cls = classify_soliton(params);
            if (cls == SolitonClass::Antidark) {
                CHECK(hi > 0.0);
                CHECK(lo < 1e-14);
            } else {
                REQUIRE(cls == SolitonClass::Dark);
                CHECK(lo > 0.0);
                CHECK(hi < 1e-14);
            }
            ++checked;
        }
    }

    TEST_CASE("errors outside the defocusing regime and at p = 2") {
        const std::vector<double> x{0.0};
        CHECK_THROWS_AS(asymptotic_psi(spec(0.1), ModelParams{.a = 0.5, .sigma = +1, .u0 = 1.0}, x, 0.0),
                        UnsupportedRegimeError);
        CHECK_THROWS_AS(asymptotic_psi(spec(0.1), defocusing(1.0 / std::numbers::sqrt2), x, 0.0),
                        SingularParameterError);
        auto bad = spec(0.1);
        bad.epsilon = 0.0;
        CHECK_THROWS_AS(bad.validate(defocusing(0.5)), PreconditionError);
        bad = spec(0.1);
        bad.direction = 0;
        CHECK_THROWS_AS(bad.validate(defocusing(0.5)), PreconditionError);
    }

    TEST_CASE("envelope values") {
        const BackgroundEnvelope env{};
        const std::vector<double> x{0.0, 1500.0, -1500.0, 0.9 * 1500.0};
        const auto w = envelope(env, x);
        CHECK(w[0] == 1.0);
        CHECK(w[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
        CHECK(w[2] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
        CHECK(w[3] == doctest::Approx(0.9726).epsilon(1e-4));
        CHECK(w[3] == doctest::Approx(std::exp(-std::pow(0.9, 34))).epsilon(1e-14));
        CHECK_THROWS_AS(envelope(BackgroundEnvelope{.l_star = 1500.0, .gamma = 33}, x), PreconditionError);
        CHECK_THROWS_AS(envelope(BackgroundEnvelope{.l_star = -1.0, .gamma = 34}, x), PreconditionError);
        CHECK_THROWS_AS(BackgroundEnvelope{}.validate(GridSpec(1000.0, 64)), PreconditionError);
    }

    TEST_CASE("single-soliton initial condition for the antidark case") {
        const auto grid = make_grid(2500.0, std::size_t{1} << 14);
        const auto params = defocusing(0.5);
        const auto s = spec(0.04);
        const auto ic = single_soliton_ic(s, params, grid, BackgroundEnvelope{});
        CHECK(ic.t == 0.0);
        const auto x = grid->nodes();
        const auto ref = asymptotic_psi(s, params, x, 0.0);
        const auto w = envelope(BackgroundEnvelope{}, x);
        std::size_t peak = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            CHECK(ic.psi[j] == ref[j] * w[j]);
            if (std::abs(ic.psi[j]) > std::abs(ic.psi[peak])) {
                peak = j;
            }
        }
        CHECK(x[peak] == doctest::Approx(-100.0).epsilon(grid->dx() / 100.0));
        // -100 is not a node; the nearest one sits within dx/2 of the crest.
        CHECK(std::abs(ic.psi[peak]) == doctest::Approx(1.001).epsilon(1e-7));

        // Full width at half the modulus deviation: 4 arccosh(sqrt 2)/sqrt(eps beta).
        const double half = 0.5 * (std::abs(ic.psi[peak]) - 1.0);
        double lo = 0.0, hi = 0.0;
        for (std::size_t j = peak; std::abs(ic.psi[j]) - 1.0 > half; --j) {
            lo = x[j];
        }
        for (std::size_t j = peak; std::abs(ic.psi[j]) - 1.0 > half; ++j) {
            hi = x[j];
        }
        const double fwhm = 4.0 * std::acosh(std::numbers::sqrt2) / std::sqrt(0.004);
        CHECK(fwhm == doctest::Approx(55.7).epsilon(1e-3));
        CHECK(std::abs((hi - lo) - fwhm) < 2.0 * grid->dx());
    }

    TEST_CASE("q = 0 initial condition is the envelope alone") {
        const auto grid = make_grid(2000.0, 4096);
        const auto params = defocusing(1.0 / (2.0 * std::numbers::sqrt2));
        const auto ic = single_soliton_ic(spec(0.5), params, grid, BackgroundEnvelope{.l_star = 1500.0, .gamma = 34});
        const auto w = envelope(BackgroundEnvelope{}, grid->nodes());
        for (std::size_t j = 0; j < w.size(); ++j) {
            CHECK(std::abs(ic.psi[j] - w[j]) < 1e-15);
        }
    }

    TEST_CASE("two-soliton product") {
        const auto grid = make_grid(2500.0, std::size_t{1} << 13);
        const auto params = defocusing(0.75);
        const auto right = spec(0.1, 200.0, +1);
        const auto left = spec(0.1, -200.0, -1);
        const auto ic = two_soliton_ic(right, left, params, grid, BackgroundEnvelope{});
        const auto x = grid->nodes();
        const auto r = asymptotic_psi(right, params, x, 0.0);
        const auto l = asymptotic_psi(left, params, x, 0.0);
        const auto w = envelope(BackgroundEnvelope{}, x);
        double min_left = 2.0, min_right = 2.0;
        double at_left = 0.0, at_right = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            CHECK(std::abs(ic.psi[j] - r[j] * l[j] * w[j]) < 1e-15);
            const double m = std::abs(ic.psi[j]);
            if (std::abs(x[j]) > 1000.0) {
                continue;
            }
            if (x[j] < 0.0 && m < min_left) {
                min_left = m;
                at_left = x[j];
            }
            if (x[j] > 0.0 && m < min_right) {
                min_right = m;
                at_right = x[j];
            }
        }
        CHECK(min_left < 1.0);
        CHECK(min_right < 1.0);
        CHECK(std::abs(at_left + 200.0) <= grid->dx());
        CHECK(std::abs(at_right - 200.0) <= grid->dx());

        CHECK_THROWS_AS(two_soliton_ic(left, right, params, grid, BackgroundEnvelope{}), PreconditionError);
    }

    TEST_CASE("two-soliton product collapses when the second factor is trivial") {
        const auto grid = make_grid(2500.0, std::size_t{1} << 12);
        const auto params = defocusing(0.5);
        auto left = spec(0.1, -200.0, -1);
        left.a_eff = 1.0 / (2.0 * std::numbers::sqrt2);
        CHECK(soliton_q(left, params) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
        const auto right = spec(0.1, 200.0, +1);
        const auto pair = two_soliton_ic(right, left, params, grid, BackgroundEnvelope{});
        const auto one = single_soliton_ic(right, params, grid, BackgroundEnvelope{});
        CHECK(testing::max_abs_diff(pair.psi.values(), one.psi.values()) < 1e-15);
    }

    TEST_CASE("mixed antidark and dark factors") {
        const auto params = defocusing(0.75);
        auto right = spec(0.1, 200.0, +1);
        right.a_eff = 0.67;
        const auto left = spec(0.1, -200.0, -1);
        CHECK(0.67 * 0.67 * 4.0 == doctest::Approx(1.7956));
        CHECK(soliton_q(right, params) < 0.0);
        CHECK(soliton_q(left, params) > 0.0);
    }

    TEST_CASE("boost quantization and identity") {
        const auto grid = make_grid(100.0, 256);
        const auto state = FieldState{testing::random_field(grid, 3), 0.0};
        const auto same = galilean_boost(state, 0.0);
        CHECK(same.applied_nu == 0.0);
        CHECK(testing::max_abs_diff(same.state.psi.values(), state.psi.values()) == 0.0);

        const double dk = grid->dk();
        CHECK(quantize_wavenumber(-0.7, *grid) == doctest::Approx(std::round(-0.7 / dk) * dk));
        CHECK(std::abs(std::remainder(quantize_wavenumber(-0.7, *grid), dk)) < 1e-12);
        const auto boosted = galilean_boost(state, 0.123);
        CHECK(boosted.requested_nu == 0.123);
        CHECK(std::abs(boosted.applied_nu - 0.123) <= dk / 2.0);
        for (std::size_t j = 0; j < grid->n_points(); ++j) {
            CHECK(std::norm(boosted.state.psi[j]) == doctest::Approx(std::norm(state.psi[j])).epsilon(1e-13));
        }
        // The boosted field is still periodic: its spectrum is a pure shift.
        const auto a = to_spectrum(state.psi);
        const auto b = to_spectrum(boosted.state.psi);
        const auto shift = static_cast<std::size_t>(std::lround(boosted.applied_nu / dk));
        const auto n = grid->n_points();
        for (std::size_t m = 0; m < n; ++m) {
            CHECK(std::abs(b[(m + shift) % n] - a[m]) < 1e-9 * static_cast<double>(n));
        }
    }

    TEST_CASE("boost raises the quadratic functional of a uniform background") {
        const auto grid = make_grid(300.0, 1024);
        const double a = 0.62;
        const auto params = defocusing(a);
        const auto cw = FieldState{SpectralField::constant(grid, 1.0), 0.0};
        const auto boosted = galilean_boost(cw, -0.7);
        const double nu = boosted.applied_nu;
        const double before = q_functional(cw.psi, params);
        const double after = q_functional(boosted.state.psi, params);
        CHECK(before == doctest::Approx(600.0).epsilon(1e-13));
        CHECK(after - before == doctest::Approx(nu * nu * a * a * 600.0).epsilon(1e-10));
    }

    TEST_CASE("left-going run mirrors the right-going run") {
        const auto grid = make_grid(400.0, 2048);
        const auto params = defocusing(0.5);
        const BackgroundEnvelope env{.l_star = 300.0, .gamma = 34};
        const auto right = single_soliton_ic(spec(0.04, 100.0, +1), params, grid, env);
        const auto left = single_soliton_ic(spec(0.04, -100.0, -1), params, grid, env);
        const auto n = grid->n_points();
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(std::abs(left.psi[j] - right.psi[(n - j) % n]) < 1e-14);
        }
        const auto model = chnls_model(grid, params);
        const auto tr = evolve(right, model, 10.0, 0.01, 10.0);
        const auto tl = evolve(left, model, 10.0, 0.01, 10.0);
        const auto& fr = tr.snapshots.back();
        const auto& fl = tl.snapshots.back();
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            diff = std::max(diff, std::abs(std::norm(fl[j]) - std::norm(fr[(n - j) % n])));
        }
        CHECK(diff < 1e-8);
    }
}
