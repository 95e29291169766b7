#include "fixtures.hpp"

#include "biphoton/biphoton.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/scales.hpp"

#include <doctest.h>

#include <random>

using namespace biphoton;
namespace fx = fixtures;

namespace {

DerivedScales unit_scales(double tau0, double fsr = 1.0, double gamma = 0.05) {
    DerivedScales s;
    s.tau0 = tau0;
    s.fsr_delta_omega = fsr;
    s.round_trip_T = constants::two_pi / fsr;
    s.gamma = gamma;
    return s;
}

}  // namespace

TEST_SUITE("biphoton") {

TEST_CASE("phi at the phase-matched point is one") {
    const auto s = unit_scales(0.02);
    CHECK(std::abs(phi_analytic(0, 0.0, s) - std::complex<double>(1.0, 0.0)) == 0.0);
    CHECK(std::abs(phi_exact(0, 0.0, s, 32) - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("quadrature and closed form agree on random arguments") {
    auto gen = fx::rng(4);
    std::uniform_int_distribution<long long> mode(-400, 400);
    std::uniform_real_distribution<double> det(-0.5, 0.5), tau(-0.05, 0.05);
    for (int i = 0; i < 500; ++i) {
        const auto s = unit_scales(tau(gen));
        const long long m = mode(gen);
        const double o = det(gen);
        const auto a = phi_analytic(m, o, s);
        const auto e = phi_exact(m, o, s, 256);
        CHECK(std::abs(a - e) <= 1e-10 * std::max(std::abs(a), 1e-3));
    }
}

TEST_CASE("phi is conjugate-symmetric") {
    const auto s = unit_scales(0.03);
    for (long long m : {1LL, 7LL, 150LL}) {
        const auto p = phi_analytic(m, 0.1, s);
        const auto q = phi_analytic(-m, -0.1, s);
        CHECK(std::abs(p - std::conj(q)) < 1e-15);
    }
}

TEST_CASE("quadrature refuses too few points or too much phase per panel") {
    const auto s = unit_scales(0.02);
    CHECK_THROWS_AS(phi_exact(0, 0.0, s, 16), Error);
    try {
        (void)phi_exact(400, 0.0, s, 32);  // 8 rad over 4 panels
        FAIL("expected QuadratureWarning");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::QuadratureWarning);
    }
}

TEST_CASE("sinc^2 comb sums to pi / step") {
    // Poisson summation makes this identity exact for 0 < step <= pi.
    auto gen = fx::rng(5);
    std::uniform_real_distribution<double> pick(std::log(1e-3), std::log(3.0));
    for (int i = 0; i < 40; ++i) {
        const double step = std::exp(pick(gen));
        const auto r = sinc2_mode_sum(step, 0);
        CHECK(r.value == doctest::Approx(constants::pi / step).epsilon(2e-6));
        CHECK(r.error_bound <= 1e-6 * r.value);
    }
    CHECK_THROWS_AS(sinc2_mode_sum(0.0, 0), Error);
}

TEST_CASE("mode sum and continuum rates agree and the continuum ignores the cavity") {
    const auto s = fx::make(0.02);
    const auto& c = s.config;
    const double sum = rate_mode_sum(c.crystal, c.pump, s.freqs, s.scales);
    const double cont = rate_continuum(c.crystal, c.pump, s.freqs, s.scales);
    CHECK(sum == doctest::Approx(cont).epsilon(1e-5));
    CHECK(s.scales.kappa == cont);

    const auto other = fx::make(0.02, 0.5, 0.5);
    CHECK(rate_continuum(other.config.crystal, other.config.pump, other.freqs, other.scales) ==
          cont);
}

TEST_CASE("rate prefactor follows the closed form") {
    const auto s = fx::make(0.02);
    const auto& c = s.config;
    const double g = 1e-12 * fx::pump_field /
                     (4.0 * constants::vacuum_permittivity * constants::speed_of_light * 1e-8);
    const double n_i = c.crystal.dispersion_idler.index(s.freqs.idler());
    const double expected = g * g * s.freqs.signal() * s.freqs.idler() / (1.8 * n_i);
    CHECK(rate_prefactor(c.crystal, c.pump, s.freqs) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("rates diverge without walk-off") {
    const auto s = fx::make(0.0);
    const auto& c = s.config;
    CHECK(s.scales.tau0 == 0.0);
    CHECK(std::isinf(s.scales.kappa));
    try {
        (void)rate_mode_sum(c.crystal, c.pump, s.freqs, s.scales);
        FAIL("expected NonConvergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonConvergence);
    }
    try {
        (void)rate_continuum(c.crystal, c.pump, s.freqs, s.scales);
        FAIL("expected DegenerateGroupVelocity");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateGroupVelocity);
    }
}

TEST_CASE("wave function is normalised and shaped by the Lorentzian") {
    const auto s = unit_scales(0.02);
    const auto g = wavefunction_grid(s, 20, 10.0, 321);
    CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.mode_count() == 41);
    // psi(m, Omega) (gamma/2 - i Omega) / Phi_m(Omega) is the same constant everywhere.
    for (long long m : {-20LL, 0LL, 13LL}) {
        for (std::size_t k : {std::size_t{0}, std::size_t{100}, std::size_t{160}}) {
            const double o = g.detuning[k];
            const auto ratio = g.at(m, k) * std::complex<double>(0.5 * s.gamma, -o) /
                               phi_analytic(m, o, s);
            CHECK(std::abs(ratio - g.normalization) < 1e-12 * g.normalization);
        }
    }
}

TEST_CASE("wave function grid limits") {
    const auto s = unit_scales(0.02);
    CHECK_THROWS_AS(wavefunction_grid(s, 5, 5.0, 321), Error);
    try {
        (void)wavefunction_grid(s, 5, 10.0, 101);
        FAIL("expected GridTooCoarse");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GridTooCoarse);
    }
}

}  // TEST_SUITE
