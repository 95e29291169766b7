#include "fixtures.hpp"

#include "biphoton/dispersion.hpp"
#include "biphoton/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace biphoton;
namespace fx = fixtures;

namespace {

constexpr double c = constants::speed_of_light;

// Schott N-BK7, lambda in um.
const std::vector<double> bk7 = {1.03961212, 0.231792344, 1.01046945,
                                 0.00600069867, 0.0200179144, 103.560653};

double omega_of_um(double lambda_um) { return constants::two_pi * c / (lambda_um * 1e-6); }

double bk7_by_hand(double lambda_um) {
    const double l2 = lambda_um * lambda_um;
    return std::sqrt(1.0 + bk7[0] * l2 / (l2 - bk7[3]) + bk7[1] * l2 / (l2 - bk7[4]) +
                     bk7[2] * l2 / (l2 - bk7[5]));
}

FrequencyRange visible_nir() { return {omega_of_um(2.0), omega_of_um(0.4)}; }

}  // namespace

TEST_SUITE("dispersion") {

TEST_CASE("constant model is flat") {
    const auto m = DispersionModel::constant(1.8);
    CHECK(m.index(1e15) == 1.8);
    CHECK(m.index_derivative(1e15) == 0.0);
    CHECK(group_velocity(m, 1e15) == c / 1.8);
    CHECK(wave_number(m, 2e15) == 2e15 * 1.8 / c);
}

TEST_CASE("linear model group velocity") {
    const double a = 1.7, b = 2e-17;
    const auto m = DispersionModel::linear(a, b, {1e14, 1e16});
    const double w = 1.2e15;
    CHECK(m.index(w) == doctest::Approx(a + b * w).epsilon(1e-15));
    CHECK(m.index_derivative(w) == b);
    CHECK(group_velocity(m, w) == doctest::Approx(c / (a + 2.0 * b * w)).epsilon(1e-14));
}

TEST_CASE("Sellmeier matches the hand-written formula and the catalogue value") {
    const auto m = DispersionModel::sellmeier(bk7, visible_nir());
    for (double lambda : {0.5, 0.6328, 1.0, 1.55}) {
        CHECK(m.index(omega_of_um(lambda)) == doctest::Approx(bk7_by_hand(lambda)).epsilon(1e-13));
    }
    // N-BK7 at 1064 nm is 1.5066 to four decimals.
    CHECK(m.index(omega_of_um(1.064)) == doctest::Approx(1.5066).epsilon(1e-4));
}

TEST_CASE("analytic derivative agrees with central differences") {
    auto gen = fx::rng(1);
    const auto sell = DispersionModel::sellmeier(bk7, visible_nir());
    const auto lin = DispersionModel::linear(1.6, 3e-17, {1e14, 1e16});
    std::uniform_real_distribution<double> pick(omega_of_um(1.9), omega_of_um(0.45));
    for (int trial = 0; trial < 200; ++trial) {
        const double w = pick(gen);
        for (const auto* m : {&sell, &lin}) {
            const double h = w * 1e-5;
            const double fd = (m->index(w + h) - m->index(w - h)) / (2.0 * h);
            CHECK(m->index_derivative(w) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("Sellmeier group index exceeds phase index in normal dispersion") {
    const auto m = DispersionModel::sellmeier(bk7, visible_nir());
    const double w = omega_of_um(0.8);
    CHECK(c / group_velocity(m, w) > m.index(w));
}

TEST_CASE("construction rejects unphysical models") {
    CHECK_THROWS_AS(DispersionModel::constant(1.0), Error);
    CHECK_THROWS_AS(DispersionModel::constant(0.5), Error);
    CHECK_THROWS_AS(DispersionModel(DispersionModel::Kind::Constant, {1.5, 2.0}, {0, 1}), Error);
    CHECK_THROWS_AS(DispersionModel::linear(1.5, 0.0, DispersionModel::default_range()), Error);
    // Pole at C3 = 103.56 um^2, i.e. lambda = 10.18 um, inside this range.
    CHECK_THROWS_AS(DispersionModel::sellmeier(bk7, {omega_of_um(20.0), omega_of_um(1.0)}), Error);
    CHECK_THROWS_AS(DispersionModel::sellmeier({1.0, 2.0}, visible_nir()), Error);
    CHECK_THROWS_AS(DispersionModel::linear(1.5, -1e-15, {1e14, 1e16}), Error);  // n < 1 at 1e16
}

TEST_CASE("queries outside the validity range raise OutOfRange") {
    const auto m = DispersionModel::sellmeier(bk7, visible_nir());
    try {
        (void)m.index(omega_of_um(3.0));
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfRange);
    }
}

TEST_CASE("kind names round-trip") {
    for (auto k : {DispersionModel::Kind::Constant, DispersionModel::Kind::LinearInOmega,
                   DispersionModel::Kind::Sellmeier}) {
        CHECK(parse_dispersion_kind(kind_name(k)) == k);
    }
    CHECK_THROWS_AS(parse_dispersion_kind("cauchy"), Error);
}

TEST_CASE("frequency triples conserve energy exactly") {
    CHECK_THROWS_AS(FrequencyTriple::make(3.0, 1.0, 1.5), Error);
    CHECK_THROWS_AS(FrequencyTriple::make(1.0, -1.0, 2.0), Error);
    auto gen = fx::rng(2);
    std::uniform_real_distribution<double> pump(1e15, 5e15), frac(0.05, 0.95);
    for (int i = 0; i < 1000; ++i) {
        const double wp = pump(gen);
        const auto t = FrequencyTriple::from_pump_and_signal(wp, frac(gen) * wp);
        CHECK(t.signal() + t.idler() == t.pump());
    }
}

TEST_CASE("tau0 is the transit-time difference and flips sign under swap") {
    const auto crystal = fx::crystal(1.85);
    const auto f = FrequencyTriple::from_pump_and_signal(fx::omega_p, fx::omega_s);
    const double tau0 = transit_time_diff(crystal, f);
    CHECK(tau0 == doctest::Approx(fx::crystal_l * (1.85 - 1.8) / c).epsilon(1e-12));

    CrystalParams swapped{crystal.length_l,        crystal.chi,
                          crystal.cross_section_A, crystal.dispersion_idler,
                          crystal.dispersion_signal, crystal.dispersion_pump};
    CHECK(transit_time_diff(swapped, f) == -tau0);
}

TEST_CASE("phase matching with constant indices hits the closed-form split") {
    const double ns = 1.8, ni = 1.85, target = 1.7e15;
    const double np = (target * ns + (fx::omega_p - target) * ni) / fx::omega_p;
    const auto crystal = fx::crystal(ni, np);
    const auto f = phase_match(crystal, fx::omega_p, {1.5e15, 1.9e15});
    const double expected = fx::omega_p * (np - ni) / (ns - ni);
    CHECK(f.signal() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(f.signal() + f.idler() == f.pump());
    CHECK(std::abs(phase_mismatch(crystal, fx::omega_p, f.signal())) <
          1e-9 * wave_number(crystal.dispersion_pump, fx::omega_p));
}

TEST_CASE("phase matching agrees with a dense scan for dispersive media") {
    // Idler index rises with frequency, so the mismatch is quadratic in omega_S.
    const auto idler = DispersionModel::linear(1.84, 1e-17, {1e14, 1e16});
    const auto signal = DispersionModel::sellmeier(bk7, visible_nir());
    const double ws_target = 1.75e15;
    const double k_target = (ws_target * signal.index(ws_target) +
                             (fx::omega_p - ws_target) * idler.index(fx::omega_p - ws_target)) /
                            c;
    const double np = k_target * c / fx::omega_p;
    const CrystalParams crystal{0.01, 1e-12, 1e-8, signal, idler,
                                DispersionModel::constant(np, {1e14, 1e16})};
    const std::pair<double, double> bracket{1.5e15, 2.0e15};
    const auto f = phase_match(crystal, fx::omega_p, bracket);

    constexpr int n = 1000000;
    const double step = (bracket.second - bracket.first) / n;
    double prev = phase_mismatch(crystal, fx::omega_p, bracket.first);
    double root = -1.0;
    for (int i = 1; i <= n; ++i) {
        const double w = bracket.first + step * i;
        const double cur = phase_mismatch(crystal, fx::omega_p, w);
        if ((cur < 0.0) != (prev < 0.0)) {
            root = w - 0.5 * step;
            break;
        }
        prev = cur;
    }
    REQUIRE(root > 0.0);
    CHECK(std::abs(f.signal() - root) <= step);
    CHECK(std::abs(f.signal() - ws_target) <= 1e-9 * ws_target);
}

TEST_CASE("phase matching reports degenerate and sign-less brackets") {
    try {
        (void)phase_match(fx::crystal(1.8, 1.8), fx::omega_p, {1.5e15, 1.9e15});
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degenerate);
    }
    const double np = (1.7e15 * 1.8 + 1.84e15 * 1.85) / fx::omega_p;
    try {
        (void)phase_match(fx::crystal(1.85, np), fx::omega_p, {1.75e15, 1.9e15});
        FAIL("expected NoSignChange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSignChange);
    }
    CHECK_THROWS_AS(phase_match(fx::crystal(1.85, np), fx::omega_p, {1.9e15, 1.5e15}), Error);
}

}  // TEST_SUITE
