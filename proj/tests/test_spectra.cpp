#include "fixtures.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/spectra.hpp"
#include "biphoton/summation.hpp"

#include <doctest.h>

using namespace biphoton;
namespace fx = fixtures;

TEST_SUITE("spectra") {

TEST_CASE("comb peaks sit at -m fsr") {
    const auto s = fx::make(0.05);
    const double fsr = s.scales.fsr_delta_omega;
    const AxisSpec grid{-10.5 * fsr, 10.5 * fsr, 21 * 321 + 1};
    const auto t = spectrum(Field::Signal, s.scales, s.freqs, grid);
    const auto peaks = fx::local_maxima(t.values, 1e-3);
    REQUIRE(peaks.size() == 21);
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        const double m = static_cast<double>(i) - 10.0;
        CHECK(std::abs(t.axis[peaks[i]] - m * fsr) <= grid.spacing());
    }
    CHECK(*std::max_element(t.values.begin(), t.values.end()) == 1.0);
}

TEST_CASE("signal and idler share the comb but not the centre frequency") {
    const auto s = fx::make(0.05);
    const AxisSpec grid{-2e10, 2e10, 4001};
    const auto a = spectrum(Field::Signal, s.scales, s.freqs, grid);
    const auto b = spectrum(Field::Idler, s.scales, s.freqs, grid);
    CHECK(a.values == b.values);
    CHECK(a.meta.kind == TraceKind::SignalSpectrum);
    CHECK(b.meta.kind == TraceKind::IdlerSpectrum);
    CHECK(a.meta.center_frequency == s.freqs.signal());
    CHECK(b.meta.center_frequency == s.freqs.idler());
}

TEST_CASE("unit-integral normalisation") {
    const auto s = fx::make(0.05);
    const auto t = spectrum(Field::Signal, s.scales, s.freqs,
                            default_spectrum_grid(s.scales), auto_modes,
                            Normalization::UnitIntegral);
    CompensatedSum area;
    for (std::size_t i = 0; i + 1 < t.values.size(); ++i) {
        area.add(0.5 * (t.values[i] + t.values[i + 1]) * (t.axis[i + 1] - t.axis[i]));
    }
    CHECK(area.value() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(t.meta.normalization == Normalization::UnitIntegral);
}

TEST_CASE("coarse spectrum grids are refused") {
    const auto s = fx::make(0.05);
    const AxisSpec grid{-1e10, 1e10, 101};
    try {
        (void)spectrum(Field::Signal, s.scales, s.freqs, grid);
        FAIL("expected GridTooCoarse");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GridTooCoarse);
    }
}

TEST_CASE("envelope needs walk-off") {
    const auto s = fx::make(0.0);
    CHECK_THROWS_AS(envelope_modes(s.scales), Error);
    CHECK(envelope_modes(fx::make(0.05).scales) == 126);
}

TEST_CASE("g1 is one at zero delay, even, and bounded") {
    const auto s = fx::make(0.05);
    const double fsr = s.scales.fsr_delta_omega;
    const long long modes = 2 * envelope_modes(s.scales);
    const double half = 3.0 * constants::two_pi / fsr;
    const std::size_t n = 2 * static_cast<std::size_t>(std::ceil(half / (0.5 * constants::pi /
                                                                         (modes * fsr)))) + 1;
    const auto t = g1(Field::Signal, s.scales, s.freqs, {-half, half, n});
    const std::size_t mid = n / 2;
    CHECK(t.values[mid].real() == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(t.values[i].imag() == 0.0);
        CHECK(std::abs(t.values[i]) <= 1.0 + 1e-12);
        CHECK(t.values[i].real() == doctest::Approx(t.values[n - 1 - i].real()).epsilon(1e-9));
    }
}

TEST_CASE("the optical carrier only changes the phase") {
    const auto s = fx::make(0.05);
    const AxisSpec grid{-1e-10, 1e-10, 2001};
    const auto base = g1(Field::Idler, s.scales, s.freqs, grid, 50);
    const auto full = g1(Field::Idler, s.scales, s.freqs, grid, 50, true);
    for (std::size_t i = 0; i < grid.count; ++i) {
        CHECK(std::abs(full.values[i]) == doctest::Approx(std::abs(base.values[i])).epsilon(1e-12));
    }
}

TEST_CASE("g1 rejects undersampled delay grids") {
    const auto s = fx::make(0.05);
    try {
        (void)g1(Field::Signal, s.scales, s.freqs, {-1e-8, 1e-8, 101});
        FAIL("expected GridTooCoarse");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GridTooCoarse);
    }
}

}  // TEST_SUITE
