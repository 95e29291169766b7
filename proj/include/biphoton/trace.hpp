#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace biphoton {

/// Uniform grid [start, stop] with `count` points (count >= 2).
struct AxisSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;

    double spacing() const noexcept { return (stop - start) / static_cast<double>(count - 1); }
    double at(std::size_t i) const noexcept {
        return i + 1 == count ? stop : start + spacing() * static_cast<double>(i);
    }
    std::vector<double> values() const;
    void validate() const;
};

enum class TraceKind { SignalSpectrum, IdlerSpectrum, G1Magnitude, G2 };
enum class Normalization { PeakUnity, UnitIntegral };

std::string_view kind_name(TraceKind kind) noexcept;
std::string_view normalization_name(Normalization n) noexcept;
Normalization parse_normalization(std::string_view name);

struct TraceMeta {
    TraceKind kind = TraceKind::G2;
    Normalization normalization = Normalization::PeakUnity;
    std::string scenario_hash;
    std::string tier;              // G2 only
    double center_frequency = 0.0;  // rad/s, spectra and g1 only
};

/// A sampled non-negative real function of one variable.
struct Trace {
    std::vector<double> axis;
    std::vector<double> values;
    TraceMeta meta;

    /// Rescale so the maximum is one (PeakUnity) or the trapezoidal
    /// integral is one (UnitIntegral). All-zero traces are left alone.
    void normalize(Normalization n);
};

struct ComplexTrace {
    std::vector<double> axis;
    std::vector<std::complex<double>> values;
    TraceMeta meta;

    Trace magnitude() const;
};

}  // namespace biphoton
