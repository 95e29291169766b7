#include "biphoton/trace.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/summation.hpp"

#include <algorithm>
#include <cmath>

namespace biphoton {

std::vector<double> AxisSpec::values() const {
    validate();
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = at(i);
    return out;
}

void AxisSpec::validate() const {
    if (count < 2 || !std::isfinite(start) || !std::isfinite(stop) || !(stop > start)) {
        throw Error(ErrorKind::InvalidArgument,
                    "axis needs finite start < stop and at least two points");
    }
}

std::string_view kind_name(TraceKind kind) noexcept {
    switch (kind) {
        case TraceKind::SignalSpectrum: return "SignalSpectrum";
        case TraceKind::IdlerSpectrum: return "IdlerSpectrum";
        case TraceKind::G1Magnitude: return "G1Magnitude";
        case TraceKind::G2: return "G2";
    }
    return "Unknown";
}

std::string_view normalization_name(Normalization n) noexcept {
    return n == Normalization::PeakUnity ? "peak_unity" : "unit_integral";
}

Normalization parse_normalization(std::string_view name) {
    if (name == "peak_unity") return Normalization::PeakUnity;
    if (name == "unit_integral") return Normalization::UnitIntegral;
    throw Error(ErrorKind::InvalidArgument, "unknown normalization '" + std::string(name) +
                                                "' (expected peak_unity or unit_integral)");
}

void Trace::normalize(Normalization n) {
    meta.normalization = n;
    double scale = 0.0;
    if (n == Normalization::PeakUnity) {
        scale = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    } else if (values.size() >= 2) {
        CompensatedSum s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
            s.add(w * values[i]);
        }
        scale = s.value() * (axis[1] - axis[0]);
    }
    if (scale > 0.0) {
        for (auto& v : values) v /= scale;
    }
}

Trace ComplexTrace::magnitude() const {
    Trace t;
    t.axis = axis;
    t.meta = meta;
    t.values.reserve(values.size());
    for (const auto& z : values) t.values.push_back(std::abs(z));
    return t;
}

}  // namespace biphoton
