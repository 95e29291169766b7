#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace biphoton {

/// Closed angular-frequency interval [lo, hi] in rad/s.
struct FrequencyRange {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double omega) const noexcept { return omega >= lo && omega <= hi; }
};

/// Refractive index n(omega) of one polarisation axis.
///
/// Three model kinds are supported:
///  - Constant:      n = p[0]
///  - LinearInOmega: n = p[0] + p[1] * omega          (p[1] in seconds)
///  - Sellmeier:     n^2 = 1 + sum_k B_k L^2 / (L^2 - C_k)
///                   with p = {B1, B2, B3, C1, C2, C3}, the vacuum
///                   wavelength L in micrometres and C_k in um^2.
///
/// Construction checks n > 1 over the whole validity range and, for the
/// Sellmeier form, that no pole falls inside it.
class DispersionModel {
  public:
    enum class Kind { Constant, LinearInOmega, Sellmeier };

    DispersionModel(Kind kind, std::vector<double> parameters, FrequencyRange validity);

    static DispersionModel constant(double n, FrequencyRange validity = default_range());
    static DispersionModel linear(double a, double b_seconds, FrequencyRange validity);
    static DispersionModel sellmeier(std::vector<double> coefficients, FrequencyRange validity);

    // (0, +inf) in rad/s; only meaningful for the Constant kind.
    static FrequencyRange default_range() noexcept;

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& parameters() const noexcept { return params_; }
    const FrequencyRange& validity() const noexcept { return validity_; }

    double index(double omega) const;
    /// Analytic dn/domega in s/rad.
    double index_derivative(double omega) const;

  private:
    void check_in_range(double omega) const;
    double sellmeier_n2(double lambda_um) const noexcept;

    Kind kind_;
    std::vector<double> params_;
    FrequencyRange validity_;
};

std::string_view kind_name(DispersionModel::Kind kind) noexcept;
DispersionModel::Kind parse_dispersion_kind(std::string_view name);

/// Pump, signal and idler angular frequencies with omega_P = omega_S + omega_I
/// holding exactly in floating point.
class FrequencyTriple {
  public:
    /// Throws InvalidArgument unless all three are positive and the sum is exact.
    static FrequencyTriple make(double omega_p, double omega_s, double omega_i);

    /// Derives omega_I from the pump and signal, nudging it by a few ulp if
    /// omega_P - omega_S does not round-trip through the addition. When every
    /// candidate sum is a rounding tie, omega_S itself moves by one ulp.
    static FrequencyTriple from_pump_and_signal(double omega_p, double omega_s);

    double pump() const noexcept { return pump_; }
    double signal() const noexcept { return signal_; }
    double idler() const noexcept { return idler_; }

  private:
    FrequencyTriple(double p, double s, double i) : pump_(p), signal_(s), idler_(i) {}

    double pump_;
    double signal_;
    double idler_;
};

struct CrystalParams {
    double length_l;         // m
    double chi;              // m/V, frequency independent
    double cross_section_A;  // m^2
    DispersionModel dispersion_signal;
    DispersionModel dispersion_idler;
    DispersionModel dispersion_pump;

    void validate() const;
};

double refractive_index(const DispersionModel& model, double omega);

/// c / (n + omega dn/domega).
double group_velocity(const DispersionModel& model, double omega);

/// Wave number omega n(omega) / c.
double wave_number(const DispersionModel& model, double omega);

/// tau0 = l / v_g,I - l / v_g,S; positive when the signal is faster.
double transit_time_diff(const CrystalParams& crystal, const FrequencyTriple& freqs);

/// Collinear mismatch k_p(omega_P) - k_s(omega_S) - k_i(omega_P - omega_S).
double phase_mismatch(const CrystalParams& crystal, double omega_p, double omega_s);

/// Solves the collinear phase-matching condition for omega_S by bisection
/// inside `bracket`.
///
/// Throws Degenerate when |dk| stays below 1e-6 k_p across the whole bracket
/// (any split works and the caller has to pick omega_S), NoSignChange when the
/// mismatch has the same sign at both ends.
FrequencyTriple phase_match(const CrystalParams& crystal, double omega_p,
                            std::pair<double, double> bracket);

}  // namespace biphoton
