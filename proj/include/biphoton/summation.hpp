#pragma once

#ifdef __FAST_MATH__
#error "-ffast-math would optimise the compensation away"
#endif

#include <cmath>
#include <complex>
#include <span>

namespace biphoton {

/// Neumaier (improved Kahan-Babuska) running sum.
///
/// The result depends only on the order in which terms are added, so callers
/// that iterate in a fixed order get bit-reproducible totals.
class CompensatedSum {
  public:
    CompensatedSum() = default;
    explicit CompensatedSum(double initial) : sum_(initial) {}

    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class CompensatedComplexSum {
  public:
    void add(std::complex<double> z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }

    CompensatedComplexSum& operator+=(std::complex<double> z) noexcept {
        add(z);
        return *this;
    }

    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

  private:
    CompensatedSum re_;
    CompensatedSum im_;
};

inline double compensated_total(std::span<const double> xs) noexcept {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

}  // namespace biphoton
