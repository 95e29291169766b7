#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cstddef>

namespace biphoton {

// Points per panel of the composite Gauss-Legendre rule.
inline constexpr int gauss_order = 8;

/// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels.
///
/// Panels are visited left to right and summed in that order, so the result
/// is deterministic. Works for real and complex integrands.
template <class F>
auto composite_gauss(F&& f, double a, double b, std::size_t panels) {
    using gauss = boost::math::quadrature::gauss<double, gauss_order>;
    using result_type = decltype(f(a));
    result_type total{};
    if (panels == 0 || a == b) return total;
    const double width = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double hi = (p + 1 == panels) ? b : lo + width;
        total += gauss::integrate(f, lo, hi);
    }
    return total;
}

}  // namespace biphoton
