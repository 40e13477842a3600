#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "taukit/common.hpp"
#include "taukit/grid.hpp"

namespace taukit {

inline double trapezoid(const GridFunction& f) {
    double h = f.grid.step();
    double s = 0.5 * (f.v.front() + f.v.back());
    for (std::size_t k = 1; k + 1 < f.v.size(); ++k) s += f.v[k];
    return s * h;
}

namespace detail {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 48) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Integral of a grid-sampled integrand against a measure given by its cdf:
// sum over cells of avg(f) * cell mass. Cell masses come from the cdf in
// closed form, so density kinks and unbounded densities cost no accuracy.
struct CdfWeightedIntegral {
    double value = 0.0;
    double error_proxy = 0.0; // second-difference curvature estimate
};

inline CdfWeightedIntegral integrate_against_cdf(const GridFunction& f,
                                                 const std::function<double(double)>& cdf) {
    CdfWeightedIntegral out;
    const int n = f.size();
    std::vector<double> mass(static_cast<std::size_t>(n - 1));
    double c_prev = cdf(f.x(0));
    for (int k = 0; k + 1 < n; ++k) {
        double c_next = cdf(f.x(k + 1));
        mass[static_cast<std::size_t>(k)] = std::max(0.0, c_next - c_prev);
        c_prev = c_next;
    }
    for (int k = 0; k + 1 < n; ++k) {
        double m = mass[static_cast<std::size_t>(k)];
        if (m == 0.0) continue; // zero-mass cells contribute nothing even if f is +inf there
        out.value += 0.5 * (f.v[static_cast<std::size_t>(k)] + f.v[static_cast<std::size_t>(k + 1)]) * m;
    }
    // |f(mid) - avg(f_l, f_r)| ~ |f''| h^2 / 8; estimate f'' by second differences.
    for (int k = 1; k + 1 < n; ++k) {
        double d2 = f.v[static_cast<std::size_t>(k + 1)] - 2.0 * f.v[static_cast<std::size_t>(k)] +
                    f.v[static_cast<std::size_t>(k - 1)];
        if (!std::isfinite(d2)) continue;
        double m = 0.5 * (mass[static_cast<std::size_t>(k - 1)] + mass[static_cast<std::size_t>(k)]);
        out.error_proxy += std::abs(d2) * m * 0.25;
    }
    return out;
}

} // namespace taukit
