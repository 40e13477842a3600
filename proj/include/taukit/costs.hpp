#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taukit/common.hpp"

namespace taukit {

// a*t^2 + b*t + c on [lo, hi]; pieces are ordered and cover all of R.
struct CostPiece {
    double lo, hi;
    double a, b, c;
    double value(double t) const { return (a * t + b) * t + c; }
    double slope(double t) const { return 2.0 * a * t + b; }
};

struct CostFunction {
    std::string name;
    std::vector<CostPiece> pieces;
    std::optional<double> quad_coeff; // set iff w(t) = quad_coeff * t^2
    bool convex = true;

    const CostPiece& piece_at(double t) const {
        for (const auto& p : pieces)
            if (t <= p.hi) return p;
        return pieces.back();
    }
    double eval(double t) const { return piece_at(t).value(t); }
    double deriv(double t) const { return piece_at(t).slope(t); }
    double slope_bound(double radius) const {
        double m = 0.0;
        for (const auto& p : pieces) {
            double lo = std::max(p.lo, -radius), hi = std::min(p.hi, radius);
            if (lo > hi) continue;
            m = std::max({m, std::abs(p.slope(lo)), std::abs(p.slope(hi))});
        }
        return m;
    }
};

// Quadratic core t^2/18 on |t| <= 2, linear tails (2/9)(|t|-1); slope capped at 2/9.
inline CostFunction cost_W() {
    CostFunction w;
    w.name = "W";
    w.pieces = {{-kInf, -2.0, 0.0, -2.0 / 9.0, -2.0 / 9.0},
                {-2.0, 2.0, 1.0 / 18.0, 0.0, 0.0},
                {2.0, kInf, 0.0, 2.0 / 9.0, -2.0 / 9.0}};
    return w;
}

// The doubled-argument version: U(t) = 2 W(t/2), i.e. t^2/36 on |t| <= 4,
// linear tails (2/9)(|t|-2) beyond.
inline CostFunction cost_U() {
    CostFunction w;
    w.name = "U";
    w.pieces = {{-kInf, -4.0, 0.0, -2.0 / 9.0, -4.0 / 9.0},
                {-4.0, 4.0, 1.0 / 36.0, 0.0, 0.0},
                {4.0, kInf, 0.0, 2.0 / 9.0, -4.0 / 9.0}};
    return w;
}

inline CostFunction cost_quadratic(double c) {
    if (!(c > 0.0)) throw TaukitError("cost_quadratic: coefficient must be positive");
    CostFunction w;
    w.name = "quadratic(" + std::to_string(c) + ")";
    w.pieces = {{-kInf, kInf, c, 0.0, 0.0}};
    w.quad_coeff = c;
    return w;
}

struct SeparableCost {
    std::vector<CostFunction> axes;

    int dim() const { return static_cast<int>(axes.size()); }
    double eval(std::span<const double> t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < axes.size(); ++i) s += axes[i].eval(t[i]);
        return s;
    }
};

inline SeparableCost tensorize(std::vector<CostFunction> axes) {
    if (axes.empty()) throw TaukitError("tensorize: need at least one axis");
    return SeparableCost{std::move(axes)};
}

inline SeparableCost tensor_power(const CostFunction& w, int n) {
    if (n < 1) throw TaukitError("tensor_power: need n >= 1");
    return SeparableCost{std::vector<CostFunction>(static_cast<std::size_t>(n), w)};
}

} // namespace taukit
