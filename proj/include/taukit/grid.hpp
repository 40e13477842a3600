#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "taukit/common.hpp"

namespace taukit {

// Uniform grid of n points on [lo, hi]; step = (hi-lo)/(n-1).
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;

    double step() const { return (hi - lo) / static_cast<double>(n - 1); }
    double x(int k) const { return lo + static_cast<double>(k) * step(); }

    void validate() const {
        if (n < 2) throw TaukitError("GridSpec: need at least 2 points");
        if (!(hi > lo)) throw TaukitError("GridSpec: hi must exceed lo");
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw TaukitError("GridSpec: bounds must be finite");
    }
};

struct GridFunction {
    GridSpec grid;
    std::vector<double> v;

    double x(int k) const { return grid.x(k); }
    int size() const { return static_cast<int>(v.size()); }
};

inline GridFunction sample_on_grid(const GridSpec& g, const std::function<double(double)>& f) {
    g.validate();
    GridFunction out;
    out.grid = g;
    out.v.resize(static_cast<std::size_t>(g.n));
    for (int k = 0; k < g.n; ++k) out.v[static_cast<std::size_t>(k)] = f(g.x(k));
    return out;
}

// Both grids must share one step and sit on a common lattice; returns the
// integer offset s with g.lo = f.lo + s*h. Throws otherwise.
inline long long lattice_offset(const GridSpec& f, const GridSpec& g) {
    double hf = f.step(), hg = g.step();
    if (std::abs(hf - hg) > 1e-9 * std::max(hf, hg))
        throw TaukitError("incommensurable grid steps");
    double raw = (g.lo - f.lo) / hf;
    long long s = static_cast<long long>(std::llround(raw));
    if (std::abs(raw - static_cast<double>(s)) > 1e-6)
        throw TaukitError("grids do not share a lattice");
    return s;
}

} // namespace taukit
