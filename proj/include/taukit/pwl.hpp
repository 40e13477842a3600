#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "taukit/common.hpp"
#include "taukit/costs.hpp"

namespace taukit {

// Piecewise-linear function: knots (xs, ys) with linear extension beyond the
// outermost knots (slope 0 extension = bounded function, the default).
struct Pwl {
    std::vector<double> xs;
    std::vector<double> ys;
    double lo_slope = 0.0;
    double hi_slope = 0.0;

    double eval(double u) const {
        if (u <= xs.front()) return ys.front() + lo_slope * (u - xs.front());
        if (u >= xs.back()) return ys.back() + hi_slope * (u - xs.back());
        auto it = std::upper_bound(xs.begin(), xs.end(), u);
        std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
        double t = (u - xs[i]) / (xs[i + 1] - xs[i]);
        return ys[i] + t * (ys[i + 1] - ys[i]);
    }

    double slope_at(double u) const {
        if (u < xs.front()) return lo_slope;
        if (u >= xs.back()) return hi_slope;
        auto it = std::upper_bound(xs.begin(), xs.end(), u);
        std::size_t i = static_cast<std::size_t>(it - xs.begin());
        if (i > 0) --i;
        if (i + 1 >= xs.size()) return hi_slope;
        return (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    }

    double max_abs_slope() const {
        double m = std::max(std::abs(lo_slope), std::abs(hi_slope));
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            m = std::max(m, std::abs((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])));
        return m;
    }

    bool is_convex(double tol = 1e-12) const {
        double prev = lo_slope;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            double s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
            if (s < prev - tol) return false;
            prev = s;
        }
        return !(hi_slope < prev - tol);
    }
};

inline Pwl pwl_constant(double c) { return Pwl{{0.0}, {c}, 0.0, 0.0}; }

inline Pwl pwl_linear(double slope) { return Pwl{{0.0}, {0.0}, slope, slope}; }

// Upper envelope of affine pieces slope*x + intercept, as a Pwl with linear tails.
inline Pwl pwl_from_max_affine(std::vector<std::pair<double, double>> lines) {
    if (lines.empty()) throw TaukitError("pwl_from_max_affine: no lines");
    std::sort(lines.begin(), lines.end());
    std::vector<std::pair<double, double>> hull; // increasing slope
    auto isect = [](const std::pair<double, double>& l1, const std::pair<double, double>& l2) {
        return (l2.second - l1.second) / (l1.first - l2.first);
    };
    for (const auto& ln : lines) {
        if (!hull.empty() && hull.back().first == ln.first) {
            if (hull.back().second >= ln.second) continue;
            hull.pop_back();
        }
        while (hull.size() >= 2 &&
               isect(hull[hull.size() - 2], ln) <= isect(hull[hull.size() - 2], hull.back()))
            hull.pop_back();
        hull.push_back(ln);
    }
    Pwl p;
    if (hull.size() == 1) {
        p.xs = {0.0};
        p.ys = {hull[0].second};
        p.lo_slope = p.hi_slope = hull[0].first;
        return p;
    }
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        double x = isect(hull[i], hull[i + 1]);
        p.xs.push_back(x);
        p.ys.push_back(hull[i].first * x + hull[i].second);
    }
    p.lo_slope = hull.front().first;
    p.hi_slope = hull.back().first;
    return p;
}

struct PwlCostMin {
    double value = kInf;
    double argmin = 0.0;
    bool unbounded = false; // objective decreases without bound
};

// Exact global minimum over u in [u_lo, u_hi] of  pwl(u) + w(c - u).
// Both factors are piecewise polynomial of degree <= 2, so the objective is
// piecewise quadratic: enumerate the joint segments and take closed-form
// vertices and endpoints as candidates.
inline PwlCostMin pwl_cost_min(const Pwl& phi, const CostFunction& w, double c,
                               double u_lo = -kInf, double u_hi = kInf) {
    std::vector<double> bps;
    for (double x : phi.xs)
        if (x > u_lo && x < u_hi) bps.push_back(x);
    for (const auto& p : w.pieces) {
        if (std::isfinite(p.lo)) {
            double u = c - p.lo;
            if (u > u_lo && u < u_hi) bps.push_back(u);
        }
        if (std::isfinite(p.hi)) {
            double u = c - p.hi;
            if (u > u_lo && u < u_hi) bps.push_back(u);
        }
    }
    if (std::isfinite(u_lo)) bps.push_back(u_lo);
    if (std::isfinite(u_hi)) bps.push_back(u_hi);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    PwlCostMin best;
    auto consider = [&](double u) {
        double val = phi.eval(u) + w.eval(c - u);
        if (val < best.value) {
            best.value = val;
            best.argmin = u;
        }
    };

    // segment list: (-inf, bps0] if unbounded left, consecutive pairs, [bpsN, +inf)
    std::vector<std::pair<double, double>> segs;
    if (bps.empty()) {
        segs.emplace_back(u_lo, u_hi);
    } else {
        if (!std::isfinite(u_lo)) segs.emplace_back(-kInf, bps.front());
        for (std::size_t i = 0; i + 1 < bps.size(); ++i) segs.emplace_back(bps[i], bps[i + 1]);
        if (!std::isfinite(u_hi)) segs.emplace_back(bps.back(), kInf);
    }

    for (double b : bps) consider(b);

    for (const auto& [p, q] : segs) {
        double rep;
        if (!std::isfinite(p) && !std::isfinite(q)) rep = c;
        else if (!std::isfinite(p)) rep = q - 1.0;
        else if (!std::isfinite(q)) rep = p + 1.0;
        else rep = 0.5 * (p + q);
        double s = phi.slope_at(rep);
        const CostPiece& wp = w.piece_at(c - rep);
        if (wp.a > 0.0) {
            double u_star = c - (s - wp.b) / (2.0 * wp.a);
            double cand = std::min(std::max(u_star, p), q);
            if (std::isfinite(cand)) consider(cand);
        } else {
            double fprime = s - wp.slope(c - rep);
            if (fprime > 0.0) {
                if (!std::isfinite(p)) return PwlCostMin{-kInf, -kInf, true};
                consider(p);
            } else if (fprime < 0.0) {
                if (!std::isfinite(q)) return PwlCostMin{-kInf, kInf, true};
                consider(q);
            } else {
                consider(rep);
            }
        }
    }
    return best;
}

} // namespace taukit
