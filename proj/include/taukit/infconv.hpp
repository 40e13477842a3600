#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "taukit/common.hpp"
#include "taukit/costs.hpp"
#include "taukit/grid.hpp"
#include "taukit/pwl.hpp"

namespace taukit {

// out(x) = min_y { f(x-y) + g(y) } on f's grid. argmin[i] is the index of the
// winning candidate in the minimized variable; boundary_hits counts outputs
// whose argmin sat at the first or last explorable index (the search could not
// see past the grid there).
struct InfconvResult {
    GridFunction out;
    std::vector<int> argmin;
    int boundary_hits = 0;
};

// O(Nf * Ng) reference. g's grid must sit on the same lattice as f's
// (g.lo an integer multiple of the step), so x - y lands exactly on f's grid;
// no interpolation anywhere.
inline InfconvResult infconv_bruteforce(const GridFunction& f, const GridFunction& g) {
    const double h = f.grid.step();
    if (std::abs(g.grid.step() - h) > 1e-9 * h) throw TaukitError("infconv: step mismatch");
    double raw = g.grid.lo / h;
    long long s = static_cast<long long>(std::llround(raw));
    if (std::abs(raw - static_cast<double>(s)) > 1e-6) throw TaukitError("infconv: g grid off the lattice");

    const int nf = f.size(), ng = g.size();
    InfconvResult r;
    r.out.grid = f.grid;
    r.out.v.assign(static_cast<std::size_t>(nf), kInf);
    r.argmin.assign(static_cast<std::size_t>(nf), -1);
    for (int i = 0; i < nf; ++i) {
        double best = kInf;
        int bm = -1;
        for (int m = 0; m < ng; ++m) {
            long long k = static_cast<long long>(i) - m - s;
            if (k < 0 || k >= nf) continue;
            double cand = f.v[static_cast<std::size_t>(k)] + g.v[static_cast<std::size_t>(m)];
            if (cand < best) {
                best = cand;
                bm = m;
            }
        }
        r.out.v[static_cast<std::size_t>(i)] = best;
        r.argmin[static_cast<std::size_t>(i)] = bm;
        if (bm == 0 || bm == ng - 1) ++r.boundary_hits;
    }
    return r;
}

// Symmetric lattice of all index differences of f's grid, so that a cost
// sampled on it feeds both the brute-force and the fast paths with literally
// the same numbers.
inline GridSpec difference_lattice(const GridSpec& fgrid) {
    const double h = fgrid.step();
    const int n = fgrid.n;
    return GridSpec{-static_cast<double>(n - 1) * h, static_cast<double>(n - 1) * h, 2 * n - 1};
}

inline GridFunction sample_cost_difference_lattice(const CostFunction& g, const GridSpec& fgrid) {
    GridSpec d = difference_lattice(fgrid);
    return sample_on_grid(d, [&](double t) { return g.eval(t); });
}

namespace detail {

// Lower envelope of parabolas f[j] + C*(i-j)^2 in index space (C > 0).
// Returns per-row argmin; +inf entries are skipped.
inline std::vector<int> parabola_envelope_argmin(const std::vector<double>& f, double C) {
    const int n = static_cast<int>(f.size());
    std::vector<int> v;      // stack of parabola indices
    std::vector<double> z;   // v[k] wins on [z[k], z[k+1])
    v.reserve(static_cast<std::size_t>(n));
    z.reserve(static_cast<std::size_t>(n) + 1);
    auto isect = [&](int j, int k) {
        double jj = static_cast<double>(j), kk = static_cast<double>(k);
        return ((f[static_cast<std::size_t>(j)] + C * jj * jj) -
                (f[static_cast<std::size_t>(k)] + C * kk * kk)) /
               (2.0 * C * (jj - kk));
    };
    std::vector<int> arg(static_cast<std::size_t>(n), -1);
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(f[static_cast<std::size_t>(j)])) continue;
        if (v.empty()) {
            v.push_back(j);
            z.assign({-kInf, kInf});
            continue;
        }
        double s = isect(j, v.back());
        while (!v.empty() && s <= z[v.size() - 1]) {
            v.pop_back();
            z.pop_back();
            if (!v.empty()) s = isect(j, v.back());
        }
        if (v.empty()) {
            v.push_back(j);
            z.assign({-kInf, kInf});
        } else {
            v.push_back(j);
            z.back() = s;
            z.push_back(kInf);
        }
    }
    if (v.empty()) return arg; // all +inf
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
        while (k + 1 < v.size() && z[k + 1] < static_cast<double>(i)) ++k;
        arg[static_cast<std::size_t>(i)] = v[k];
    }
    return arg;
}

// Divide-and-conquer row minima for V(i,j) = f[j] + gs[i-j+off]; valid because
// a convex kernel makes V totally monotone (leftmost argmins nondecreasing).
inline void dc_row_minima(const std::vector<double>& f, const std::vector<double>& gs, int off,
                          int row_lo, int row_hi, int col_lo, int col_hi, std::vector<int>& arg) {
    if (row_lo > row_hi) return;
    int mid = row_lo + (row_hi - row_lo) / 2;
    double best = kInf;
    int bj = col_lo;
    for (int j = col_lo; j <= col_hi; ++j) {
        double fj = f[static_cast<std::size_t>(j)];
        if (!std::isfinite(fj)) continue;
        double cand = fj + gs[static_cast<std::size_t>(mid - j + off)];
        if (cand < best) {
            best = cand;
            bj = j;
        }
    }
    arg[static_cast<std::size_t>(mid)] = best == kInf ? -1 : bj;
    int split = best == kInf ? col_hi : bj; // no information when the row is all +inf
    dc_row_minima(f, gs, off, row_lo, mid - 1, col_lo, best == kInf ? col_hi : bj, arg);
    dc_row_minima(f, gs, off, mid + 1, row_hi, best == kInf ? col_lo : split, col_hi, arg);
}

} // namespace detail

// Fast path for convex costs: O(N) when g is exactly quadratic, O(N log N)
// otherwise. The cost is first sampled on the difference lattice and the
// output value is always f[j*] + gs[i-j*], the same expression the brute
// force evaluates, so agreement is limited only by argmin ties.
inline InfconvResult infconv_fast_convex(const GridFunction& f, const CostFunction& g) {
    const int n = f.size();
    const double h = f.grid.step();
    GridFunction gs = sample_cost_difference_lattice(g, f.grid);
    const int off = n - 1;

    for (int m = 1; m + 1 < gs.size(); ++m) {
        double mid2 = 2.0 * gs.v[static_cast<std::size_t>(m)];
        double ends = gs.v[static_cast<std::size_t>(m - 1)] + gs.v[static_cast<std::size_t>(m + 1)];
        double scale = std::abs(gs.v[static_cast<std::size_t>(m)]) + std::abs(ends) + 1.0;
        if (ends < mid2 - 1e-12 * scale)
            throw TaukitError("infconv_fast_convex: cost is not convex on the sampled lattice");
    }

    std::vector<int> arg;
    if (g.quad_coeff) {
        arg = detail::parabola_envelope_argmin(f.v, *g.quad_coeff * h * h);
    } else {
        arg.assign(static_cast<std::size_t>(n), -1);
        detail::dc_row_minima(f.v, gs.v, off, 0, n - 1, 0, n - 1, arg);
    }

    InfconvResult r;
    r.out.grid = f.grid;
    r.out.v.assign(static_cast<std::size_t>(n), kInf);
    r.argmin = std::move(arg);
    for (int i = 0; i < n; ++i) {
        int j = r.argmin[static_cast<std::size_t>(i)];
        if (j < 0) continue;
        r.out.v[static_cast<std::size_t>(i)] =
            f.v[static_cast<std::size_t>(j)] + gs.v[static_cast<std::size_t>(i - j + off)];
        if (j == 0 || j == n - 1) ++r.boundary_hits;
    }
    return r;
}

// Grid inf-convolution of two closed-form costs.
inline InfconvResult infconv_costs(const CostFunction& w1, const CostFunction& w2, const GridSpec& grid) {
    GridFunction f = sample_on_grid(grid, [&](double t) { return w1.eval(t); });
    return infconv_fast_convex(f, w2);
}

// ---- pointwise n-D minimization ------------------------------------------

// Search window per axis, in offsets d around the evaluation point:
// u_i = x_i + d, d on a uniform grid over [lo, hi].
struct AxisSearch {
    double lo = -24.0;
    double hi = 24.0;
    int n = 97;
};

struct PointwiseResult {
    double value = kInf;
    bool boundary = false;
};

// min over u of phi(u) + w(x-u), searching u_i in x_i + [search.lo, search.hi].
// n <= 3 scans the full product lattice; larger n runs coordinate descent
// (5 sweeps of per-axis scans). Under-resolution only inflates the result,
// never deflates it; boundary reports an argmin pinned to the window edge.
inline PointwiseResult infconv_pointwise(const std::function<double(std::span<const double>)>& phi,
                                         const SeparableCost& w, std::span<const double> x,
                                         const std::vector<AxisSearch>& search, bool strict = false) {
    const int n = w.dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(search.size()) != n)
        throw TaukitError("infconv_pointwise: dimension mismatch");
    if (n > 16) throw TaukitError("infconv_pointwise: dimension cap is 16");

    std::vector<double> u(static_cast<std::size_t>(n));
    std::vector<double> diff(static_cast<std::size_t>(n));
    auto objective = [&]() {
        for (int i = 0; i < n; ++i) diff[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)];
        double c = w.eval(diff);
        if (!std::isfinite(c)) return kInf;
        double p = phi(u);
        return p + c;
    };

    PointwiseResult res;
    std::vector<int> best_idx(static_cast<std::size_t>(n), 0);

    if (n <= 3) {
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        for (;;) {
            for (int i = 0; i < n; ++i) {
                const auto& s = search[static_cast<std::size_t>(i)];
                double step = (s.hi - s.lo) / static_cast<double>(s.n - 1);
                u[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + s.lo + step * idx[static_cast<std::size_t>(i)];
            }
            double val = objective();
            if (val < res.value) {
                res.value = val;
                best_idx = idx;
            }
            int a = 0;
            while (a < n && ++idx[static_cast<std::size_t>(a)] == search[static_cast<std::size_t>(a)].n) {
                idx[static_cast<std::size_t>(a)] = 0;
                ++a;
            }
            if (a == n) break;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const auto& s = search[static_cast<std::size_t>(i)];
            int mid = (s.n - 1) / 2;
            best_idx[static_cast<std::size_t>(i)] = mid;
            double step = (s.hi - s.lo) / static_cast<double>(s.n - 1);
            u[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + s.lo + step * mid;
        }
        res.value = objective();
        for (int sweep = 0; sweep < 5; ++sweep) {
            bool moved = false;
            for (int i = 0; i < n; ++i) {
                const auto& s = search[static_cast<std::size_t>(i)];
                double step = (s.hi - s.lo) / static_cast<double>(s.n - 1);
                double saved_u = u[static_cast<std::size_t>(i)];
                int saved = best_idx[static_cast<std::size_t>(i)];
                int arg = saved;
                double best = res.value;
                for (int k = 0; k < s.n; ++k) {
                    if (k == saved) continue;
                    u[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + s.lo + step * k;
                    double val = objective();
                    if (val < best) {
                        best = val;
                        arg = k;
                    }
                }
                if (arg != saved) {
                    best_idx[static_cast<std::size_t>(i)] = arg;
                    u[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + s.lo + step * arg;
                    res.value = best;
                    moved = true;
                } else {
                    u[static_cast<std::size_t>(i)] = saved_u;
                }
            }
            if (!moved) break;
        }
    }

    for (int i = 0; i < n; ++i) {
        int k = best_idx[static_cast<std::size_t>(i)];
        if (k == 0 || k == search[static_cast<std::size_t>(i)].n - 1) res.boundary = true;
    }
    if (strict && res.boundary) throw TaukitError("infconv_pointwise: minimizer pinned to the search boundary");
    return res;
}

// Exact value of min_u { sum_i phi_i(u_i) + w_i(x_i - u_i) } for separable
// piecewise-linear test functions; throws if any axis is unbounded below.
inline double infconv_separable_exact(const std::vector<Pwl>& comps, const SeparableCost& w,
                                      std::span<const double> x) {
    if (static_cast<int>(comps.size()) != w.dim()) throw TaukitError("infconv_separable_exact: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        PwlCostMin m = pwl_cost_min(comps[i], w.axes[i], x[i]);
        if (m.unbounded) throw TaukitError("infconv_separable_exact: composite unbounded below");
        s += m.value;
    }
    return s;
}

} // namespace taukit
