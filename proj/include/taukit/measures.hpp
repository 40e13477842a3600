#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "taukit/common.hpp"
#include "taukit/costs.hpp"
#include "taukit/parallel.hpp"
#include "taukit/quadrature.hpp"
#include "taukit/rng.hpp"
#include "taukit/special.hpp"

namespace taukit {

// One-dimensional measure with closed-form cdf/quantile where available.
// sample(key, item, slot) is a pure function (see rng.hpp); a draw may use
// slots [slot, slot + kSlotsPerCoord).
struct Measure1D {
    std::string name;
    double support_lo = -kInf;
    double support_hi = kInf;
    std::function<double(double)> density; // null for purely atomic laws
    std::function<double(double)> cdf;
    std::function<double(double)> sf; // survival 1-cdf, direct form so deep upper tails keep relative precision
    std::function<double(double)> quantile;
    std::function<double(RngKey, std::uint64_t, std::uint64_t)> sample;
    std::vector<double> kinks; // density non-smooth points, for quadrature splits
};

inline Measure1D measure_exponential() {
    Measure1D m;
    m.name = "exponential";
    m.support_lo = 0.0;
    m.density = [](double x) { return x < 0.0 ? 0.0 : std::exp(-x); };
    m.cdf = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
    m.sf = [](double x) { return x <= 0.0 ? 1.0 : std::exp(-x); };
    m.quantile = [](double p) { return -std::log1p(-p); };
    m.sample = [q = m.quantile](RngKey k, std::uint64_t i, std::uint64_t s) {
        return q(uniform_open01(k, i, s));
    };
    m.kinks = {0.0};
    return m;
}

// Two-sided exponential: density exp(-|x|)/2. This is the law of X - Y for
// independent X, Y ~ exponential, which convolve() reproduces numerically.
inline Measure1D measure_laplace() {
    Measure1D m;
    m.name = "laplace";
    m.density = [](double x) { return 0.5 * std::exp(-std::abs(x)); };
    m.cdf = [](double x) { return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x); };
    m.sf = [](double x) { return x < 0.0 ? 1.0 - 0.5 * std::exp(x) : 0.5 * std::exp(-x); };
    m.quantile = [](double p) { return p < 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p)); };
    m.sample = [q = m.quantile](RngKey k, std::uint64_t i, std::uint64_t s) {
        return q(uniform_open01(k, i, s));
    };
    m.kinks = {0.0};
    return m;
}

inline Measure1D measure_gaussian() {
    Measure1D m;
    m.name = "gaussian";
    m.density = [](double x) { return normal_pdf(x); };
    m.cdf = [](double x) { return normal_cdf(x); };
    m.sf = [](double x) { return normal_cdf(-x); };
    m.quantile = [](double p) { return normal_quantile(p); };
    // inverse-cdf sampling keeps the draw a pure function of its counter
    m.sample = [](RngKey k, std::uint64_t i, std::uint64_t s) {
        return normal_quantile(uniform_open01(k, i, s));
    };
    return m;
}

inline Measure1D measure_uniform01() {
    Measure1D m;
    m.name = "uniform01";
    m.support_lo = 0.0;
    m.support_hi = 1.0;
    m.density = [](double x) { return (x < 0.0 || x > 1.0) ? 0.0 : 1.0; };
    m.cdf = [](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); };
    m.sf = [](double x) { return x <= 0.0 ? 1.0 : (x >= 1.0 ? 0.0 : 1.0 - x); };
    m.quantile = [](double p) { return p; };
    m.sample = [](RngKey k, std::uint64_t i, std::uint64_t s) { return uniform_open01(k, i, s); };
    return m;
}

// Fair coin on {0,1}, viewed through the same interface (no density).
inline Measure1D measure_bernoulli_half() {
    Measure1D m;
    m.name = "bernoulli-half";
    m.support_lo = 0.0;
    m.support_hi = 1.0;
    m.cdf = [](double x) { return x < 0.0 ? 0.0 : (x < 1.0 ? 0.5 : 1.0); };
    m.sf = [](double x) { return x < 0.0 ? 1.0 : (x < 1.0 ? 0.5 : 0.0); };
    m.quantile = [](double p) { return p <= 0.5 ? 0.0 : 1.0; };
    m.sample = [](RngKey k, std::uint64_t i, std::uint64_t s) {
        return uniform_open01(k, i, s) <= 0.5 ? 0.0 : 1.0;
    };
    return m;
}

inline Measure1D reflected(const Measure1D& src) {
    Measure1D m;
    m.name = "reflected(" + src.name + ")";
    m.support_lo = -src.support_hi;
    m.support_hi = -src.support_lo;
    if (src.density) m.density = [d = src.density](double x) { return d(-x); };
    m.cdf = [s = src.sf](double x) { return s(-x); }; // continuous laws only
    m.sf = [c = src.cdf](double x) { return c(-x); };
    m.quantile = [q = src.quantile](double p) { return -q(1.0 - p); };
    m.sample = [s = src.sample](RngKey k, std::uint64_t i, std::uint64_t slot) {
        return -s(k, i, slot);
    };
    for (double kk : src.kinks) m.kinks.push_back(-kk);
    std::sort(m.kinks.begin(), m.kinks.end());
    return m;
}

// Law of X + Y for independent X ~ a, Y ~ b. The sampler is exact; density
// and cdf come from trapezoid quadrature on a fixed [-40, 40] lattice and are
// good to ~1e-4, fine for plots and coarse checks but not for tight budgets.
inline Measure1D convolve(const Measure1D& a, const Measure1D& b) {
    if (!a.density || !b.density) throw TaukitError("convolve: need densities");
    constexpr int kN = 4001;
    constexpr double kLo = -40.0, kHi = 40.0;
    auto dens_grid = std::make_shared<std::vector<double>>(kN);
    auto cdf_grid = std::make_shared<std::vector<double>>(kN);
    const double h = (kHi - kLo) / (kN - 1);
    for (int i = 0; i < kN; ++i) {
        double x = kLo + i * h;
        // the integrand a(t) b(x - t) vanishes outside [a.lo, a.hi] and [x - b.hi, x - b.lo];
        // clipping to that window keeps support jumps out of the quadrature
        double lo_t = std::max({a.support_lo, x - b.support_hi, kLo});
        double hi_t = std::min({a.support_hi, x - b.support_lo, kHi});
        (*dens_grid)[static_cast<std::size_t>(i)] =
            lo_t < hi_t ? adaptive_simpson(
                              [&](double t) { return a.density(t) * b.density(x - t); },
                              lo_t, hi_t, 1e-9)
                        : 0.0;
    }
    double acc = 0.0;
    for (int i = 0; i < kN; ++i) {
        if (i > 0)
            acc += 0.5 * ((*dens_grid)[static_cast<std::size_t>(i - 1)] + (*dens_grid)[static_cast<std::size_t>(i)]) * h;
        (*cdf_grid)[static_cast<std::size_t>(i)] = acc;
    }

    Measure1D m;
    m.name = "convolve(" + a.name + "," + b.name + ")";
    m.support_lo = a.support_lo + b.support_lo;
    m.support_hi = a.support_hi + b.support_hi;
    m.density = [dens_grid](double x) {
        if (x <= kLo || x >= kHi) return 0.0;
        double f = (x - kLo) / ((kHi - kLo) / (kN - 1));
        int i = static_cast<int>(f);
        double t = f - i;
        return (1.0 - t) * (*dens_grid)[static_cast<std::size_t>(i)] + t * (*dens_grid)[static_cast<std::size_t>(i + 1)];
    };
    m.cdf = [cdf_grid](double x) {
        if (x <= kLo) return 0.0;
        if (x >= kHi) return 1.0;
        double f = (x - kLo) / ((kHi - kLo) / (kN - 1));
        int i = static_cast<int>(f);
        double t = f - i;
        return (1.0 - t) * (*cdf_grid)[static_cast<std::size_t>(i)] + t * (*cdf_grid)[static_cast<std::size_t>(i + 1)];
    };
    m.sf = [cdf = m.cdf](double x) { return 1.0 - cdf(x); };
    m.quantile = [cdf = m.cdf](double p) {
        double lo = kLo, hi = kHi;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
            double mid = 0.5 * (lo + hi);
            (cdf(mid) < p ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    m.sample = [sa = a.sample, sb = b.sample](RngKey k, std::uint64_t i, std::uint64_t slot) {
        return sa(k, i, slot) + sb(k, i, slot + kSlotsPerCoord / 2);
    };
    return m;
}

// ---- products --------------------------------------------------------------

struct ProductMeasure {
    std::vector<Measure1D> factors;

    int dim() const { return static_cast<int>(factors.size()); }
    // coordinates are drawn in factor order at per-coordinate slots
    void sample_into(RngKey key, std::uint64_t item, std::span<double> out) const {
        for (std::size_t c = 0; c < factors.size(); ++c)
            out[c] = factors[c].sample(key, item, c * kSlotsPerCoord);
    }
};

inline ProductMeasure product_power(const Measure1D& m, int n) {
    if (n < 1) throw TaukitError("product_power: need n >= 1");
    return ProductMeasure{std::vector<Measure1D>(static_cast<std::size_t>(n), m)};
}

// ---- discrete measures ------------------------------------------------------

struct DiscreteMeasure {
    std::vector<double> atoms;
    std::vector<double> weights;

    void validate() const {
        if (atoms.size() != weights.size() || atoms.empty())
            throw TaukitError("DiscreteMeasure: bad atom/weight vectors");
        double s = 0.0;
        for (double w : weights) {
            if (!(w > 0.0)) throw TaukitError("DiscreteMeasure: weights must be positive");
            s += w;
        }
        if (std::abs(s - 1.0) > 1e-12) throw TaukitError("DiscreteMeasure: weights must sum to 1");
    }
};

inline DiscreteMeasure discrete_bernoulli_half() { return DiscreteMeasure{{0.0, 1.0}, {0.5, 0.5}}; }

struct DiscreteProduct {
    std::vector<DiscreteMeasure> axes;

    int dim() const { return static_cast<int>(axes.size()); }
    std::uint64_t atom_count() const {
        std::uint64_t n = 1;
        for (const auto& a : axes) {
            n *= a.atoms.size();
            if (n > (1ull << 20)) throw TaukitError("DiscreteProduct: atom count exceeds 2^20");
        }
        return n;
    }
    // fn(point, weight) over the full atom lattice
    template <class Fn>
    void enumerate(Fn&& fn) const {
        std::uint64_t total = atom_count();
        const int n = dim();
        std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
        std::vector<double> pt(static_cast<std::size_t>(n));
        for (std::uint64_t it = 0; it < total; ++it) {
            double wgt = 1.0;
            for (int i = 0; i < n; ++i) {
                pt[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)].atoms[idx[static_cast<std::size_t>(i)]];
                wgt *= axes[static_cast<std::size_t>(i)].weights[idx[static_cast<std::size_t>(i)]];
            }
            fn(std::span<const double>(pt), wgt);
            int a = 0;
            while (a < n && ++idx[static_cast<std::size_t>(a)] == axes[static_cast<std::size_t>(a)].atoms.size()) {
                idx[static_cast<std::size_t>(a)] = 0;
                ++a;
            }
        }
    }
};

// ---- pushforward ------------------------------------------------------------

struct CertificateViolation : TaukitError {
    std::vector<double> x, y;
    CertificateViolation(std::string msg, std::vector<double> xx, std::vector<double> yy)
        : TaukitError(std::move(msg)), x(std::move(xx)), y(std::move(yy)) {}
};

struct PushforwardMeasure {
    ProductMeasure base;
    std::function<void(std::span<const double>, std::span<double>)> map;

    int dim() const { return base.dim(); }
    void sample_into(RngKey key, std::uint64_t item, std::span<double> out) const {
        std::vector<double> tmp(static_cast<std::size_t>(base.dim()));
        base.sample_into(key, item, tmp);
        map(tmp, out);
    }
};

// Spot-check of the contraction certificate w_image(F(x)-F(y)) <= w_domain(x-y)
// on sampled pairs; aborts with the witnessing pair on the first violation.
inline void certify_pushforward(const ProductMeasure& base,
                                const std::function<void(std::span<const double>, std::span<double>)>& map,
                                const SeparableCost& w_domain, const SeparableCost& w_image,
                                std::uint64_t pairs, RngKey key) {
    const int n = base.dim();
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    std::vector<double> fx(static_cast<std::size_t>(n)), fy(static_cast<std::size_t>(n));
    std::vector<double> dxy(static_cast<std::size_t>(n)), dfxy(static_cast<std::size_t>(n));
    for (std::uint64_t p = 0; p < pairs; ++p) {
        base.sample_into(key, 2 * p, x);
        base.sample_into(key, 2 * p + 1, y);
        map(x, fx);
        map(y, fy);
        for (int i = 0; i < n; ++i) {
            dxy[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)];
            dfxy[static_cast<std::size_t>(i)] = fx[static_cast<std::size_t>(i)] - fy[static_cast<std::size_t>(i)];
        }
        double lhs = w_image.eval(dfxy);
        double rhs = w_domain.eval(dxy);
        if (lhs > rhs * (1.0 + 1e-12) + 1e-15)
            throw CertificateViolation("pushforward certificate violated", x, y);
    }
}

// ---- exponential moments over tails ------------------------------------------

namespace detail {
// integral of e^{s*x} dx over [a, b]
inline double exp_segment(double s, double a, double b) {
    if (b <= a) return 0.0;
    if (s == 0.0) return b - a;
    return (std::exp(s * b) - std::exp(s * a)) / s;
}
// integral of e^{(s-r)*x} dx over [a, b] with r the density rate, as expm1 form
inline double exp_rate_segment(double c, double a, double b) {
    if (b <= a) return 0.0;
    if (c == 0.0) return b - a;
    return (std::expm1(c * b) - std::expm1(c * a)) / c;
}
} // namespace detail

// Closed-form integral of e^{s*x} dmu over the tail {x > edge} (upper) or
// {x < edge} (lower). Returns +inf when the integral diverges. Supports the
// named base laws; anything else throws, so a caller cannot silently get a
// wrong tail bound.
inline double exp_moment_tail(const Measure1D& m, double s, double edge, bool upper) {
    if (m.name == "gaussian") {
        // e^{s x - x^2/2} completes the square to e^{s^2/2} * pdf(x - s)
        double shift = std::exp(0.5 * s * s);
        return upper ? shift * normal_cdf(s - edge) : shift * normal_cdf(edge - s);
    }
    if (m.name == "exponential") {
        double a = s - 1.0;
        if (upper) {
            double lo = std::max(edge, 0.0);
            return a < 0.0 ? std::exp(a * lo) / (-a) : kInf;
        }
        if (edge <= 0.0) return 0.0;
        return detail::exp_rate_segment(a, 0.0, edge);
    }
    if (m.name == "laplace") {
        double up = s - 1.0, dn = s + 1.0; // rates right/left of the origin
        if (upper) {
            if (edge >= 0.0) return up < 0.0 ? 0.5 * std::exp(up * edge) / (-up) : kInf;
            double right = up < 0.0 ? 0.5 / (-up) : kInf;
            return 0.5 * detail::exp_rate_segment(dn, edge, 0.0) + right;
        }
        if (edge <= 0.0) return dn > 0.0 ? 0.5 * std::exp(dn * edge) / dn : kInf;
        double left = dn > 0.0 ? 0.5 / dn : kInf;
        return left + 0.5 * detail::exp_rate_segment(up, 0.0, edge);
    }
    if (m.name == "uniform01") {
        return upper ? detail::exp_segment(s, std::max(edge, 0.0), 1.0)
                     : detail::exp_segment(s, 0.0, std::min(edge, 1.0));
    }
    throw TaukitError("exp_moment_tail: no closed form for measure " + m.name);
}

// ---- diagnostics -----------------------------------------------------------

inline std::vector<double> draw_samples(const Measure1D& m, std::uint64_t n, RngKey key, int threads) {
    std::vector<double> out(static_cast<std::size_t>(n));
    std::uint64_t blocks = (n + kDefaultBlock - 1) / kDefaultBlock;
    parallel_for_blocks(blocks, threads, [&](std::uint64_t b) {
        std::uint64_t lo = b * kDefaultBlock, hi = std::min(n, lo + kDefaultBlock);
        for (std::uint64_t i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = m.sample(key, i, 0);
    });
    return out;
}

// |integral of density - 1| via adaptive quadrature split at density kinks;
// the integration window keeps all but ~2e-13 of the mass.
inline double mass_defect(const Measure1D& m) {
    if (!m.density) throw TaukitError("mass_defect: measure has no density");
    double lo = std::isfinite(m.support_lo) ? m.support_lo : m.quantile(1e-13);
    double hi = std::isfinite(m.support_hi) ? m.support_hi : m.quantile(1.0 - 1e-13);
    std::vector<double> cuts{lo};
    for (double k : m.kinks)
        if (k > lo && k < hi) cuts.push_back(k);
    cuts.push_back(hi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += adaptive_simpson(m.density, cuts[i], cuts[i + 1], 1e-13);
    double tail = m.cdf(lo) + (1.0 - m.cdf(hi));
    return std::abs(total + tail - 1.0);
}

inline double quantile_roundtrip_defect(const Measure1D& m, int probes = 999) {
    double worst = 0.0;
    for (int i = 1; i <= probes; ++i) {
        double p = static_cast<double>(i) / (probes + 1);
        worst = std::max(worst, std::abs(m.cdf(m.quantile(p)) - p));
    }
    return worst;
}

} // namespace taukit
