#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "taukit/measures.hpp"
#include "taukit/quadrature.hpp"
#include "taukit/special.hpp"

using namespace taukit;

TEST_CASE("base law values", "[measures]") {
    Measure1D e = measure_exponential();
    REQUIRE(e.cdf(0.0) == 0.0);
    REQUIRE(e.cdf(std::log(2.0)) == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(e.density(1.0) == Catch::Approx(std::exp(-1.0)));

    Measure1D l = measure_laplace();
    REQUIRE(l.density(0.0) == Catch::Approx(0.5));
    REQUIRE(l.cdf(0.0) == Catch::Approx(0.5));
    REQUIRE(l.density(2.0) == Catch::Approx(0.5 * std::exp(-2.0)));

    Measure1D g = measure_gaussian();
    REQUIRE(g.cdf(0.0) == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(g.density(0.0) == Catch::Approx(1.0 / kSqrt2Pi));
    REQUIRE(g.quantile(g.cdf(1.0)) == Catch::Approx(1.0).margin(1e-10));

    Measure1D u = measure_uniform01();
    REQUIRE(u.cdf(0.25) == Catch::Approx(0.25));
    REQUIRE(u.density(2.0) == 0.0);

    Measure1D b = measure_bernoulli_half();
    REQUIRE(b.cdf(0.5) == Catch::Approx(0.5));
    REQUIRE(b.quantile(0.3) == 0.0);
    REQUIRE(b.quantile(0.9) == 1.0);

    DiscreteMeasure coin = discrete_bernoulli_half();
    coin.validate();
    REQUIRE(coin.atoms == std::vector<double>{0.0, 1.0});
    REQUIRE(coin.weights == std::vector<double>{0.5, 0.5});
}

TEST_CASE("mass and quantile invariants", "[measures]") {
    for (const Measure1D& m :
         {measure_exponential(), measure_laplace(), measure_gaussian(), measure_uniform01()}) {
        INFO(m.name);
        REQUIRE(mass_defect(m) < 1e-10);
        REQUIRE(quantile_roundtrip_defect(m) < 1e-10);
    }
    REQUIRE_THROWS_AS(mass_defect(measure_bernoulli_half()), TaukitError);
}

TEST_CASE("samplers pass ks at fixed seeds", "[measures]") {
    for (const Measure1D& m :
         {measure_exponential(), measure_laplace(), measure_gaussian(), measure_uniform01()}) {
        INFO(m.name);
        std::vector<double> xs = draw_samples(m, 4000, RngKey{3, 1}, 2);
        std::sort(xs.begin(), xs.end());
        REQUIRE(ks_statistic(xs, m.cdf) < ks_critical(1e-4, 4000));
    }
}

TEST_CASE("sampling is deterministic across thread counts", "[measures]") {
    Measure1D g = measure_gaussian();
    std::vector<double> a = draw_samples(g, 20000, RngKey{8, 2}, 1);
    std::vector<double> b = draw_samples(g, 20000, RngKey{8, 2}, 8);
    REQUIRE(a == b);
}

TEST_CASE("reflection flips the law", "[measures]") {
    Measure1D r = reflected(measure_exponential());
    REQUIRE(r.support_hi == 0.0);
    REQUIRE(r.cdf(-1.0) == Catch::Approx(std::exp(-1.0)));
    REQUIRE(r.density(-2.0) == Catch::Approx(std::exp(-2.0)));
    REQUIRE(r.quantile(0.5) == Catch::Approx(-std::log(2.0)));
    std::vector<double> xs = draw_samples(r, 2000, RngKey{3, 2}, 1);
    for (double x : xs) REQUIRE(x <= 0.0);
}

TEST_CASE("convolution of opposite exponentials is the two-sided law", "[measures]") {
    Measure1D num = convolve(measure_exponential(), reflected(measure_exponential()));
    Measure1D lap = measure_laplace();
    REQUIRE(num.density(0.0) == Catch::Approx(0.5).margin(5e-4));
    for (double x : {-3.0, -1.0, 0.5, 2.0})
        REQUIRE(num.cdf(x) == Catch::Approx(lap.cdf(x)).margin(5e-4));
    // its sampler is exact even though the density is numeric
    std::vector<double> xs = draw_samples(num, 4000, RngKey{3, 3}, 1);
    std::sort(xs.begin(), xs.end());
    REQUIRE(ks_statistic(xs, lap.cdf) < ks_critical(1e-4, 4000));

    Measure1D gg = convolve(measure_gaussian(), measure_gaussian());
    REQUIRE(gg.density(0.0) == Catch::Approx(1.0 / (2.0 * std::sqrt(3.141592653589793))).margin(1e-8));
}

TEST_CASE("product measures sample coordinates in factor order", "[measures]") {
    ProductMeasure p = product_power(measure_uniform01(), 3);
    REQUIRE(p.dim() == 3);
    std::vector<double> x(3), y(3);
    p.sample_into(RngKey{5, 5}, 17, x);
    p.sample_into(RngKey{5, 5}, 17, y);
    REQUIRE(x == y);
    // coordinate c uses slot c*kSlotsPerCoord of the same item
    REQUIRE(x[0] == uniform_open01(RngKey{5, 5}, 17, 0));
    REQUIRE(x[1] == uniform_open01(RngKey{5, 5}, 17, kSlotsPerCoord));
}

TEST_CASE("discrete products enumerate every atom exactly once", "[measures]") {
    DiscreteProduct p{{discrete_bernoulli_half(), discrete_bernoulli_half(), discrete_bernoulli_half()}};
    REQUIRE(p.atom_count() == 8);
    double total = 0.0;
    int count = 0;
    p.enumerate([&](std::span<const double> pt, double w) {
        total += w;
        ++count;
        REQUIRE(pt.size() == 3);
        for (double c : pt) REQUIRE((c == 0.0 || c == 1.0));
    });
    REQUIRE(count == 8);
    REQUIRE(total == Catch::Approx(1.0).margin(1e-15));

    DiscreteMeasure bad{{0.0, 1.0}, {0.4, 0.4}};
    REQUIRE_THROWS_AS(bad.validate(), TaukitError);
}

TEST_CASE("pushforward certificates catch violations", "[measures]") {
    ProductMeasure base = product_power(measure_gaussian(), 2);
    SeparableCost q = tensor_power(cost_quadratic(0.25), 2);
    auto identity = [](std::span<const double> in, std::span<double> out) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i];
    };
    REQUIRE_NOTHROW(certify_pushforward(base, identity, q, q, 2000, RngKey{6, 1}));

    // doubling the output violates any self-certificate
    auto doubling = [](std::span<const double> in, std::span<double> out) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = 2.0 * in[i];
    };
    REQUIRE_THROWS_AS(certify_pushforward(base, doubling, q, q, 2000, RngKey{6, 2}),
                      CertificateViolation);
}

TEST_CASE("closed-form tail moments", "[measures]") {
    // against adaptive quadrature on a generous window
    struct TC {
        Measure1D m;
        double s, edge;
    };
    for (const TC& tc : {TC{measure_gaussian(), 1.0, 1.0}, TC{measure_exponential(), 0.3, 2.0},
                         TC{measure_laplace(), -0.4, -1.0}, TC{measure_uniform01(), 3.0, 0.5}}) {
        INFO(tc.m.name);
        for (bool upper : {true, false}) {
            double closed = exp_moment_tail(tc.m, tc.s, tc.edge, upper);
            double a = upper ? tc.edge : std::max(tc.m.support_lo, tc.edge - 50.0);
            double b = upper ? std::min(tc.m.support_hi, tc.edge + 50.0) : tc.edge;
            double num = a < b ? adaptive_simpson([&](double x) { return std::exp(tc.s * x) * tc.m.density(x); },
                                                  a, b, 1e-13)
                               : 0.0;
            REQUIRE(closed == Catch::Approx(num).epsilon(1e-9).margin(1e-12));
        }
    }
    // divergent cases report +inf
    REQUIRE(exp_moment_tail(measure_exponential(), 1.5, 0.0, true) == kInf);
    REQUIRE(exp_moment_tail(measure_laplace(), 1.0, 0.0, true) == kInf);
    REQUIRE_THROWS_AS(exp_moment_tail(measure_bernoulli_half(), 1.0, 0.5, true), TaukitError);
}
