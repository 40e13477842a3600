#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "taukit/taukit.hpp"

using namespace taukit;

namespace {

struct Couple {
    Measure1D m;
    CostFunction w;
};

std::vector<Couple> certified_couples() {
    return {
        {measure_exponential(), cost_W()},
        {measure_laplace(), cost_U()},
        {measure_gaussian(), cost_quadratic(0.25)},
    };
}

}  // namespace

TEST_CASE("constant test functions saturate the product bound", "[tau]") {
    for (const Couple& c : certified_couples()) {
        GridSpec grid = default_tau_grid(c.m, 4097);
        for (double v : {-4.0, 0.0, 0.3, 11.0}) {
            TauReport r = tau_eval_1d(c.m, c.w, testfn_constant(v), grid);
            INFO(c.m.name << " const " << v);
            CHECK(r.verdict == Verdict::pass);
            CHECK(std::abs(r.product - 1.0) <= r.error_budget + 1e-12);
            // integrals carry the constant offset even though the product cancels it
            CHECK(r.integral_pos == Catch::Approx(std::exp(v)).epsilon(1e-9));
            CHECK(r.integral_neg == Catch::Approx(std::exp(-v)).epsilon(1e-9));
        }
    }
}

TEST_CASE("gaussian linear functions give the closed-form integrals", "[tau]") {
    Measure1D g = measure_gaussian();
    CostFunction w = cost_quadratic(0.25);
    GridSpec grid{-12.0, 12.0, 32769};
    for (double lam : {0.5, -0.5, 1.0, -1.0, 2.0}) {
        TauReport r = tau_eval_1d(g, w, testfn_linear(lam), grid);
        INFO("lambda " << lam);
        // (lam x) box (x^2/4) = lam x - lam^2, so both integrals hit
        // exp(-lam^2) * exp(lam^2/2) and exp(lam^2/2) exactly.
        CHECK(r.verdict == Verdict::pass);
        CHECK(r.integral_pos ==
              Catch::Approx(std::exp(-lam * lam / 2.0)).epsilon(1e-6));
        CHECK(r.integral_neg ==
              Catch::Approx(std::exp(lam * lam / 2.0)).epsilon(1e-6));
        CHECK(std::abs(r.product - 1.0) <= r.error_budget + 1e-9);
    }
}

TEST_CASE("product is invariant under shifting the test function", "[tau]") {
    Measure1D m = measure_laplace();
    CostFunction w = cost_U();
    GridSpec grid = default_tau_grid(m, 4097);
    RngKey key{77, 0};
    for (int i = 0; i < 6; ++i) {
        TestFn1 f = random_pwl(key, static_cast<std::uint64_t>(i), grid.lo, grid.hi, 6.0);
        TauReport base = tau_eval_1d(m, w, f, grid);
        for (double c : {-9.0, 3.5}) {
            Pwl shifted = *f.pwl;
            for (double& y : shifted.ys) y += c;
            TauReport r = tau_eval_1d(m, w, testfn_from_pwl(std::move(shifted), f.family), grid);
            CHECK(r.product == Catch::Approx(base.product).epsilon(1e-11));
            // integrals rescale by exp(+-c)
            CHECK(r.integral_pos ==
                  Catch::Approx(base.integral_pos * std::exp(c)).epsilon(1e-10));
            CHECK(r.integral_neg ==
                  Catch::Approx(base.integral_neg * std::exp(-c)).epsilon(1e-10));
            CHECK(r.verdict == base.verdict);
        }
    }
}

TEST_CASE("random piecewise-linear functions pass on certified couples", "[tau]") {
    RngKey key{5, 0};
    for (const Couple& c : certified_couples()) {
        GridSpec grid = default_tau_grid(c.m, 4097);
        for (int i = 0; i < 10; ++i) {
            TestFn1 f = random_pwl(key, static_cast<std::uint64_t>(i), grid.lo, grid.hi, 8.0);
            TauReport r = tau_eval_1d(c.m, c.w, f, grid);
            INFO(c.m.name << " case " << i << " product " << r.product);
            CHECK(r.verdict == Verdict::pass);
            CHECK(r.product <= 1.0 + r.error_budget);
        }
    }
}

TEST_CASE("over-tight quadratic cost on the gaussian fails", "[tau]") {
    Measure1D g = measure_gaussian();
    CostFunction w = cost_quadratic(1.0);
    GridSpec grid{-12.0, 12.0, 16385};
    TauReport r = tau_eval_1d(g, w, testfn_linear(2.0), grid);
    CHECK(r.verdict == Verdict::fail);
    // closed form: exp(lam^2/4) * exp(lam^2/2) = exp(3) at lam = 2
    double e3 = 20.085536923187668;
    CHECK(r.product == Catch::Approx(e3).epsilon(1e-4));
}

TEST_CASE("indicator functions evaluate against certified couples", "[tau]") {
    Measure1D m = measure_laplace();
    CostFunction w = cost_U();
    GridSpec grid = default_tau_grid(m, 8193);
    TauReport r = tau_eval_1d(m, w, testfn_indicator(-1.0, 1.0), grid);
    CHECK(r.verdict == Verdict::pass);
    // integral_neg is the interval mass up to the two straddling cells
    double mass = m.cdf(1.0) - m.cdf(-1.0);
    CHECK(std::abs(r.integral_neg - mass) <= 0.01);
    CHECK(r.product <= 1.0 + r.error_budget);

    // indicators need linear far pieces in the cost to keep the tail finite
    CHECK_THROWS_AS(
        tau_eval_1d(measure_gaussian(), cost_quadratic(0.25), testfn_indicator(-1.0, 1.0),
                    GridSpec{-10.0, 10.0, 2049}),
        TaukitError);
}

TEST_CASE("grid validation rejects knots outside the window", "[tau]") {
    Measure1D m = measure_gaussian();
    CostFunction w = cost_quadratic(0.25);
    Pwl p;
    p.xs = {-30.0, 0.0};
    p.ys = {1.0, 2.0};
    p.lo_slope = 0.0;
    p.hi_slope = 0.0;
    CHECK_THROWS_AS(tau_eval_1d(m, w, testfn_from_pwl(std::move(p), "pwl"),
                                GridSpec{-10.0, 10.0, 1025}),
                    TaukitError);
    // a grid that misses the quantile span is rejected outright
    CHECK_THROWS_AS(tau_eval_1d(m, w, testfn_constant(0.0), GridSpec{-2.0, 2.0, 129}),
                    TaukitError);
}

TEST_CASE("convex variant gates the test function but not the arithmetic", "[tau]") {
    Measure1D g = measure_gaussian();
    CostFunction w = cost_quadratic(0.25);
    GridSpec base = default_tau_grid(g, 4097);
    RngKey key{9, 0};
    TestFn1 cvx = random_convex_pwl(key, 1, base.lo, base.hi);
    // envelope knots sit at affine intersections, which may leave [lo, hi]
    GridSpec grid{std::min(base.lo, cvx.pwl->xs.front() - 0.5),
                  std::max(base.hi, cvx.pwl->xs.back() + 0.5), 4097};
    TauReport plain = tau_eval_1d(g, w, cvx, grid, TauVariant::plain);
    TauReport strict = tau_eval_1d(g, w, cvx, grid, TauVariant::convex);
    CHECK(plain.product == strict.product);
    CHECK(plain.integral_pos == strict.integral_pos);
    CHECK(plain.error_budget == strict.error_budget);

    Pwl vee;  // concave tent is not convex
    vee.xs = {-1.0, 0.0, 1.0};
    vee.ys = {0.0, 1.0, 0.0};
    vee.lo_slope = 0.0;
    vee.hi_slope = 0.0;
    CHECK_THROWS_AS(tau_eval_1d(g, w, testfn_from_pwl(std::move(vee), "tent"), grid,
                                TauVariant::convex),
                    TaukitError);
}

TEST_CASE("unbounded-below functions are rejected", "[tau]") {
    Measure1D g = measure_gaussian();
    CostFunction w = cost_W();
    Pwl drop;
    drop.xs = {0.0};
    drop.ys = {0.0};
    drop.lo_slope = 1.0;  // heads to -inf as x -> -inf faster than W can pay
    drop.hi_slope = 0.0;
    CHECK_THROWS_AS(tau_eval_1d(g, w, testfn_from_pwl(std::move(drop), "pwl"),
                                GridSpec{-8.0, 8.0, 1025}),
                    TaukitError);
}

TEST_CASE("monte carlo evaluator agrees with quadrature in one dimension", "[tau]") {
    ProductMeasure mu = product_power(measure_laplace(), 1);
    SeparableCost w = tensor_power(cost_U(), 1);
    GridSpec grid = default_tau_grid(measure_laplace(), 4097);
    RngKey gen{21, 0};
    TestFn1 f1 = random_pwl(gen, 4, grid.lo, grid.hi, 4.0);
    TestFnND fn = nd_separable({*f1.pwl});

    TauReport q = tau_eval_1d(measure_laplace(), cost_U(), f1, grid);
    TauReport mc = tau_eval_nd_mc(mu, w, fn, 200000, RngKey{21, 1}, 1);
    CHECK(mc.verdict == Verdict::pass);
    // mc.error_budget is 3 standard errors of the product; allow 4.5
    CHECK(std::abs(mc.product - q.product) <= 1.5 * mc.error_budget + q.error_budget + 1e-6);
}

TEST_CASE("monte carlo evaluator is thread-count invariant", "[tau]") {
    ProductMeasure mu = product_power(measure_laplace(), 3);
    SeparableCost w = tensor_power(cost_U(), 3);
    RngKey gen{22, 0};
    std::vector<Pwl> comps;
    for (int i = 0; i < 3; ++i)
        comps.push_back(*random_pwl(gen, static_cast<std::uint64_t>(i), -8.0, 8.0, 1.5).pwl);
    TestFnND fn = nd_separable(comps);
    TauReport a = tau_eval_nd_mc(mu, w, fn, 40000, RngKey{22, 1}, 1);
    TauReport b = tau_eval_nd_mc(mu, w, fn, 40000, RngKey{22, 1}, 7);
    CHECK(a.integral_pos == b.integral_pos);
    CHECK(a.integral_neg == b.integral_neg);
    CHECK(a.product == b.product);
    CHECK(a.se_pos == b.se_pos);
    CHECK(a.verdict == b.verdict);
}

TEST_CASE("monte carlo evaluator rejects tiny sample budgets", "[tau]") {
    ProductMeasure mu = product_power(measure_gaussian(), 2);
    SeparableCost w = tensor_power(cost_quadratic(0.25), 2);
    TestFnND fn = nd_linear_axis(2, 0, 1.0);
    CHECK_THROWS_AS(tau_eval_nd_mc(mu, w, fn, 5000, RngKey{1, 0}, 1), TaukitError);
}

TEST_CASE("gaussian linear axis saturates under monte carlo", "[tau]") {
    ProductMeasure mu = product_power(measure_gaussian(), 4);
    SeparableCost w = tensor_power(cost_quadratic(0.25), 4);
    TestFnND fn = nd_linear_axis(4, 2, 1.0);
    TauReport r = tau_eval_nd_mc(mu, w, fn, 200000, RngKey{23, 0}, 1);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(r.product - 1.0) <= r.error_budget);
}

TEST_CASE("discrete evaluator matches the coin closed forms", "[tau]") {
    DiscreteProduct coin{{discrete_bernoulli_half()}};
    SeparableCost w = tensorize({cost_quadratic(0.5)});
    struct Case {
        double c;
        double product;
    };
    // product(c) = (1 + exp(c - c^2/2)) (1 + exp(-c)) / 4 for c in [0, 1],
    // with the inner minimiser clamped to the hull for c = 1.
    for (const Case& tc : {Case{0.25, 0.9981385313284611}, Case{0.5, 0.9860047442288575},
                           Case{1.0, 0.905782842896051}}) {
        TauReport r = tau_eval_discrete(coin, w, {pwl_linear(tc.c)}, TauVariant::convex);
        INFO("c = " << tc.c);
        CHECK(r.verdict == Verdict::pass);
        CHECK(r.product == Catch::Approx(tc.product).epsilon(1e-12));
        CHECK(r.error_budget <= 1e-9);
    }
}

TEST_CASE("discrete evaluator saturates on constants and rejects bad input", "[tau]") {
    DiscreteProduct coins{{discrete_bernoulli_half(), discrete_bernoulli_half(),
                           discrete_bernoulli_half()}};
    SeparableCost w = tensor_power(cost_quadratic(0.5), 3);
    TauReport r = tau_eval_discrete(coins, w, {pwl_constant(2.0), pwl_constant(-1.0),
                                               pwl_constant(0.0)},
                                    TauVariant::convex);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(r.product - 1.0) <= 1e-12);

    // dimension mismatch between axes and components
    CHECK_THROWS_AS(tau_eval_discrete(coins, w, {pwl_constant(0.0)}, TauVariant::convex),
                    TaukitError);

    // non-convex component under the convex variant
    Pwl tent;
    tent.xs = {-1.0, 0.0, 1.0};
    tent.ys = {0.0, 1.0, 0.0};
    tent.lo_slope = 0.0;
    tent.hi_slope = 0.0;
    CHECK_THROWS_AS(tau_eval_discrete(coins, w, {tent, pwl_constant(0.0), pwl_constant(0.0)},
                                      TauVariant::convex),
                    TaukitError);
}

TEST_CASE("midpoint product check certifies quadratic pairs", "[tau]") {
    GridSpec grid{-10.0, 10.0, 2001};
    GridFunction f = sample_on_grid(grid, [](double x) { return 0.5 * (x - 0.5) * (x - 0.5); });
    GridFunction g = sample_on_grid(grid, [](double x) { return 0.5 * (x + 0.5) * (x + 0.5); });
    MidpointProductReport r = midpoint_product_check(f, g, 1e-9);
    CHECK(r.pass);
    // the shifted pair is the equality case, up to quadrature error
    CHECK(std::abs(r.margin) <= 1e-3 * (1.0 + r.rhs));

    GridSpec other{-10.0, 10.0, 1001};
    GridFunction h = sample_on_grid(other, [](double x) { return x * x; });
    CHECK_THROWS_AS(midpoint_product_check(f, h, 1e-9), TaukitError);
}

TEST_CASE("default tau grid covers the quantile span", "[tau]") {
    for (const Couple& c : certified_couples()) {
        GridSpec grid = default_tau_grid(c.m, 4097);
        CHECK(grid.n == 4097);
        CHECK(grid.lo <= c.m.quantile(1e-10));
        CHECK(grid.hi >= c.m.quantile(1.0 - 1e-10));
        CHECK(grid.lo >= c.m.support_lo - 1e-9);
        CHECK(grid.hi <= c.m.support_hi + 1e-9);
    }
}
