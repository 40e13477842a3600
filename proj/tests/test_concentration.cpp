#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "taukit/taukit.hpp"

using namespace taukit;

TEST_CASE("cost inverses match the closed forms", "[concentration]") {
    CostFunction W = cost_W(), U = cost_U();
    CHECK(cost_inverse_pos(W, 0.1) == Catch::Approx(std::sqrt(1.8)).epsilon(1e-12));
    CHECK(cost_inverse_pos(W, 1.0) == Catch::Approx(5.5).epsilon(1e-12));
    CHECK(cost_inverse_pos(W, -3.0) == 0.0);

    CHECK(cost_U_inverse(0.25) == Catch::Approx(3.0).epsilon(1e-15));
    CHECK(cost_U_inverse(1.0) == Catch::Approx(6.5).epsilon(1e-15));
    CHECK(cost_U_inverse(4.0 / 9.0) == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(cost_U_inverse(0.0) == 0.0);
    for (double t : {0.05, 0.2, 4.0 / 9.0, 0.6, 1.0, 3.0})
        CHECK(cost_inverse_pos(U, t) == Catch::Approx(cost_U_inverse(t)).epsilon(1e-9));

    // roundtrip: w(w^{-1}(t)) = t on the increasing branch
    for (double t : {0.01, 0.3, 1.7})
        CHECK(W.eval(cost_inverse_pos(W, t)) == Catch::Approx(t).epsilon(1e-9));
}

TEST_CASE("unit diameter envelope", "[concentration]") {
    CHECK(unit_diameter_envelope(0.0) == 0.0);
    CHECK(unit_diameter_envelope(0.2) == Catch::Approx(0.16).epsilon(1e-15));
    CHECK(unit_diameter_envelope(0.5) == Catch::Approx(0.25).epsilon(1e-15));
    CHECK(unit_diameter_envelope(7.0) == 0.25);
    CHECK_THROWS_AS(unit_diameter_envelope(-0.1), TaukitError);
}

TEST_CASE("set families expose residuals, membership, and mass", "[concentration]") {
    SetFamily hs = SetFamily::make_halfspace(3, 1, 0.5);
    CHECK(hs.residual(1, 2.0) == Catch::Approx(1.5));
    CHECK(hs.residual(1, 0.2) == 0.0);
    CHECK(hs.residual(0, 99.0) == 0.0);
    std::vector<double> in{9.0, 0.5, -3.0}, out{0.0, 0.6, 0.0};
    CHECK(hs.contains(in));
    CHECK_FALSE(hs.contains(out));
    CHECK_THROWS_AS(SetFamily::make_halfspace(2, 5, 0.0), TaukitError);

    SetFamily box = SetFamily::make_box({0.0, 0.0}, {1.0, 2.0});
    CHECK(box.residual(0, -0.5) == Catch::Approx(-0.5));
    CHECK(box.residual(1, 3.0) == Catch::Approx(1.0));
    CHECK(box.residual(1, 1.5) == 0.0);
    std::vector<double> bin{0.5, 1.5}, bout{1.1, 0.0};
    CHECK(box.contains(bin));
    CHECK_FALSE(box.contains(bout));
    CHECK_THROWS_AS(SetFamily::make_box({0.0}, {1.0, 2.0}), TaukitError);
    CHECK_THROWS_AS(SetFamily::make_box({1.0}, {0.0}), TaukitError);

    ProductMeasure lap2 = product_power(measure_laplace(), 2);
    SetFamily half0 = SetFamily::make_halfspace(2, 0, 0.0);
    CHECK(half0.measure_under(lap2) == Catch::Approx(0.5).epsilon(1e-12));
    ProductMeasure uni2 = product_power(measure_uniform01(), 2);
    SetFamily quarter = SetFamily::make_box({0.25, 0.25}, {0.75, 0.75});
    CHECK(quarter.measure_under(uni2) == Catch::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("enlargement cost decomposes per axis", "[concentration]") {
    SeparableCost u2 = tensor_power(cost_U(), 2);
    SetFamily hs = SetFamily::make_halfspace(2, 0, 0.0);
    std::vector<double> x{5.0, 7.0};
    CHECK(enlargement_cost(hs, u2, x) == Catch::Approx(2.0 / 3.0).epsilon(1e-12));

    SeparableCost w2 = tensor_power(cost_W(), 2);
    SetFamily box = SetFamily::make_box({0.0, 0.0}, {1.0, 1.0});
    std::vector<double> y{-2.0, 0.5};
    CHECK(enlargement_cost(box, w2, y) == Catch::Approx(2.0 / 9.0).epsilon(1e-12));

    SeparableCost w3 = tensor_power(cost_W(), 3);
    CHECK_THROWS_AS(enlargement_cost(box, w3, x), TaukitError);
}

TEST_CASE("two-ball membership solves the optimal split", "[concentration]") {
    // single coordinate: member exactly up to r2 + r1
    std::vector<double> r{9.0};
    CHECK(two_ball_excess(r, 6.0, 3.0) == Catch::Approx(0.0).margin(1e-9));
    CHECK(two_ball_member(r, 6.0, 3.0));
    r[0] = 9.001;
    CHECK_FALSE(two_ball_member(r, 6.0, 3.0));

    std::vector<double> zero{0.0, 0.0, 0.0};
    CHECK(two_ball_excess(zero, 2.0, 1.0) == Catch::Approx(-2.0).margin(1e-12));

    // no l1 budget: pure l2 test
    std::vector<double> d{3.0, 4.0};
    CHECK(two_ball_excess(d, 5.0, 0.0) == Catch::Approx(0.0).margin(1e-9));

    // spread residual: clip level kappa = 0.5 leaves ||u||_2 = 1
    std::vector<double> s{1.0, 1.0, 1.0, 1.0};
    CHECK(two_ball_excess(s, 0.9, 2.0) == Catch::Approx(0.1).margin(1e-9));
    CHECK(two_ball_excess(s, 1.0, 2.0) == Catch::Approx(0.0).margin(1e-9));

    // excess is monotone in both radii
    std::vector<double> m{2.0, -1.0, 0.5};
    double base = two_ball_excess(m, 1.0, 1.0);
    CHECK(two_ball_excess(m, 1.5, 1.0) <= base);
    CHECK(two_ball_excess(m, 1.0, 1.5) <= base + 1e-12);
}

TEST_CASE("halfspace enlargement tail matches the closed form", "[concentration]") {
    ProductMeasure mu = product_power(measure_laplace(), 1);
    SeparableCost w = tensor_power(cost_U(), 1);
    SetFamily A = SetFamily::make_halfspace(1, 0, 0.0);
    TailReport r = enlargement_tail_experiment(mu, w, A, 1.0, 20000, RngKey{201, 0}, 1);
    CHECK(r.set_mass == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(r.bound == Catch::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(r.exact == Catch::Approx(0.5 * std::exp(-6.5)).epsilon(1e-12));
    CHECK(r.verdict == Verdict::pass);
    double band = 4.0 * std::max(r.se, std::sqrt(r.exact / 20000.0));
    CHECK(std::abs(r.p_hat - r.exact) <= band + 1e-12);

    // zero-mass base sets and tiny sample budgets are rejected
    ProductMeasure uni = product_power(measure_uniform01(), 1);
    SeparableCost w1 = tensor_power(cost_W(), 1);
    SetFamily empty = SetFamily::make_halfspace(1, 0, -1.0);
    CHECK_THROWS_AS(enlargement_tail_experiment(uni, w1, empty, 1.0, 20000, RngKey{1, 0}, 1),
                    TaukitError);
    CHECK_THROWS_AS(enlargement_tail_experiment(mu, w, A, 1.0, 5000, RngKey{1, 0}, 1),
                    TaukitError);
}

TEST_CASE("enlargement tail estimates are thread-count invariant", "[concentration]") {
    ProductMeasure mu = product_power(measure_laplace(), 2);
    SeparableCost w = tensor_power(cost_U(), 2);
    SetFamily A = SetFamily::make_box({-1.0, -1.0}, {1.0, 1.0});
    TailReport a = enlargement_tail_experiment(mu, w, A, 0.3, 30000, RngKey{202, 0}, 1);
    TailReport b = enlargement_tail_experiment(mu, w, A, 0.3, 30000, RngKey{202, 0}, 6);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.se == b.se);
    CHECK(a.verdict == b.verdict);
}

TEST_CASE("two-ball tail has the exact halfspace form", "[concentration]") {
    SetFamily A1 = SetFamily::make_halfspace(1, 0, 0.0);
    TailReport r1 = two_ball_tail_experiment(A1, 1.0, 20000, RngKey{203, 0}, 1);
    // survival of the two-sided exponential at 6 sqrt(t) + 9t = 15
    CHECK(r1.exact == Catch::Approx(1.529511602509129e-07).epsilon(1e-12));
    CHECK(r1.verdict == Verdict::pass);

    SetFamily A3 = SetFamily::make_halfspace(3, 0, 0.5);
    TailReport r3 = two_ball_tail_experiment(A3, 0.25, 20000, RngKey{203, 1}, 1);
    CHECK(r3.exact == Catch::Approx(0.5 * std::exp(-5.75)).epsilon(1e-12));
    CHECK(r3.verdict == Verdict::pass);

    // for halfspaces the violation event is exactly the axis tail, so the
    // estimate must sit inside the binomial band around the closed form
    SetFamily A2 = SetFamily::make_halfspace(2, 0, 0.0);
    TailReport rm = two_ball_tail_experiment(A2, 0.04, 40000, RngKey{203, 2}, 1);
    double band = 4.0 * std::max(rm.se, std::sqrt(rm.exact * (1.0 - rm.exact) / 40000.0));
    CHECK(std::abs(rm.p_hat - rm.exact) <= band);

    SetFamily box = SetFamily::make_box({-1.0, -1.0}, {1.0, 1.0});
    TailReport rb = two_ball_tail_experiment(box, 0.1, 20000, RngKey{203, 3}, 1);
    CHECK(rb.verdict == Verdict::pass);
    CHECK(rb.p_hat >= 0.0);
    CHECK(rb.p_hat <= 1.0);
}

TEST_CASE("sublevel sets of the doubled cost sit inside the two-ball sum", "[concentration]") {
    for (int dim : {1, 2, 5}) {
        for (double t : {0.5, 2.0}) {
            InclusionReport r = sublevel_inclusion_check(dim, t, 20000, RngKey{204, 0}, 1);
            INFO("dim " << dim << " t " << t << " worst " << r.worst_excess);
            CHECK(r.violations == 0);
            CHECK(r.verdict == Verdict::pass);
            CHECK(r.worst_excess <= 1e-9 * (1.0 + 6.0 * std::sqrt(t)));
        }
    }
    CHECK_THROWS_AS(sublevel_inclusion_check(2, 0.0, 20000, RngKey{1, 0}, 1), TaukitError);
}

TEST_CASE("convex hull distance via pairwise frank-wolfe", "[concentration]") {
    std::vector<std::vector<double>> square{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}};
    std::vector<double> inside{0.3, -0.2};
    HullDistance hin = convex_hull_distance(inside, square);
    CHECK(hin.dist < 1e-4);

    std::vector<std::vector<double>> seg{{0.0, 0.0}, {1.0, 0.0}};
    std::vector<double> above{0.5, 1.0};
    HullDistance hseg = convex_hull_distance(above, seg);
    CHECK(hseg.dist == Catch::Approx(1.0).epsilon(1e-9));

    std::vector<double> corner{2.0, 2.0};
    HullDistance hc = convex_hull_distance(corner, square);
    CHECK(hc.dist == Catch::Approx(std::sqrt(2.0)).epsilon(1e-9));

    CHECK_THROWS_AS(convex_hull_distance(corner, {}), TaukitError);
    std::vector<std::vector<double>> bad{{0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(convex_hull_distance(corner, bad), TaukitError);
}

TEST_CASE("hull distance agrees with the box closed form", "[concentration]") {
    // vertices of [0,1]^4; the distance to the hull is the distance to the box
    std::vector<std::vector<double>> verts;
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<double> v(4);
        for (int c = 0; c < 4; ++c) v[static_cast<std::size_t>(c)] = (mask >> c) & 1 ? 1.0 : 0.0;
        verts.push_back(std::move(v));
    }
    RngKey key{205, 0};
    for (int i = 0; i < 20; ++i) {
        std::vector<double> x(4);
        double closed = 0.0;
        for (int c = 0; c < 4; ++c) {
            double xi = -1.0 + 3.0 * uniform_open01(key, static_cast<std::uint64_t>(i),
                                                    static_cast<std::uint64_t>(c));
            x[static_cast<std::size_t>(c)] = xi;
            double res = xi < 0.0 ? -xi : (xi > 1.0 ? xi - 1.0 : 0.0);
            closed += res * res;
        }
        HullDistance h = convex_hull_distance(x, verts);
        double d2 = h.dist * h.dist;
        INFO("case " << i << " d2 " << d2 << " closed " << closed << " gap " << h.gap);
        CHECK(d2 >= closed - 1e-12);
        CHECK(d2 - closed <= h.gap + 1e-9);
    }
}

TEST_CASE("hull distance is 1-lipschitz in the query point", "[concentration]") {
    std::vector<std::vector<double>> square{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}};
    RngKey key{206, 0};
    for (int i = 0; i < 10; ++i) {
        std::vector<double> x(2), y(2);
        for (int c = 0; c < 2; ++c) {
            x[static_cast<std::size_t>(c)] = -4.0 + 8.0 * uniform_open01(key, static_cast<std::uint64_t>(i),
                                                                         static_cast<std::uint64_t>(c));
            y[static_cast<std::size_t>(c)] = -4.0 + 8.0 * uniform_open01(key, static_cast<std::uint64_t>(i),
                                                                         static_cast<std::uint64_t>(2 + c));
        }
        double dx = convex_hull_distance(x, square).dist;
        double dy = convex_hull_distance(y, square).dist;
        double sep = std::hypot(x[0] - y[0], x[1] - y[1]);
        CHECK(std::abs(dx - dy) <= sep + 1e-4);
    }
}

TEST_CASE("face moments of the coin product", "[concentration]") {
    DiscreteProduct coins{{discrete_bernoulli_half(), discrete_bernoulli_half()}};
    HullBoundReport one = face_moment_exact(coins, {{0, 1.0}});
    double factor = 0.5 * (1.0 + std::exp(0.25));
    CHECK(one.lhs == Catch::Approx(1.1420127083438707).epsilon(1e-12));
    CHECK(one.lhs == Catch::Approx(factor).epsilon(1e-12));
    CHECK(one.set_mass == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(one.bound == Catch::Approx(2.0).epsilon(1e-15));
    CHECK(one.verdict == Verdict::pass);

    HullBoundReport two = face_moment_exact(coins, {{0, 1.0}, {1, 0.0}});
    CHECK(two.lhs == Catch::Approx(factor * factor).epsilon(1e-12));
    CHECK(two.bound == Catch::Approx(4.0).epsilon(1e-15));
    CHECK(two.verdict == Verdict::pass);

    // pinning to a non-atom empties the face: bound vacuous
    HullBoundReport none = face_moment_exact(coins, {{0, 0.5}});
    CHECK(none.set_mass == 0.0);
    CHECK(none.verdict == Verdict::vacuous_pass);
    CHECK(std::isinf(none.bound));

    CHECK_THROWS_AS(face_moment_exact(coins, {{7, 1.0}}), TaukitError);
}

TEST_CASE("box moments under the uniform product", "[concentration]") {
    ProductMeasure uni = product_power(measure_uniform01(), 2);
    SetFamily A = SetFamily::make_box({0.0, 0.0}, {0.5, 0.5});
    HullBoundReport r = box_moment_mc(uni, A, 40000, RngKey{207, 0}, 1);
    CHECK(r.set_mass == Catch::Approx(0.25).epsilon(1e-12));
    CHECK(r.bound == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(r.verdict == Verdict::pass);
    // closed form: per-axis integral of e^{residual^2/4}, squared
    double axis = adaptive_simpson([](double x) {
        double res = x > 0.5 ? x - 0.5 : 0.0;
        return std::exp(0.25 * res * res);
    }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(r.lhs - axis * axis) <= r.lhs_budget + 1e-3);

    // degenerate box has zero mass: vacuous
    SetFamily point = SetFamily::make_box({0.25, 0.25}, {0.25, 0.25});
    HullBoundReport v = box_moment_mc(uni, point, 20000, RngKey{207, 1}, 1);
    CHECK(v.verdict == Verdict::vacuous_pass);

    SetFamily hs = SetFamily::make_halfspace(2, 0, 0.5);
    CHECK_THROWS_AS(box_moment_mc(uni, hs, 20000, RngKey{1, 0}, 1), TaukitError);
    CHECK_THROWS_AS(box_moment_mc(uni, A, 5000, RngKey{1, 0}, 1), TaukitError);

    HullBoundReport t1 = box_moment_mc(uni, A, 30000, RngKey{207, 2}, 1);
    HullBoundReport t5 = box_moment_mc(uni, A, 30000, RngKey{207, 2}, 5);
    CHECK(t1.lhs == t5.lhs);
    CHECK(t1.lhs_budget == t5.lhs_budget);
}

TEST_CASE("difference mgf of 1-lipschitz functions", "[concentration]") {
    TestFnND axis = nd_linear_axis(3, 1, 1.0);
    MgfReport zero = lipschitz_mgf_experiment(axis, 0.0, 20000, RngKey{208, 0}, 1);
    CHECK(zero.mgf_hat == 1.0);
    CHECK(zero.se == 0.0);
    CHECK(zero.bound == 1.0);
    CHECK(zero.verdict == Verdict::pass);

    // the linear case is the equality case of the gaussian mgf bound
    MgfReport lin = lipschitz_mgf_experiment(axis, 1.5, 100000, RngKey{208, 1}, 1);
    CHECK(lin.verdict == Verdict::pass);
    CHECK(std::abs(lin.mgf_hat - lin.bound) <= 4.0 * lin.se);

    MgfReport nrm = lipschitz_mgf_experiment(nd_norm2(4), -2.0, 50000, RngKey{208, 2}, 1);
    CHECK(nrm.verdict == Verdict::pass);
    CHECK(nrm.mgf_hat <= nrm.bound + 3.0 * nrm.se);

    CHECK_THROWS_AS(lipschitz_mgf_experiment(nd_linear_axis(3, 0, 2.0), 1.0, 20000,
                                             RngKey{1, 0}, 1),
                    TaukitError);
    CHECK_THROWS_AS(lipschitz_mgf_experiment(axis, 1.0, 5000, RngKey{1, 0}, 1), TaukitError);
}

TEST_CASE("difference variance against the gradient second moment", "[concentration]") {
    VarianceReport lin = gradient_variance_experiment(nd_linear_axis(4, 2, 1.0), 30000,
                                                      RngKey{209, 0}, 1);
    CHECK(std::abs(lin.lhs_hat - 1.0) <= 4.0 * lin.lhs_se);
    CHECK(std::abs(lin.rhs_hat - 1.0) <= 4.0 * lin.rhs_se + 1e-9);
    CHECK(lin.verdict == Verdict::pass);

    VarianceReport nrm = gradient_variance_experiment(nd_norm2(4), 30000, RngKey{209, 1}, 1);
    CHECK(nrm.verdict == Verdict::pass);
    CHECK(nrm.lhs_hat <= nrm.rhs_hat +
                             3.0 * std::sqrt(nrm.lhs_se * nrm.lhs_se + nrm.rhs_se * nrm.rhs_se));

    VarianceReport cap = gradient_variance_experiment(nd_capped_norm1(4, 0.5, 1.0), 30000,
                                                      RngKey{209, 2}, 1);
    CHECK(cap.verdict == Verdict::pass);

    CHECK_THROWS_AS(gradient_variance_experiment(nd_norm2(2), 5000, RngKey{1, 0}, 1),
                    TaukitError);
}
