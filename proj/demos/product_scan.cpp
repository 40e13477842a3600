// Evaluates the two-sided product for a handful of named test functions over
// the standard measure/cost couples and prints one row per evaluation.
#include <cstdio>

#include "taukit/taukit.hpp"

using namespace taukit;

int main() {
    struct Couple {
        const char* id;
        Measure1D m;
        CostFunction w;
    };
    Couple couples[] = {
        {"exponential + base cost", measure_exponential(), cost_W()},
        {"two-sided exponential + doubled cost", measure_laplace(), cost_U()},
        {"gaussian + quarter-square", measure_gaussian(), cost_quadratic(0.25)},
    };
    struct Fn {
        const char* id;
        TestFn1 f;
    };
    Fn fns[] = {
        {"constant 3", testfn_constant(3.0)},
        {"hinge |x|", testfn_from_pwl(Pwl{{0.0}, {0.0}, -1.0, 1.0}, "pwl")},
        {"window [1/4,5/4]", testfn_indicator(0.25, 1.25)},
        {"ramp 0.2x", testfn_linear(0.2)},
    };

    std::printf("%-40s %-14s %12s %12s %12s  %s\n", "couple", "function", "I+", "I-", "product",
                "verdict");
    for (const Couple& c : couples) {
        GridSpec grid = default_tau_grid(c.m, 4097);
        for (const Fn& fn : fns) {
            if (fn.f.indicator && c.w.quad_coeff.has_value()) continue; // needs linear far pieces
            TauReport r = tau_eval_1d(c.m, c.w, fn.f, grid);
            std::printf("%-40s %-14s %12.6g %12.6g %12.9f  %s\n", c.id, fn.id, r.integral_pos,
                        r.integral_neg, r.product, to_string(r.verdict));
        }
    }
    return 0;
}
