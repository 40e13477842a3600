#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace taukit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Extended-real convention used throughout: values live in (-inf, +inf];
// +inf marks "outside the domain". IEEE addition already propagates it
// (finite + inf = inf) and -inf never occurs by construction, so no
// special arithmetic wrapper is needed, only this documented contract.

enum class Verdict { pass, fail, inconclusive, vacuous_pass };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::vacuous_pass: return "vacuous-pass";
    }
    return "?";
}

struct TaukitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace taukit
