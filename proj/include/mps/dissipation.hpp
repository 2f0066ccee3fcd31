#pragma once
// Dissipation symbols: plain fractional |k|^{2 rho} and the logarithmically
// weakened variant |k|^{2 alpha} / g(|k|)^2 for a non-decreasing radial
// weight g >= 1, plus numerical probes of the integral conditions that decide
// which weights are admissible.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mps/operators.hpp"

namespace mps {

struct GChoice {
    std::string label;
    std::function<double(double)> eval;  // tau >= 0 -> value >= 1, non-decreasing

    double operator()(double tau) const { return eval(tau); }
};

// Shipped weights. g1, g2 come from the slowly-varying family admissible for
// the sqrt-log condition; g3 from the quartic-log family; g_bad = ln(e+tau)
// is the deliberately failing control.
std::vector<GChoice> g_registry();
GChoice g_by_label(const std::string& label);  // also accepts "one" (g == 1)
GChoice g_constant_one();

struct DissipationSpec {
    enum class Kind { None, Fractional, Logarithmic };
    Kind kind = Kind::None;
    double exponent = 0.0;          // rho for Fractional, alpha for Logarithmic
    std::optional<GChoice> g;       // required for Logarithmic

    // Multiplier for the operator as it appears in the equations: |k|^{2 rho},
    // |k|^{2 alpha}/g^2, or 0. Fractional(0) deliberately collapses to None.
    RadialSymbol symbol() const;

    static DissipationSpec none();
    static DissipationSpec fractional(double rho);
    static DissipationSpec logarithmic(double alpha, GChoice g);
};

// Symbol of the weakened half-order operator itself, |k|^alpha / g(|k|), and
// of its square. Both return 0 at k = 0.
RadialSymbol l_operator_symbol(double alpha, const GChoice& g);
RadialSymbol l_squared_symbol(double alpha, const GChoice& g);

enum class GCondition {
    LogSqrt,     // integral of dtau / (tau sqrt(ln tau) g^2(tau))
    QuarticLog,  // integral of dtau / (tau g^4(tau))
};

// Partial integral from e to T, computed by adaptive Gauss-Kronrod on the
// log-substituted integrand (s = ln tau), relative error <= 1e-8. Divergence
// cannot be certified numerically; callers compare growth against closed-form
// asymptotics instead.
double g_condition_partial_integral(const GChoice& g, GCondition cond, double T);

}  // namespace mps
