#include "mps/dissipation.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace mps {

namespace {

const double kE = std::exp(1.0);

double log_e_plus(double tau) { return std::log(kE + tau); }

}  // namespace

std::vector<GChoice> g_registry() {
    std::vector<GChoice> out;
    out.push_back({"g1", [](double t) { return std::pow(log_e_plus(t), 0.25); }});
    out.push_back({"g2", [](double t) {
                       return std::pow(log_e_plus(t), 0.25) *
                              std::pow(std::log(kE + log_e_plus(t)), 0.5);
                   }});
    out.push_back({"g3", [](double t) {
                       return std::pow(
                           log_e_plus(t) * std::log(kE + log_e_plus(t)), 0.25);
                   }});
    out.push_back({"gbad", [](double t) { return log_e_plus(t); }});
    return out;
}

GChoice g_constant_one() {
    return {"one", [](double) { return 1.0; }};
}

GChoice g_by_label(const std::string& label) {
    if (label == "one") return g_constant_one();
    for (auto& g : g_registry())
        if (g.label == label) return g;
    throw std::invalid_argument("unknown g label: " + label +
                                " (known: g1, g2, g3, gbad, one)");
}

RadialSymbol DissipationSpec::symbol() const {
    switch (kind) {
        case Kind::None:
            return {[](double) { return 0.0; }, "none"};
        case Kind::Fractional: {
            if (exponent == 0.0) return {[](double) { return 0.0; }, "none"};
            double p = 2.0 * exponent;
            return {[p](double r) { return r > 0.0 ? std::pow(r, p) : 0.0; },
                    "freq^" + std::to_string(p)};
        }
        case Kind::Logarithmic:
            return l_squared_symbol(exponent, *g);
    }
    throw std::logic_error("unreachable");
}

DissipationSpec DissipationSpec::none() { return {}; }

DissipationSpec DissipationSpec::fractional(double rho) {
    if (rho < 0.0)
        throw std::invalid_argument("DissipationSpec: negative exponent");
    return {Kind::Fractional, rho, std::nullopt};
}

DissipationSpec DissipationSpec::logarithmic(double alpha, GChoice g) {
    if (alpha <= 0.0)
        throw std::invalid_argument("DissipationSpec: log kind needs alpha > 0");
    return {Kind::Logarithmic, alpha, std::move(g)};
}

RadialSymbol l_operator_symbol(double alpha, const GChoice& g) {
    if (alpha <= 0.0) throw std::invalid_argument("l_operator_symbol: alpha <= 0");
    auto ev = g.eval;
    return {[alpha, ev](double r) {
                return r > 0.0 ? std::pow(r, alpha) / ev(r) : 0.0;
            },
            "weakened^" + std::to_string(alpha) + "/" + g.label};
}

RadialSymbol l_squared_symbol(double alpha, const GChoice& g) {
    if (alpha <= 0.0) throw std::invalid_argument("l_squared_symbol: alpha <= 0");
    auto ev = g.eval;
    return {[alpha, ev](double r) {
                if (r <= 0.0) return 0.0;
                double gg = ev(r);
                return std::pow(r, 2.0 * alpha) / (gg * gg);
            },
            "weakened2^" + std::to_string(alpha) + "/" + g.label};
}

double g_condition_partial_integral(const GChoice& g, GCondition cond, double T) {
    if (T < kE)
        throw std::invalid_argument("g_condition_partial_integral: T < e");
    if (T == kE) return 0.0;
    // Substitute s = ln(tau): both integrands become smooth and slowly
    // varying on [1, ln T], where adaptive Gauss-Kronrod converges fast.
    auto ge = g.eval;
    std::function<double(double)> integrand;
    if (cond == GCondition::LogSqrt) {
        integrand = [ge](double s) {
            double gg = ge(std::exp(s));
            return 1.0 / (std::sqrt(s) * gg * gg);
        };
    } else {
        integrand = [ge](double s) {
            double gg = ge(std::exp(s));
            return 1.0 / (gg * gg * gg * gg);
        };
    }
    double err = 0.0;
    double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, 1.0, std::log(T), 12, 1e-9, &err);
    return val;
}

}  // namespace mps
