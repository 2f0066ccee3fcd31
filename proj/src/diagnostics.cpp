#include "mps/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mps/norms.hpp"
#include "mps/operators.hpp"

namespace mps {

namespace {

// sum_k m(|k|) |coef(k)|^2, serial in storage order.
double weighted_energy(const SpectralVectorField& f, const RadialSymbol& m) {
    double acc = 0.0;
    const Grid& g = f.grid;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto k = g.wavevector(idx);
        double r = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1] +
                             double(k[2]) * k[2]);
        double weight = m(r);
        if (weight == 0.0) continue;
        double e = 0.0;
        for (const auto& c : f.comp) e += std::norm(c.c[idx]);
        acc += weight * e;
    }
    return acc;
}

// f.grad g as a sum of padded products f_j * d_j g.
SpectralScalarField advective_product(const SpectralVectorField& f,
                                      const SpectralScalarField& g, int pad) {
    SpectralVectorField dg = gradient(g);
    SpectralScalarField acc = dealiased_product(f.comp[0], dg.comp[0], pad, 1);
    for (int j = 1; j < f.ncomp(); ++j) {
        SpectralScalarField term =
            dealiased_product(f.comp[j], dg.comp[j], pad, 1);
        for (std::size_t i = 0; i < acc.c.size(); ++i) acc.c[i] += term.c[i];
    }
    return acc;
}

}  // namespace

EnergyTerms ledger_terms(const State& state, const ModelSpec& spec) {
    EnergyTerms e;
    double l2u = l2_norm(state.u);
    double l2w = l2_norm(state.w);
    e.kinetic = 0.5 * l2u * l2u;
    e.micro = 0.5 * l2w * l2w;
    e.dissipation_u = (spec.params.nu + spec.params.kappa) *
                      weighted_energy(state.u, spec.u_dissipation().symbol());
    e.dissipation_w =
        spec.params.gamma *
        weighted_energy(state.w, spec.w_dissipation().symbol());
    e.damping = spec.damping_coef() * l2w * l2w;
    if (spec.has_graddiv()) {
        double dv = l2_norm(divergence(state.w));
        e.graddiv = spec.params.mu * dv * dv;
    }
    double c = spec.cross_coef();
    if (c != 0.0) {
        if (spec.dim() == 3) {
            e.cross = c * (inner_product_l2(curl(state.w), state.u) +
                           inner_product_l2(curl(state.u), state.w));
        } else {
            e.cross =
                c * (inner_product_l2(perp_gradient(state.w.comp[0]), state.u) +
                     inner_product_l2(curl_2d(state.u), state.w.comp[0]));
        }
    }
    return e;
}

std::vector<EnergyLedgerRow> energy_budget(
    const std::vector<std::pair<double, EnergyTerms>>& samples) {
    if (samples.size() < 3)
        throw std::invalid_argument(
            "energy_budget: need at least 3 records for centered differences");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument(
                "energy_budget: sample times must be strictly increasing");
    std::vector<EnergyLedgerRow> rows(samples.size());
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        rows[i].t = samples[i].first;
        rows[i].terms = samples[i].second;
        rows[i].residual = nan;
    }
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const EnergyTerms& prev = samples[i - 1].second;
        const EnergyTerms& next = samples[i + 1].second;
        const EnergyTerms& here = samples[i].second;
        double dedt = (next.kinetic + next.micro - prev.kinetic - prev.micro) /
                      (samples[i + 1].first - samples[i - 1].first);
        rows[i].residual = dedt + here.dissipation_u + here.dissipation_w +
                           here.damping + here.graddiv - here.cross;
    }
    return rows;
}

std::vector<EnergyLedgerRow> energy_budget(const std::vector<State>& trajectory,
                                           const ModelSpec& spec) {
    std::vector<std::pair<double, EnergyTerms>> samples;
    samples.reserve(trajectory.size());
    for (const State& s : trajectory)
        samples.emplace_back(s.t, ledger_terms(s, spec));
    return energy_budget(samples);
}

std::vector<double> default_sigma_list(const ModelSpec& spec, double s) {
    double ab = spec.params.alpha + spec.params.beta;
    double lo = 2.25 - ab;
    double hi = 1.0 + spec.params.beta;
    double rho = lo < hi ? 0.5 * (lo + hi) : hi;
    return {0.0, 1.25, ab - 1.0, rho, 1.5, s};
}

NormRecord monitor_norms(const State& state, const std::vector<double>& sigmas) {
    NormRecord r;
    r.t = state.t;
    r.sigma_u.reserve(sigmas.size());
    r.sigma_w.reserve(sigmas.size());
    for (double s : sigmas) {
        r.sigma_u.push_back(sobolev_seminorm(state.u, s));
        r.sigma_w.push_back(sobolev_seminorm(state.w, s));
    }
    r.grad_u_inf = grad_linf(state.u, 2);
    r.w_inf = linf_refined(state.w, 2);
    return r;
}

BoundednessReport check_bounded(const std::vector<NormRecord>& series,
                                const std::vector<double>& sigmas,
                                double threshold) {
    BoundednessReport rep;
    if (series.empty()) return rep;
    auto check = [&](const std::string& name, auto getter) {
        double initial = getter(series.front());
        if (initial <= 0.0) return;  // no scale to compare against
        double worst = initial;
        double worst_t = series.front().t;
        for (const NormRecord& r : series) {
            double v = getter(r);
            if (v > worst) worst = v, worst_t = r.t;
        }
        if (worst > threshold * initial) {
            std::ostringstream msg;
            msg << name << " grew to " << worst << " at t=" << worst_t
                << " (initial " << initial << ", threshold factor "
                << threshold << ")";
            rep.ok = false;
            rep.violations.push_back(msg.str());
        }
    };
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        std::ostringstream nu, nw;
        nu << "||Lambda^" << sigmas[i] << " u||";
        nw << "||Lambda^" << sigmas[i] << " w||";
        check(nu.str(), [i](const NormRecord& r) { return r.sigma_u[i]; });
        check(nw.str(), [i](const NormRecord& r) { return r.sigma_w[i]; });
    }
    check("||grad u||_inf", [](const NormRecord& r) { return r.grad_u_inf; });
    check("||w||_inf", [](const NormRecord& r) { return r.w_inf; });
    return rep;
}

CommutatorSample kato_ponce_sample(const SpectralVectorField& f,
                                   const SpectralScalarField& g, double s,
                                   int pad) {
    if (pad < 2)
        throw std::invalid_argument(
            "kato_ponce_sample: padding insufficient for the amplified "
            "factors, need pad >= 2");
    if (!f.div_free)
        throw std::invalid_argument(
            "kato_ponce_sample: f must be divergence-free for the advective "
            "commutator form");
    CommutatorSample out;
    out.s = s;
    SpectralScalarField lam_g = fractional_laplacian(g, s / 2.0);
    SpectralScalarField a = advective_product(f, g, pad);
    SpectralScalarField lhs_field = fractional_laplacian(a, s / 2.0);
    SpectralScalarField b = advective_product(f, lam_g, pad);
    for (std::size_t i = 0; i < lhs_field.c.size(); ++i)
        lhs_field.c[i] -= b.c[i];
    out.lhs = l2_norm(lhs_field);
    double grad_f_inf = grad_linf(f, 2);
    double grad_g_inf = linf_refined(gradient(g), 2);
    out.rhs_bound = grad_f_inf * sobolev_seminorm(g, s) +
                    sobolev_seminorm(f, s) * grad_g_inf;
    out.ratio = out.rhs_bound > 0.0 ? out.lhs / out.rhs_bound : 0.0;
    return out;
}

HighLowBound highlow_gradient_bound(const SpectralVectorField& u, int n_split,
                                    const GChoice& g, double k1, double eps2) {
    if (!(k1 > eps2 + 0.75))
        throw std::invalid_argument(
            "highlow_gradient_bound: need k1 > eps2 + 3/4");
    if (n_split < 1)
        throw std::invalid_argument("highlow_gradient_bound: n_split >= 1");
    HighLowBound out;
    out.lhs = grad_linf(u, 2);
    out.term_low = l2_norm(u);

    auto ge = g.eval;
    RadialSymbol weakened{[ge](double r) {
                              if (r <= 0.0) return 0.0;
                              double gg = ge(r);
                              return std::pow(r, 2.5) / (gg * gg);
                          },
                          "freq^2.5/g^2"};
    double g2n = ge(std::ldexp(1.0, n_split));
    out.term_mid = g2n * g2n * std::sqrt(double(n_split)) *
                   std::sqrt(weighted_energy(u, {[&](double r) {
                                                     double v = weakened(r);
                                                     return v * v;
                                                 },
                                                 "sq"}));
    double expo = n_split * (eps2 + 0.75 - k1);
    out.term_high = std::pow(2.0, expo) *
                    sobolev_seminorm(u, k1 + 1.75 - eps2);
    double denom = out.term_low + out.term_mid + out.term_high;
    out.ratio = denom > 0.0 ? out.lhs / denom : 0.0;
    return out;
}

std::vector<SweepCell> threshold_sweep(
    const std::vector<std::pair<double, double>>& cells, const ModelSpec& base,
    const GalerkinCutoff& cutoff, const StepperConfig& cfg,
    const State& initial, double s_norm) {
    std::vector<SweepCell> out;
    out.reserve(cells.size());
    for (auto [alpha, beta] : cells) {
        ModelSpec spec = base;
        spec.params.alpha = alpha;
        spec.params.beta = beta;
        SweepCell cell;
        cell.alpha = alpha;
        cell.beta = beta;
        cell.status = "ok";

        double initial_hs = 0.0;
        double sup_hs = 0.0;
        double prev_t = 0.0, prev_grad = 0.0, prev_winf2 = 0.0;
        bool first = true;
        SimulateCallbacks cbs;
        cbs.probe = [&](const State& s, std::size_t) {
            double hu = hs_norm(s.u, s_norm);
            double hw = hs_norm(s.w, s_norm);
            double h = std::sqrt(hu * hu + hw * hw);
            double gi = grad_linf(s.u, 2);
            double wi = linf_refined(s.w, 2);
            if (first) {
                initial_hs = h;
                first = false;
            } else {
                double dt = s.t - prev_t;
                cell.int_grad_u_inf += 0.5 * dt * (prev_grad + gi);
                cell.int_w_inf_sq += 0.5 * dt * (prev_winf2 + wi * wi);
            }
            sup_hs = std::max(sup_hs, h);
            prev_t = s.t;
            prev_grad = gi;
            prev_winf2 = wi * wi;
        };
        try {
            simulate(initial, spec, cutoff, cfg, cbs);
        } catch (const SimulationAbort&) {
            cell.status = "abort";
        }
        cell.growth_factor = initial_hs > 0.0 ? sup_hs / initial_hs : 0.0;
        out.push_back(std::move(cell));
    }
    return out;
}

}  // namespace mps
