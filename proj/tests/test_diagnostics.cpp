#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mps/diagnostics.hpp"
#include "mps/initial_data.hpp"
#include "mps/norms.hpp"
#include "mps/operators.hpp"

using namespace mps;

namespace {

std::size_t flat_of(const Grid& g, int k1, int k2, int k3 = 0) {
    std::size_t found = 0;
    bool hit = false;
    for_each_mode(g, [&](std::size_t f, int a, int b, int c) {
        if (a == k1 && b == k2 && c == k3) {
            found = f;
            hit = true;
        }
    });
    REQUIRE(hit);
    return found;
}

void set_pair(SpectralScalarField& f, int k1, int k2, int k3, cplx v) {
    std::size_t idx = flat_of(f.grid, k1, k2, k3);
    f.c[idx] = v;
    f.c[f.grid.conjugate_index(idx)] = std::conj(v);
}

ModelSpec spec_of(Model m) { return ModelSpec{m, default_params(m)}; }

}  // namespace

TEST_CASE("energy ledger: closed forms at a single mode") {
    // One Hermitian pair at k = (2, 1, -1), |k|^2 = 6, with amplitude
    // c_u (1, -1, 1) (2 - 1 - 1 = 0, divergence-free). Every ledger entry
    // then reduces to arithmetic on two coefficients, computed here with
    // inline complex algebra rather than the library operators.
    ModelSpec spec = spec_of(Model::Fractional3D);  // nu+kappa=1, 4kappa=2
    Grid g = make_grid(3, 16);
    State s = make_state(g, spec);

    const cplx cu{0.3, -0.2};
    const double dir[3] = {1.0, -1.0, 1.0};
    const cplx wv[3] = {{0.1, 0.4}, {-0.2, 0.0}, {0.0, 0.25}};
    const double kk[3] = {2.0, 1.0, -1.0};
    for (int a = 0; a < 3; ++a) {
        set_pair(s.u.comp[a], 2, 1, -1, cu * dir[a]);
        set_pair(s.w.comp[a], 2, 1, -1, wv[a]);
    }

    double u2 = 2.0 * std::norm(cu) * 3.0;  // both slots, |dir|^2 = 3
    double w2 = 0.0;
    for (const cplx& z : wv) w2 += 2.0 * std::norm(z);

    EnergyTerms e = ledger_terms(s, spec);
    CHECK(e.kinetic == doctest::Approx(0.5 * u2).epsilon(1e-13));
    CHECK(e.micro == doctest::Approx(0.5 * w2).epsilon(1e-13));
    CHECK(e.dissipation_u ==
          doctest::Approx(std::pow(6.0, 1.25) * u2).epsilon(1e-13));
    CHECK(e.dissipation_w ==
          doctest::Approx(std::sqrt(6.0) * w2).epsilon(1e-13));
    CHECK(e.damping == doctest::Approx(2.0 * w2).epsilon(1e-13));

    cplx kdotw = kk[0] * wv[0] + kk[1] * wv[1] + kk[2] * wv[2];
    CHECK(e.graddiv == doctest::Approx(2.0 * std::norm(kdotw)).epsilon(1e-13));

    // cross = 2 kappa (<curl w, u> + <curl u, w>); each pairing is twice the
    // real part of the single +k contribution.
    const cplx I{0.0, 1.0};
    cplx kxw[3] = {I * (kk[1] * wv[2] - kk[2] * wv[1]),
                   I * (kk[2] * wv[0] - kk[0] * wv[2]),
                   I * (kk[0] * wv[1] - kk[1] * wv[0])};
    cplx kxu[3] = {I * (kk[1] * cu * dir[2] - kk[2] * cu * dir[1]),
                   I * (kk[2] * cu * dir[0] - kk[0] * cu * dir[2]),
                   I * (kk[0] * cu * dir[1] - kk[1] * cu * dir[0])};
    double p1 = 0.0, p2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        p1 += 2.0 * std::real(kxw[a] * std::conj(cu * dir[a]));
        p2 += 2.0 * std::real(kxu[a] * std::conj(wv[a]));
    }
    CHECK(e.cross == doctest::Approx(1.0 * (p1 + p2)).epsilon(1e-12));
    // Integration by parts makes the two pairings equal, so the cross term
    // is also 2 * 2 kappa <curl u, w>.
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-12));
}

TEST_CASE("energy ledger: planar cross term and absent grad-div") {
    ModelSpec spec = spec_of(Model::Fractional2D);
    Grid g = make_grid(2, 16);
    State s = make_state(g, spec);

    const cplx zu{0.4, 0.1};
    const cplx zw{-0.3, 0.2};
    set_pair(s.u.comp[0], 1, 2, 0, zu * -2.0);  // (-k2, k1) direction
    set_pair(s.u.comp[1], 1, 2, 0, zu * 1.0);
    set_pair(s.w.comp[0], 1, 2, 0, zw);

    EnergyTerms e = ledger_terms(s, spec);
    CHECK(e.graddiv == 0.0);

    // perp-grad w = i(-k2, k1) w pairs against u; curl u = i(k1 u2 - k2 u1)
    // pairs against w. Integration by parts makes the two pairings exact
    // negatives, so the planar coupling moves no energy at all and the
    // ledger's cross entry is identically zero in this geometry.
    const cplx I{0.0, 1.0};
    cplx pg[2] = {I * -2.0 * zw, I * 1.0 * zw};
    double p1 = 2.0 * std::real(pg[0] * std::conj(zu * -2.0) +
                                pg[1] * std::conj(zu * 1.0));
    cplx cu2 = I * (1.0 * (zu * 1.0) - 2.0 * (zu * -2.0));
    double p2 = 2.0 * std::real(cu2 * std::conj(zw));
    CHECK(p1 == doctest::Approx(-p2).epsilon(1e-12));
    CHECK(std::abs(p1) > 0.1);  // the cancellation is between real transfers
    CHECK(std::abs(e.cross) < 1e-12);
}

TEST_CASE("energy budget: centered difference hits the analytic remainder") {
    // Synthetic exact balance: kinetic = 1/2 e^{-2t}, dissipation_u =
    // e^{-2t}, everything else zero, so d/dt(E) + dissipation = 0 exactly
    // and the only residual is the third-derivative error of the centered
    // difference: (1/6) h^2 f''' = -(2/3) h^2 e^{-2t} for step h.
    const double h = 0.01;
    std::vector<std::pair<double, EnergyTerms>> samples;
    for (int i = 0; i <= 10; ++i) {
        double t = h * i;
        EnergyTerms e;
        e.kinetic = 0.5 * std::exp(-2.0 * t);
        e.dissipation_u = std::exp(-2.0 * t);
        samples.emplace_back(t, e);
    }
    auto rows = energy_budget(samples);
    REQUIRE(rows.size() == 11);
    CHECK(std::isnan(rows.front().residual));
    CHECK(std::isnan(rows.back().residual));
    for (int i = 1; i < 10; ++i) {
        double want = -(2.0 / 3.0) * h * h * std::exp(-2.0 * rows[i].t);
        CHECK(rows[i].residual == doctest::Approx(want).epsilon(0.01));
    }

    samples.resize(2);
    CHECK_THROWS_AS(energy_budget(samples), std::invalid_argument);
    samples = {{0.0, {}}, {0.2, {}}, {0.1, {}}};
    CHECK_THROWS_AS(energy_budget(samples), std::invalid_argument);
}

TEST_CASE("energy budget: trajectory overload wraps the ledger") {
    ModelSpec spec = spec_of(Model::Fractional2D);
    Grid g = make_grid(2, 8);
    std::vector<State> traj;
    for (int i = 0; i < 3; ++i) {
        State s = random_state(g, spec, 40 + i, 3, -1.0, 0.2);
        s.t = 0.1 * i;
        traj.push_back(std::move(s));
    }
    auto rows = energy_budget(traj, spec);
    REQUIRE(rows.size() == 3);
    for (int i = 0; i < 3; ++i) {
        EnergyTerms want = ledger_terms(traj[i], spec);
        CHECK(rows[i].terms.kinetic == want.kinetic);
        CHECK(rows[i].terms.cross == want.cross);
        CHECK(rows[i].t == traj[i].t);
    }
    const EnergyTerms& a = rows[0].terms;
    const EnergyTerms& b = rows[1].terms;
    const EnergyTerms& c = rows[2].terms;
    double dedt = (c.kinetic + c.micro - a.kinetic - a.micro) / 0.2;
    double want = dedt + b.dissipation_u + b.dissipation_w + b.damping +
                  b.graddiv - b.cross;
    CHECK(rows[1].residual == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("monitored exponent set: midpoint rule and its degenerate fallback") {
    // Defaults alpha = 5/4, beta = 1/2: the admissible interval is
    // (9/4 - 7/4, 3/2) = (1/2, 3/2), midpoint 1; alpha+beta-1 = 3/4.
    ModelSpec spec = spec_of(Model::Fractional3D);
    auto sig = default_sigma_list(spec, 2.6);
    REQUIRE(sig.size() == 6);
    CHECK(sig[0] == 0.0);
    CHECK(sig[1] == 1.25);
    CHECK(sig[2] == 0.75);
    CHECK(sig[3] == 1.0);
    CHECK(sig[4] == 1.5);
    CHECK(sig[5] == 2.6);

    // alpha = 1, beta = 0 empties the interval ((5/4, 1)); the fallback is
    // the right endpoint 1 + beta.
    spec.params.alpha = 1.0;
    spec.params.beta = 0.0;
    auto deg = default_sigma_list(spec, 3.0);
    CHECK(deg[2] == 0.0);
    CHECK(deg[3] == 1.0);
}

TEST_CASE("norm monitor: consistent with the norm routines, exact at one mode") {
    Grid g = make_grid(2, 32);
    ModelSpec spec = spec_of(Model::Fractional2D);

    State zero = make_state(g, spec);
    auto rz = monitor_norms(zero, {0.0, 1.5});
    CHECK(rz.sigma_u == std::vector<double>{0.0, 0.0});
    CHECK(rz.sigma_w == std::vector<double>{0.0, 0.0});
    CHECK(rz.grad_u_inf == 0.0);
    CHECK(rz.w_inf == 0.0);

    State s = random_state(g, spec, 55, 6, -2.0, 0.3);
    s.t = 0.7;
    std::vector<double> sigmas = {0.0, 0.75, 2.6};
    NormRecord r = monitor_norms(s, sigmas);
    CHECK(r.t == 0.7);
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        CHECK(r.sigma_u[i] == sobolev_seminorm(s.u, sigmas[i]));
        CHECK(r.sigma_w[i] == sobolev_seminorm(s.w, sigmas[i]));
    }
    CHECK(r.grad_u_inf == grad_linf(s.u, 2));
    CHECK(r.w_inf == linf_refined(s.w, 2));

    // Single shell |k| = 5: the seminorm scales by exactly 5^sigma.
    State one = make_state(g, spec);
    set_pair(one.u.comp[0], 3, 4, 0, cplx(0.0, 0.5) * -4.0);
    set_pair(one.u.comp[1], 3, 4, 0, cplx(0.0, 0.5) * 3.0);
    NormRecord ro = monitor_norms(one, {0.0, 2.0});
    CHECK(ro.sigma_u[1] ==
          doctest::Approx(25.0 * ro.sigma_u[0]).epsilon(1e-13));
}

TEST_CASE("boundedness report: growth flagged, zero-start series skipped") {
    auto rec = [](double t, double su, double sw, double gi, double wi) {
        NormRecord r;
        r.t = t;
        r.sigma_u = {su};
        r.sigma_w = {sw};
        r.grad_u_inf = gi;
        r.w_inf = wi;
        return r;
    };

    // Everything decays: clean report.
    std::vector<NormRecord> calm = {rec(0.0, 1.0, 2.0, 3.0, 4.0),
                                    rec(0.5, 0.9, 1.9, 2.9, 3.9),
                                    rec(1.0, 0.8, 1.8, 2.8, 3.8)};
    BoundednessReport ok = check_bounded(calm, {1.5}, 1.5);
    CHECK(ok.ok);
    CHECK(ok.violations.empty());

    // One series grows past the factor; the message names it with the
    // offending value and time.
    std::vector<NormRecord> hot = {rec(0.0, 1.0, 2.0, 3.0, 4.0),
                                   rec(0.5, 1.7, 1.9, 2.9, 3.9),
                                   rec(1.0, 1.2, 1.8, 2.8, 3.8)};
    BoundednessReport bad = check_bounded(hot, {1.5}, 1.5);
    CHECK(!bad.ok);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].find("Lambda^1.5 u") != std::string::npos);
    CHECK(bad.violations[0].find("t=0.5") != std::string::npos);

    // A series that starts at zero has no scale and is never flagged.
    std::vector<NormRecord> coldstart = {rec(0.0, 0.0, 1.0, 1.0, 1.0),
                                         rec(0.5, 9.0, 1.0, 1.0, 1.0),
                                         rec(1.0, 5.0, 1.0, 1.0, 1.0)};
    CHECK(check_bounded(coldstart, {1.5}, 1.5).ok);

    CHECK(check_bounded({}, {1.5}, 1.5).ok);
}

TEST_CASE("commutator sample: constant transport commutes") {
    // f constant in space: f.grad is a constant-coefficient derivative and
    // commutes with any Fourier multiplier, so the commutator vanishes to
    // transform roundoff. Both bound factors degenerate too (grad f = 0 and
    // the seminorm of a constant is 0), and the 0/0 ratio is defined as 0.
    Grid g = make_grid(2, 32);
    SpectralVectorField f(g, 2);
    f.div_free = true;
    f.comp[0].c[flat_of(g, 0, 0)] = cplx(0.8, 0.0);
    f.comp[1].c[flat_of(g, 0, 0)] = cplx(-0.3, 0.0);

    SpectralScalarField h(g);
    set_pair(h, 2, -1, 0, cplx(0.5, 0.2));
    set_pair(h, 4, 3, 0, cplx(-0.1, 0.3));

    CommutatorSample cs = kato_ponce_sample(f, h, 1.6);
    CHECK(cs.lhs < 1e-13);
    CHECK(cs.rhs_bound == 0.0);
    CHECK(cs.ratio == 0.0);
}

TEST_CASE("commutator sample: two-mode closed form") {
    // f = 2 Re[a e^{i k1 x}] with a . k1 = 0 and h = 2 Re[c e^{i k2 x}].
    // The product f.grad h lives at k1 +- k2 only, and a Fourier multiplier
    // m acts there by m(|K|), so the commutator coefficient at K = k1 +- k2
    // is (|K|^s - |k2|^s)(a . i(+-k2)) c with the conjugate pair doubling
    // the energy:
    //   lhs = sqrt(2 (A^2 + B^2)),
    //   A = ||k1+k2|^s - |k2|^s| |a.k2| |c|,
    //   B = ||k1-k2|^s - |k2|^s| |a.k2| |c|.
    Grid g = make_grid(2, 64);
    const double s = 1.3;
    const cplx za{0.35, -0.15};
    const cplx zc{-0.4, 0.2};

    SpectralVectorField f(g, 2);
    f.div_free = true;
    set_pair(f.comp[0], 2, 1, 0, za * -1.0);  // direction (-1, 2) _|_ (2, 1)
    set_pair(f.comp[1], 2, 1, 0, za * 2.0);

    SpectralScalarField h(g);
    set_pair(h, 1, -3, 0, zc);

    double adotk2 = std::abs(za) * 7.0;  // |(-1,2).(1,-3)| = 7
    double sum = std::pow(13.0, s / 2.0) - std::pow(10.0, s / 2.0);   // |k1+k2|^s
    double dif = std::pow(17.0, s / 2.0) - std::pow(10.0, s / 2.0);   // |k1-k2|^s
    double A = std::abs(sum) * adotk2 * std::abs(zc);
    double B = std::abs(dif) * adotk2 * std::abs(zc);
    double want = std::sqrt(2.0 * (A * A + B * B));

    CommutatorSample cs = kato_ponce_sample(f, h, s);
    CHECK(cs.s == s);
    CHECK(cs.lhs == doctest::Approx(want).epsilon(1e-12));

    double rhs = grad_linf(f, 2) * sobolev_seminorm(h, s) +
                 sobolev_seminorm(f, s) * linf_refined(gradient(h), 2);
    CHECK(cs.rhs_bound == doctest::Approx(rhs).epsilon(1e-13));
    CHECK(cs.ratio == doctest::Approx(cs.lhs / cs.rhs_bound).epsilon(1e-13));

    // Preconditions: the divergence-free promise and enough padding.
    SpectralVectorField notdf = f;
    notdf.div_free = false;
    CHECK_THROWS_WITH_AS(kato_ponce_sample(notdf, h, s),
                         doctest::Contains("divergence-free"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(kato_ponce_sample(f, h, s, 1),
                         doctest::Contains("padding insufficient"),
                         std::invalid_argument);
}

TEST_CASE("high-low split: terms recompute and scale as stated") {
    Grid g = make_grid(2, 64);
    ModelSpec spec = spec_of(Model::Fractional2D);
    SpectralVectorField u = random_divfree_field(g, 91, 20, -2.0, 0.6);
    GChoice one = g_constant_one();
    const double k1 = 1.8, eps2 = 0.25;

    HighLowBound hb = highlow_gradient_bound(u, 3, one, k1, eps2);
    CHECK(hb.lhs == grad_linf(u, 2));
    CHECK(hb.term_low == l2_norm(u));
    // With g == 1 the weakened symbol is |k|^{5/2}, so the mid term is
    // sqrt(N) times the 5/2 seminorm.
    CHECK(hb.term_mid ==
          doctest::Approx(std::sqrt(3.0) * sobolev_seminorm(u, 2.5))
              .epsilon(1e-12));
    CHECK(hb.term_high ==
          doctest::Approx(std::pow(2.0, 3.0 * (eps2 + 0.75 - k1)) *
                          sobolev_seminorm(u, k1 + 1.75 - eps2))
              .epsilon(1e-12));
    CHECK(hb.ratio ==
          doctest::Approx(hb.lhs / (hb.term_low + hb.term_mid + hb.term_high))
              .epsilon(1e-13));
    CHECK(hb.ratio > 0.0);

    // The high term halves by exactly 2^{eps2+3/4-k1} per split level.
    HighLowBound next = highlow_gradient_bound(u, 4, one, k1, eps2);
    CHECK(next.term_high / hb.term_high ==
          doctest::Approx(std::pow(2.0, eps2 + 0.75 - k1)).epsilon(1e-13));

    // The ratio is scale-invariant: every term is 1-homogeneous in u.
    SpectralVectorField u2 = u;
    for (auto& c : u2.comp)
        for (auto& z : c.c) z *= 37.5;
    HighLowBound hb2 = highlow_gradient_bound(u2, 3, one, k1, eps2);
    CHECK(hb2.ratio == doctest::Approx(hb.ratio).epsilon(1e-13));

    // A genuinely log-weakened weight enters the mid term only.
    GChoice g1 = g_by_label("g1");
    HighLowBound hw = highlow_gradient_bound(u, 3, g1, k1, eps2);
    CHECK(hw.lhs == hb.lhs);
    CHECK(hw.term_high == hb.term_high);
    CHECK(hw.term_mid != hb.term_mid);

    CHECK_THROWS_AS(highlow_gradient_bound(u, 3, one, 0.9, eps2),
                    std::invalid_argument);
    CHECK_THROWS_AS(highlow_gradient_bound(u, 0, one, k1, eps2),
                    std::invalid_argument);
}

TEST_CASE("threshold sweep: one cell reproduces a direct run") {
    Grid g = make_grid(2, 16);
    ModelSpec base = spec_of(Model::Fractional2D);
    State init = random_state(g, base, 17, 4, -2.0, 0.1);
    GalerkinCutoff cut = default_cutoff(g);
    StepperConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.05;
    cfg.probe_cadence = 1;
    const double s_norm = 2.6;

    auto cells = threshold_sweep({{1.0, 0.5}}, base, cut, cfg, init, s_norm);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].alpha == 1.0);
    CHECK(cells[0].beta == 0.5);
    CHECK(cells[0].status == "ok");

    // Replicate by hand with the same probes.
    ModelSpec spec = base;
    spec.params.alpha = 1.0;
    spec.params.beta = 0.5;
    double init_h = -1.0, sup_h = 0.0;
    double prev_t = 0.0, prev_g = 0.0, prev_w2 = 0.0;
    double acc_g = 0.0, acc_w2 = 0.0;
    bool first = true;
    SimulateCallbacks cb;
    cb.probe = [&](const State& st, std::size_t) {
        double hu = hs_norm(st.u, s_norm), hw = hs_norm(st.w, s_norm);
        double hh = std::sqrt(hu * hu + hw * hw);
        double gi = grad_linf(st.u, 2);
        double wi = linf_refined(st.w, 2);
        if (first) {
            init_h = hh;
            first = false;
        } else {
            acc_g += 0.5 * (st.t - prev_t) * (prev_g + gi);
            acc_w2 += 0.5 * (st.t - prev_t) * (prev_w2 + wi * wi);
        }
        sup_h = std::max(sup_h, hh);
        prev_t = st.t;
        prev_g = gi;
        prev_w2 = wi * wi;
    };
    simulate(init, spec, cut, cfg, cb);
    CHECK(cells[0].growth_factor ==
          doctest::Approx(sup_h / init_h).epsilon(1e-13));
    CHECK(cells[0].int_grad_u_inf == doctest::Approx(acc_g).epsilon(1e-13));
    CHECK(cells[0].int_w_inf_sq == doctest::Approx(acc_w2).epsilon(1e-13));
    CHECK(cells[0].growth_factor > 0.0);
}

TEST_CASE("threshold sweep: aborted cells are recorded, not fatal") {
    Grid g = make_grid(2, 16);
    ModelSpec base = spec_of(Model::Fractional2D);
    // Fast enough that the very first step violates the time-step limit.
    State wild = taylor_green_state(g, base, 60.0);
    StepperConfig cfg;
    cfg.dt = 0.1;
    cfg.t_end = 0.3;
    cfg.probe_cadence = 1;

    auto cells = threshold_sweep({{1.0, 1.0}, {0.5, 0.5}}, base,
                                 default_cutoff(g), cfg, wild, 2.0);
    REQUIRE(cells.size() == 2);
    for (const auto& c : cells) {
        CHECK(c.status == "abort");
        // Only the step-0 probe ran: the sup equals the initial value and
        // no integral segment accumulated.
        CHECK(c.growth_factor == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.int_grad_u_inf == 0.0);
        CHECK(c.int_w_inf_sq == 0.0);
    }

    // Zero data has no scale: the growth factor reports 0 by convention.
    State nothing = make_state(g, base);
    cfg.dt = 0.01;
    cfg.t_end = 0.02;
    auto quiet = threshold_sweep({{1.0, 1.0}}, base, default_cutoff(g), cfg,
                                 nothing, 2.0);
    CHECK(quiet[0].status == "ok");
    CHECK(quiet[0].growth_factor == 0.0);
}
