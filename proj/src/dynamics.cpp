#include "mps/dynamics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mps/norms.hpp"
#include "mps/operators.hpp"
#include "mps/parallel.hpp"
#include "mps/snapshot.hpp"

namespace mps {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

SpectralVectorField zero_vector_field(const Grid& grid, int ncomp,
                                      bool div_free) {
    SpectralVectorField f;
    f.grid = grid;
    f.div_free = div_free;
    f.comp.resize(ncomp);
    for (auto& c : f.comp) {
        c.grid = grid;
        c.c.assign(grid.size(), cplx{});
    }
    return f;
}

void accumulate(SpectralVectorField& dst, double a,
                const SpectralVectorField& src) {
    for (int i = 0; i < dst.ncomp(); ++i)
        parallel_for(dst.grid.size(), [&, i](std::size_t lo, std::size_t hi) {
            for (std::size_t f = lo; f < hi; ++f)
                dst.comp[i].c[f] += a * src.comp[i].c[f];
        });
}

void checkpoint_fail(const std::string& what, std::uint64_t offset) {
    std::ostringstream msg;
    msg << "checkpoint: " << what << " at byte offset " << offset;
    throw std::runtime_error(msg.str());
}

}  // namespace

State make_state(const Grid& grid, const ModelSpec& spec) {
    if (grid.dim != spec.dim())
        throw std::invalid_argument("make_state: grid/spec dimension mismatch");
    State s;
    s.u = zero_vector_field(grid, grid.dim, true);
    s.w = zero_vector_field(grid, spec.w_components(), false);
    return s;
}

GalerkinCutoff default_cutoff(const Grid& grid) {
    return {grid.n / 2 - 1.0, true};
}

void apply_cutoff(SpectralScalarField& f, const GalerkinCutoff& cutoff) {
    if (!cutoff.active) return;
    double r2 = cutoff.radius * cutoff.radius;
    const Grid g = f.grid;
    parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            auto k = g.wavevector(idx);
            double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] +
                        double(k[2]) * k[2];
            if (k2 > r2) f.c[idx] = cplx{};
        }
    });
}

void apply_cutoff(SpectralVectorField& f, const GalerkinCutoff& cutoff) {
    for (auto& c : f.comp) apply_cutoff(c, cutoff);
}

Scheme scheme_by_label(const std::string& label) {
    if (label == "strang") return Scheme::Strang;
    if (label == "imex_cn") return Scheme::IMEX_CN;
    throw std::invalid_argument("unknown scheme '" + label +
                                "' (known: strang, imex_cn)");
}

std::string scheme_label(Scheme s) {
    return s == Scheme::Strang ? "strang" : "imex_cn";
}

RhsResult nonlinear_rhs(const State& state, const ModelSpec& /*spec*/,
                        const GalerkinCutoff& cutoff, const Forcing& forcing) {
    RhsResult r;
    PaddedVelocity pu = materialize_padded(state.u);
    r.du = leray_project(advect(pu, state.u));
    r.dw = advect(pu, state.w);
    for (auto& c : r.du.comp)
        parallel_for(c.c.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t f = lo; f < hi; ++f) c.c[f] = -c.c[f];
        });
    for (auto& c : r.dw.comp)
        parallel_for(c.c.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t f = lo; f < hi; ++f) c.c[f] = -c.c[f];
        });
    if (forcing) {
        auto fu = zero_vector_field(state.u.grid, state.u.ncomp(), false);
        auto fw = zero_vector_field(state.w.grid, state.w.ncomp(), false);
        forcing(state.t, fu, fw);
        accumulate(r.du, 1.0, fu);
        accumulate(r.dw, 1.0, fw);
        r.du = leray_project(r.du);
    }
    apply_cutoff(r.du, cutoff);
    apply_cutoff(r.dw, cutoff);
    return r;
}

namespace {

// Cross-coupling terms of the w equation into u and vice versa, plus the
// grad-div term; everything linear except dissipation and damping. The
// IMEX stage passes include_graddiv = false because its Crank-Nicolson
// w-block already integrates mu k k^T implicitly; adding it here too would
// apply the term twice and shift the scheme's limit away from the flow.
void add_coupling_terms(const State& state, const ModelSpec& spec,
                        RhsResult& r, bool include_graddiv = true) {
    double cross = spec.cross_coef();
    if (spec.dim() == 3) {
        accumulate(r.du, cross, curl(state.w));
        accumulate(r.dw, cross, curl(state.u));
        if (include_graddiv && spec.has_graddiv() && spec.params.mu != 0.0)
            accumulate(r.dw, spec.params.mu, grad_div(state.w));
    } else {
        accumulate(r.du, cross, perp_gradient(state.w.comp[0]));
        SpectralVectorField pd;
        pd.grid = state.w.grid;
        pd.comp.push_back(curl_2d(state.u));
        accumulate(r.dw, cross, pd);
    }
}

}  // namespace

RhsResult rhs(const State& state, const ModelSpec& spec,
              const GalerkinCutoff& cutoff) {
    if (state.u.grid.dim != spec.dim())
        throw std::invalid_argument("rhs: grid/spec dimension mismatch");
    RhsResult r = nonlinear_rhs(state, spec, cutoff, nullptr);
    double cu = spec.params.nu + spec.params.kappa;
    if (cu != 0.0)
        accumulate(r.du, -cu,
                   apply_radial_multiplier(state.u, spec.u_dissipation().symbol()));
    double cw = spec.params.gamma;
    if (cw != 0.0 && spec.w_dissipation().kind != DissipationSpec::Kind::None)
        accumulate(r.dw, -cw,
                   apply_radial_multiplier(state.w, spec.w_dissipation().symbol()));
    accumulate(r.dw, -spec.damping_coef(), state.w);
    add_coupling_terms(state, spec, r);
    r.du = leray_project(r.du);
    apply_cutoff(r.du, cutoff);
    apply_cutoff(r.dw, cutoff);
    return r;
}

SpectralScalarField recover_pressure(const State& state, const ModelSpec& spec) {
    if (spec.dim() != 3)
        throw std::invalid_argument("recover_pressure: 3D only");
    SpectralVectorField f = advect(state.u, state.u);
    accumulate(f, -spec.cross_coef(), curl(state.w));
    SpectralScalarField divf = divergence(f);
    const Grid g = divf.grid;
    parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            auto k = g.wavevector(idx);
            double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] +
                        double(k[2]) * k[2];
            divf.c[idx] = k2 == 0.0 ? cplx{} : -divf.c[idx] / k2;
        }
    });
    return divf;
}

Stepper::Stepper(const Grid& grid, const ModelSpec& spec,
                 const GalerkinCutoff& cutoff, const StepperConfig& cfg)
    : grid_(grid), spec_(spec), cutoff_(cutoff), cfg_(cfg) {
    if (cfg.dt <= 0.0) throw std::invalid_argument("Stepper: dt must be > 0");
    spec_.validate();
    if (cfg_.scheme == Scheme::Strang) {
        if (cfg_.enable_linear)
            half_ = build_propagator_table(grid_, spec_, cfg_.dt / 2.0);
        return;
    }

    // IMEX_CN: Crank-Nicolson multipliers for the dissipative diagonal. The
    // u block is scalar per mode; the w block is a small real matrix because
    // of the grad-div rank-one part (gamma m_w + 4 kappa) I + mu k k^T.
    std::size_t sz = grid_.size();
    int wb = spec_.w_components();
    int wb2 = wb * wb;
    cn_explicit_u_.assign(sz, 1.0);
    cn_implicit_u_.assign(sz, 1.0);
    cn_w_.assign(sz * 2 * wb2, 0.0);
    if (!cfg_.enable_linear) {
        // Identity tables: the linear half contributes nothing.
        for (std::size_t f = 0; f < sz; ++f)
            for (int i = 0; i < wb; ++i) {
                cn_w_[f * 2 * wb2 + i * wb + i] = 1.0;
                cn_w_[f * 2 * wb2 + wb2 + i * wb + i] = 1.0;
            }
        return;
    }
    auto mu_sym = spec_.u_dissipation().symbol();
    auto mw_sym = spec_.w_dissipation().symbol();
    double h = cfg_.dt / 2.0;
    double visc_u = spec_.params.nu + spec_.params.kappa;
    parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t f = lo; f < hi; ++f) {
            auto k = grid_.wavevector(f);
            double r = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1] +
                                 double(k[2]) * k[2]);
            double du = visc_u * mu_sym(r);
            cn_explicit_u_[f] = 1.0 - h * du;
            cn_implicit_u_[f] = 1.0 / (1.0 + h * du);
            double dw = spec_.params.gamma * mw_sym(r) + spec_.damping_coef();
            Eigen::MatrixXd dmat = dw * Eigen::MatrixXd::Identity(wb, wb);
            if (spec_.has_graddiv())
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        dmat(i, j) += spec_.params.mu * k[i] * k[j];
            Eigen::MatrixXd expl =
                Eigen::MatrixXd::Identity(wb, wb) - h * dmat;
            Eigen::MatrixXd impl =
                (Eigen::MatrixXd::Identity(wb, wb) + h * dmat).inverse();
            for (int i = 0; i < wb; ++i)
                for (int j = 0; j < wb; ++j) {
                    cn_w_[f * 2 * wb2 + i * wb + j] = expl(i, j);
                    cn_w_[f * 2 * wb2 + wb2 + i * wb + j] = impl(i, j);
                }
        }
    });
}

void Stepper::check_cfl(const State& state) const {
    if (!cfg_.enable_nonlinear) return;
    double vmax = linf_refined(state.u, 1);
    if (vmax <= 0.0) return;
    double limit = cfg_.cfl_safety * (kTwoPi / grid_.n) / vmax;
    if (cfg_.dt > limit) {
        std::ostringstream msg;
        msg << "CFL violation at t=" << state.t << ": dt=" << cfg_.dt
            << " exceeds limit " << limit << " (max speed " << vmax << ")";
        throw CflViolation(msg.str());
    }
}

void Stepper::finish_step(State& state) const {
    state.u = leray_project(state.u);
    apply_cutoff(state.u, cutoff_);
    apply_cutoff(state.w, cutoff_);
    if (has_nonfinite(state.u) || has_nonfinite(state.w)) {
        std::ostringstream msg;
        msg << "non-finite coefficient detected at t=" << state.t + cfg_.dt;
        throw NumericalAbort(msg.str());
    }
    state.t += cfg_.dt;
}

void Stepper::step_strang(State& state) const {
    if (cfg_.enable_linear) apply_propagator(half_, state.u, state.w);
    if (cfg_.enable_nonlinear || cfg_.forcing) {
        double dt = cfg_.dt;
        State stage = state;
        RhsResult k1 = nonlinear_rhs(state, spec_, cutoff_, cfg_.forcing);
        accumulate(stage.u, dt, k1.du);
        accumulate(stage.w, dt, k1.dw);
        stage.t = state.t + dt;
        RhsResult k2 = nonlinear_rhs(stage, spec_, cutoff_, cfg_.forcing);
        accumulate(state.u, dt / 2.0, k1.du);
        accumulate(state.u, dt / 2.0, k2.du);
        accumulate(state.w, dt / 2.0, k1.dw);
        accumulate(state.w, dt / 2.0, k2.dw);
    }
    if (cfg_.enable_linear) apply_propagator(half_, state.u, state.w);
}

void Stepper::step_imex(State& state) const {
    RhsResult e;
    if (cfg_.enable_nonlinear || cfg_.forcing) {
        e = nonlinear_rhs(state, spec_, cutoff_, cfg_.forcing);
    } else {
        e.du = zero_vector_field(grid_, grid_.dim, true);
        e.dw = zero_vector_field(grid_, spec_.w_components(), false);
    }
    if (cfg_.enable_linear)
        add_coupling_terms(state, spec_, e, /*include_graddiv=*/false);

    double dt = cfg_.dt;
    int wb = spec_.w_components();
    int wb2 = wb * wb;
    for (int i = 0; i < grid_.dim; ++i)
        parallel_for(grid_.size(), [&, i](std::size_t lo, std::size_t hi) {
            for (std::size_t f = lo; f < hi; ++f)
                state.u.comp[i].c[f] =
                    cn_implicit_u_[f] * (cn_explicit_u_[f] * state.u.comp[i].c[f] +
                                         dt * e.du.comp[i].c[f]);
        });
    parallel_for(grid_.size(), [&](std::size_t lo, std::size_t hi) {
        cplx z[3], out[3];
        for (std::size_t f = lo; f < hi; ++f) {
            const double* expl = &cn_w_[f * 2 * wb2];
            const double* impl = expl + wb2;
            for (int i = 0; i < wb; ++i) {
                cplx acc{};
                for (int j = 0; j < wb; ++j)
                    acc += expl[i * wb + j] * state.w.comp[j].c[f];
                z[i] = acc + dt * e.dw.comp[i].c[f];
            }
            for (int i = 0; i < wb; ++i) {
                cplx acc{};
                for (int j = 0; j < wb; ++j) acc += impl[i * wb + j] * z[j];
                out[i] = acc;
            }
            for (int i = 0; i < wb; ++i) state.w.comp[i].c[f] = out[i];
        }
    });
}

void Stepper::step(State& state) const {
    check_cfl(state);
    if (cfg_.scheme == Scheme::Strang)
        step_strang(state);
    else
        step_imex(state);
    finish_step(state);
}

State simulate(State initial, const ModelSpec& spec,
               const GalerkinCutoff& cutoff, const StepperConfig& cfg,
               const SimulateCallbacks& callbacks) {
    Stepper stepper(initial.u.grid, spec, cutoff, cfg);
    State s = std::move(initial);

    // Initial hygiene so the band-limit/divergence preconditions hold no
    // matter how the caller built the state.
    hermitian_symmetrize(s.u);
    hermitian_symmetrize(s.w);
    s.u = leray_project(s.u);
    apply_cutoff(s.u, cutoff);
    apply_cutoff(s.w, cutoff);

    long long nsteps = 0;
    if (cfg.t_end > s.t + 1e-12 * std::max(1.0, std::abs(s.t))) {
        nsteps = std::llround((cfg.t_end - s.t) / cfg.dt);
        if (nsteps < 1) nsteps = 1;
    }
    if (callbacks.probe) callbacks.probe(s, 0);
    for (long long step = 1; step <= nsteps; ++step) {
        stepper.step(s);
        bool last = step == nsteps;
        if (callbacks.probe &&
            ((cfg.probe_cadence > 0 && step % cfg.probe_cadence == 0) || last))
            callbacks.probe(s, std::size_t(step));
        if (callbacks.checkpoint && cfg.checkpoint_cadence > 0 &&
            (step % cfg.checkpoint_cadence == 0 || last))
            callbacks.checkpoint(s, std::size_t(step));
    }
    return s;
}

namespace {

constexpr char kCheckpointMagic[4] = {'M', 'P', 'C', 'K'};
constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace

void write_checkpoint(std::ostream& os, const State& state,
                      std::uint64_t spec_hash, std::uint64_t cfg_hash) {
    os.write(kCheckpointMagic, 4);
    auto put = [&os](const void* p, std::size_t n) {
        os.write(static_cast<const char*>(p), std::streamsize(n));
    };
    put(&kCheckpointVersion, 4);
    put(&state.t, 8);
    put(&spec_hash, 8);
    put(&cfg_hash, 8);
    write_snapshot(os, state.u);
    write_snapshot(os, state.w);
    if (!os) throw std::runtime_error("checkpoint: write failed");
}

CheckpointData read_checkpoint(std::istream& is) {
    char magic[4];
    std::uint32_t version = 0;
    CheckpointData d;
    std::uint64_t pos = 0;
    auto get = [&](void* p, std::size_t n, const char* what) {
        is.read(static_cast<char*>(p), std::streamsize(n));
        if (!is) checkpoint_fail(std::string("truncated ") + what, pos);
        pos += n;
    };
    get(magic, 4, "magic");
    if (std::string(magic, 4) != std::string(kCheckpointMagic, 4))
        checkpoint_fail("bad magic", 0);
    get(&version, 4, "version");
    if (version != kCheckpointVersion) checkpoint_fail("unsupported version", 4);
    get(&d.t, 8, "time field");
    get(&d.spec_hash, 8, "spec hash");
    get(&d.cfg_hash, 8, "config hash");
    d.u = read_snapshot(is);
    d.w = read_snapshot(is);
    return d;
}

void write_checkpoint_file(const std::string& path, const State& state,
                           std::uint64_t spec_hash, std::uint64_t cfg_hash) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path);
    write_checkpoint(os, state, spec_hash, cfg_hash);
}

CheckpointData read_checkpoint_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
    try {
        return read_checkpoint(is);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string(e.what()) + " in " + path);
    }
}

}  // namespace mps
