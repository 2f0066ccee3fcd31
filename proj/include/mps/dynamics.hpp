#pragma once
// Time integration of the spectrally-truncated systems: sharp Galerkin
// cutoff, term-by-term right-hand sides, Strang stepping with exact linear
// propagation, an IMEX Crank-Nicolson alternative, checkpoints, and the run
// loop with probe/checkpoint callbacks.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>

#include "mps/linear.hpp"
#include "mps/model.hpp"

namespace mps {

struct State {
    double t = 0.0;
    SpectralVectorField u;  // divergence-free
    SpectralVectorField w;  // 3 components in 3D, 1 in 2D
};

// Zero state with the right component counts for the model.
State make_state(const Grid& grid, const ModelSpec& spec);

// Sharp frequency-ball cutoff: coefficients with |k| > radius are zeroed.
// The comparison is |k|^2 <= radius^2 in exact integer-vs-double arithmetic,
// so applying the cutoff twice equals applying it once, bit for bit.
struct GalerkinCutoff {
    double radius = 0.0;
    bool active = true;
};

// radius n/2 - 1: keeps the Nyquist planes empty, which the propagator and
// the Hermitian pairing both rely on.
GalerkinCutoff default_cutoff(const Grid& grid);

void apply_cutoff(SpectralScalarField& f, const GalerkinCutoff& cutoff);
void apply_cutoff(SpectralVectorField& f, const GalerkinCutoff& cutoff);

enum class Scheme { Strang, IMEX_CN };

Scheme scheme_by_label(const std::string& label);
std::string scheme_label(Scheme s);

// Additive forcing hook for manufactured-solution tests; called with zeroed
// accumulators of the right shape. Off (null) by default.
using Forcing = std::function<void(double t, SpectralVectorField& fu,
                                   SpectralVectorField& fw)>;

struct StepperConfig {
    double dt = 1e-2;
    Scheme scheme = Scheme::Strang;
    double t_end = 1.0;
    double cfl_safety = 0.9;
    // Test toggles: disable one split half to expose the other in isolation.
    bool enable_linear = true;
    bool enable_nonlinear = true;
    int probe_cadence = 10;      // steps between probe callbacks
    int checkpoint_cadence = 0;  // 0 = no periodic checkpoints
    Forcing forcing;
};

// Raised on NaN/Inf detection or CFL violation; carries a human-readable
// diagnostic with the time and step at which integration stopped.
struct SimulationAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CflViolation : SimulationAbort {
    using SimulationAbort::SimulationAbort;
};
struct NumericalAbort : SimulationAbort {
    using SimulationAbort::SimulationAbort;
};

struct RhsResult {
    SpectralVectorField du, dw;
};

// Full right-hand side, assembled term by term:
//   du = -P J_N[(u.grad)u] - (nu+kappa) D_u u + 2 kappa P curl(w)
//   dw = -J_N[(u.grad)w] - 4 kappa w - gamma D_w w + 2 kappa curl(u)
//        + mu grad(div w)
// with the 2D scalar system using the perp-gradient couplings and no
// grad-div term, and D_u, D_w the model's dissipation multipliers. The
// cutoff J_N is applied to the assembled result.
RhsResult rhs(const State& state, const ModelSpec& spec,
              const GalerkinCutoff& cutoff);

// Advection (+ forcing) only; this is the nonlinear half of the splitting.
RhsResult nonlinear_rhs(const State& state, const ModelSpec& spec,
                        const GalerkinCutoff& cutoff, const Forcing& forcing);

// Scalar potential q of the Helmholtz split F = P F + grad q for
// F = (u.grad)u - 2 kappa curl(w), from -|k|^2 q = i k . F. Note this is the
// potential of the gradient part of F, i.e. the negative of the pressure as
// it appears on the left side of the momentum equation. 3D only.
SpectralScalarField recover_pressure(const State& state, const ModelSpec& spec);

// Precomputes the per-mode propagator (Strang) or Crank-Nicolson multiplier
// tables (IMEX_CN) for one (grid, spec, dt) triple and advances states by dt.
class Stepper {
  public:
    Stepper(const Grid& grid, const ModelSpec& spec,
            const GalerkinCutoff& cutoff, const StepperConfig& cfg);

    void step(State& state) const;

    const StepperConfig& config() const { return cfg_; }
    const GalerkinCutoff& cutoff() const { return cutoff_; }

  private:
    void step_strang(State& state) const;
    void step_imex(State& state) const;
    void check_cfl(const State& state) const;
    void finish_step(State& state) const;

    Grid grid_;
    ModelSpec spec_;
    GalerkinCutoff cutoff_;
    StepperConfig cfg_;
    PropagatorTable half_;                  // Strang: exp((dt/2) A) per mode
    std::vector<double> cn_explicit_u_;     // IMEX: (1 - dt/2 d) per mode
    std::vector<double> cn_implicit_u_;     //       1/(1 + dt/2 d)
    std::vector<double> cn_w_;              // w-block 3x3 (or 1x1) pairs,
                                            // row-major [explicit | implicit]
};

struct SimulateCallbacks {
    // Probes fire at step 0, every probe_cadence steps, and the final step.
    std::function<void(const State&, std::size_t step)> probe;
    // Checkpoints fire when checkpoint_cadence > 0, at multiples of the
    // cadence and at the final step.
    std::function<void(const State&, std::size_t step)> checkpoint;
};

// Advances from initial.t to t_end in round((t_end - t)/dt) uniform steps
// (at least one when t_end > t). Errors propagate after callbacks have seen
// every completed step.
State simulate(State initial, const ModelSpec& spec,
               const GalerkinCutoff& cutoff, const StepperConfig& cfg,
               const SimulateCallbacks& callbacks = {});

// Checkpoint: "MPCK" header with time and config/spec hashes, then the two
// field snapshots. Readers get byte offsets in every parse error.
struct CheckpointData {
    double t = 0.0;
    std::uint64_t spec_hash = 0;
    std::uint64_t cfg_hash = 0;
    SpectralVectorField u, w;
};

void write_checkpoint(std::ostream& os, const State& state,
                      std::uint64_t spec_hash, std::uint64_t cfg_hash);
CheckpointData read_checkpoint(std::istream& is);
void write_checkpoint_file(const std::string& path, const State& state,
                           std::uint64_t spec_hash, std::uint64_t cfg_hash);
CheckpointData read_checkpoint_file(const std::string& path);

}  // namespace mps
