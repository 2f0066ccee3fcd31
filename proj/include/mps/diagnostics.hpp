#pragma once
// Runtime verification instruments: the term-by-term L2 energy ledger, norm
// monitoring with boundedness reports, commutator and high-low inequality
// sampling, and the (alpha, beta) threshold sweep.

#include <string>
#include <vector>

#include "mps/dynamics.hpp"

namespace mps {

// One evaluation of every term in the L2 balance
//   d/dt (kinetic + micro) + dissipation_u + dissipation_w + damping
//     + graddiv - cross = 0.
struct EnergyTerms {
    double kinetic = 0.0;        // 1/2 ||u||_2^2
    double micro = 0.0;          // 1/2 ||w||_2^2
    double dissipation_u = 0.0;  // (nu+kappa) <D_u u, u>
    double dissipation_w = 0.0;  // gamma <D_w w, w>
    double damping = 0.0;        // 4 kappa ||w||_2^2
    double graddiv = 0.0;        // mu ||div w||_2^2
    double cross = 0.0;          // 2 kappa ( <curl w, u> + <curl u, w> )
};

EnergyTerms ledger_terms(const State& state, const ModelSpec& spec);

struct EnergyLedgerRow {
    double t = 0.0;
    EnergyTerms terms;
    // Centered-difference residual of the balance at interior records; NaN at
    // the two endpoints where no centered difference exists.
    double residual = 0.0;
};

// Requires at least 3 samples (the centered difference needs neighbors on
// both sides); samples must be strictly increasing in t.
std::vector<EnergyLedgerRow> energy_budget(
    const std::vector<std::pair<double, EnergyTerms>>& samples);
std::vector<EnergyLedgerRow> energy_budget(const std::vector<State>& trajectory,
                                           const ModelSpec& spec);

// Monitored exponent set: {0, 5/4, alpha+beta-1, rho, 3/2, s} where rho is
// the midpoint of the admissible interval (9/4-(alpha+beta), 1+beta) when it
// is nonempty and its right endpoint otherwise.
std::vector<double> default_sigma_list(const ModelSpec& spec, double s);

struct NormRecord {
    double t = 0.0;
    std::vector<double> sigma_u;  // ||Lambda^sigma u||_2 per configured sigma
    std::vector<double> sigma_w;
    double grad_u_inf = 0.0;      // max |grad u|, 2x-refined lattice
    double w_inf = 0.0;           // max |w|
};

NormRecord monitor_norms(const State& state, const std::vector<double>& sigmas);

struct BoundednessReport {
    bool ok = true;
    std::vector<std::string> violations;  // one line per offending series
};

// Flags every monitored series whose maximum exceeds threshold times its
// initial value; series starting at zero are skipped (no scale to compare
// against).
BoundednessReport check_bounded(const std::vector<NormRecord>& series,
                                const std::vector<double>& sigmas,
                                double threshold);

struct CommutatorSample {
    double s = 0.0;
    double lhs = 0.0;        // || [Lambda^s, f.grad] g ||_2
    double rhs_bound = 0.0;  // ||grad f||_inf ||Lambda^s g||_2
                             //   + ||Lambda^s f||_2 ||grad g||_inf
    double ratio = 0.0;      // lhs / rhs_bound, 0 when both vanish
};

// Direct evaluation Lambda^s(f.grad g) - f.grad(Lambda^s g) with all
// products on a pad-times finer lattice. f must be flagged divergence-free;
// pad < 2 is rejected ("padding insufficient").
CommutatorSample kato_ponce_sample(const SpectralVectorField& f,
                                   const SpectralScalarField& g, double s,
                                   int pad = 2);

struct HighLowBound {
    double lhs = 0.0;        // ||grad u||_inf
    double term_low = 0.0;   // ||u||_2
    double term_mid = 0.0;   // g^2(2^N) sqrt(N) || (Lambda^{5/2}/g^2) u ||_2
    double term_high = 0.0;  // 2^{N(eps2+3/4-k1)} ||Lambda^{k1+7/4-eps2} u||_2
    double ratio = 0.0;      // lhs / (sum of terms)
};

// Frequency-splitting bound on ||grad u||_inf at split level N. Requires
// k1 > eps2 + 3/4; the empirical ratio is the quantity whose stability
// across N and resolutions the harness checks.
HighLowBound highlow_gradient_bound(const SpectralVectorField& u, int n_split,
                                    const GChoice& g, double k1, double eps2);

struct SweepCell {
    double alpha = 0.0;
    double beta = 0.0;
    std::string status;              // "ok" or "abort"
    double growth_factor = 0.0;      // sup_t ||(u,w)||_{H^s} / initial
    double int_grad_u_inf = 0.0;     // trapezoid of ||grad u||_inf dt
    double int_w_inf_sq = 0.0;       // trapezoid of ||w||_inf^2 dt
};

// Runs one simulation per (alpha, beta) pair from the same initial state and
// accumulates the Gronwall-driving integrals at probe cadence. Aborted cells
// (NaN/CFL) are recorded with the metrics gathered up to the abort; they do
// not stop the sweep.
std::vector<SweepCell> threshold_sweep(
    const std::vector<std::pair<double, double>>& cells, const ModelSpec& base,
    const GalerkinCutoff& cutoff, const StepperConfig& cfg,
    const State& initial, double s_norm);

}  // namespace mps
