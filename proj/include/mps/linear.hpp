#pragma once
// Per-mode linear algebra for the coupled (u, w) system. The linear part of
// every model acts mode-by-mode as a small complex matrix (6x6 in 3D with
// basis (u1,u2,u3,w1,w2,w3), 3x3 in 2D with basis (u1,u2,w)); the stepper
// integrates it exactly through cached matrix exponentials.

#include <Eigen/Dense>

#include "mps/field.hpp"
#include "mps/model.hpp"

namespace mps {

// Generator of the linearized system at wavevector k != 0:
//   u rows: -(nu+kappa) m_u(|k|) I   and the curl coupling through the Leray
//           projector (the coupling is already divergence-free, so the
//           projector is a mathematical no-op kept for form),
//   w rows: curl coupling, -(gamma m_w(|k|) + 4 kappa) I, and -mu k k^T when
//           the grad-div term is present.
// Throws std::invalid_argument for k = 0; the zero mode evolves in closed
// form (mean velocity frozen, mean microrotation damped by exp(-4 kappa t))
// and is handled directly by linear_propagator.
Eigen::MatrixXcd linear_matrix(const std::array<int, 3>& k, const ModelSpec& spec);

// exp(dt * linear_matrix) by scaling-and-squaring; closed form at k = 0.
Eigen::MatrixXcd linear_propagator(const std::array<int, 3>& k,
                                   const ModelSpec& spec, double dt);

// Dense per-mode propagators for a whole grid at a fixed dt. Entry for flat
// index f occupies mats[f*block^2 ...] row-major. Time independence makes
// this a build-once table; the Strang stepper caches one per half step.
struct PropagatorTable {
    Grid grid;
    int block = 0;
    double dt = 0.0;
    std::vector<cplx> mats;
};

PropagatorTable build_propagator_table(const Grid& grid, const ModelSpec& spec,
                                       double dt);

// In-place (u, w) <- P (u, w) across all modes.
void apply_propagator(const PropagatorTable& table, SpectralVectorField& u,
                      SpectralVectorField& w);

}  // namespace mps
