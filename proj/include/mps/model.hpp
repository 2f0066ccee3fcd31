#pragma once
// Identification of the six equation systems and their coefficients. A
// ModelSpec owns everything the right-hand side needs to know: spatial
// dimension, scalar-vs-vector microrotation, which dissipation multiplier
// acts on each field, and the coupling coefficients.

#include <cstdint>
#include <string>
#include <string_view>

#include "mps/dissipation.hpp"

namespace mps {

// The six systems. All are posed on the periodic box; the velocity is always
// divergence-free and couples to the microrotation through curl terms.
//
//   Classical3D    full Laplacian dissipation on both fields
//   Fractional3D   (-Delta)^alpha on u, (-Delta)^beta on w
//   Fractional2D   scalar microrotation, perp-gradient coupling, no grad-div
//   LogNoAngular   log-weakened |k|^{2a}/g^2 on u, no dissipation on w
//   LogWithAngular log-weakened on u, plain (-Delta)^beta on w
//   NoGradDiv      (-Delta)^alpha on u only; w keeps damping and curl coupling
enum class Model {
    Classical3D,
    Fractional3D,
    Fractional2D,
    LogNoAngular,
    LogWithAngular,
    NoGradDiv,
};

std::string model_label(Model m);
Model model_by_label(const std::string& label);

struct PhysicalParams {
    double nu = 0.5;     // kinematic viscosity
    double kappa = 0.5;  // microrotation coupling viscosity
    double gamma = 1.0;  // angular viscosity on the w dissipation term
    double mu = 1.0;     // grad-div angular viscosity
    double alpha = 1.25; // velocity dissipation exponent
    double beta = 0.5;   // microrotation dissipation exponent
    std::optional<GChoice> g;  // log weight, required by the two log models
};

struct ModelSpec {
    Model model = Model::Fractional3D;
    PhysicalParams params;

    int dim() const;
    bool w_scalar() const;       // true only for Fractional2D
    int w_components() const;    // 3 in 3D, 1 in 2D
    bool has_graddiv() const;    // grad-div term present in the w equation

    // Dissipation multipliers without their scalar viscosities; the RHS
    // applies (nu+kappa) and gamma on top. Kind::None for the models whose
    // microrotation equation carries damping only.
    DissipationSpec u_dissipation() const;
    DissipationSpec w_dissipation() const;

    double damping_coef() const { return 4.0 * params.kappa; }
    double cross_coef() const { return 2.0 * params.kappa; }

    // Throws std::invalid_argument on out-of-range coefficients or a missing
    // g weight for the log models.
    void validate() const;

    // Canonical key=value rendering of the model and coefficients, used for
    // hashing into checkpoint headers and run summaries.
    std::string describe() const;
};

// Coefficient choices matching the normalization the analysis uses
// (nu = kappa = 1/2, gamma = mu = 1), with the forced zeros for the reduced
// systems: NoGradDiv drops gamma and mu, LogNoAngular drops gamma. The log
// models default to the g1 weight; alpha defaults to 5/4 except LogNoAngular
// which needs 7/4.
PhysicalParams default_params(Model m);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace mps
