#pragma once
// Fourier-multiplier calculus on spectral fields: radial multipliers, the
// fractional Laplacian, exact first-order operators (gradient, divergence,
// curl, grad-div, perp-gradient), Leray projection, and dealiased advection
// via 3/2-rule zero padding.

#include <functional>
#include <string>

#include "mps/field.hpp"

namespace mps {

// Scalar function of |k| defining a diagonal multiplier. Symbols that are
// singular at the origin (negative powers, 1/g weights) must define
// eval(0) = 0 explicitly; the constructors in dissipation.hpp do so.
struct RadialSymbol {
    std::function<double(double)> eval;
    std::string label;

    double operator()(double r) const { return eval(r); }
};

SpectralScalarField apply_radial_multiplier(const SpectralScalarField& f,
                                            const RadialSymbol& m);
SpectralVectorField apply_radial_multiplier(const SpectralVectorField& f,
                                            const RadialSymbol& m);

// (-Delta)^rho, symbol |k|^{2 rho}. rho = 0 returns the input unchanged (the
// "no dissipation" convention); negative rho is rejected.
SpectralScalarField fractional_laplacian(const SpectralScalarField& f, double rho);
SpectralVectorField fractional_laplacian(const SpectralVectorField& f, double rho);

SpectralVectorField gradient(const SpectralScalarField& f);
SpectralScalarField divergence(const SpectralVectorField& v);
SpectralVectorField curl(const SpectralVectorField& v);          // 3D
SpectralScalarField curl_2d(const SpectralVectorField& v);       // i(k1 c2 - k2 c1)
SpectralVectorField perp_gradient(const SpectralScalarField& f); // (-d2, d1)
SpectralVectorField grad_div(const SpectralVectorField& v);

// Removes the gradient part: coef -= k (k.coef)/|k|^2 for k != 0; the zero
// mode (mean) passes through untouched. Output is flagged divergence-free.
SpectralVectorField leray_project(const SpectralVectorField& v);

// Velocity samples on the 3/2-dealiasing lattice, reusable across several
// advections of the same velocity within one right-hand-side evaluation.
struct PaddedVelocity {
    Grid grid;        // base grid
    int m = 0;        // padded points per axis (3n/2)
    std::vector<std::vector<double>> phys;  // dim arrays of m^dim samples
};

PaddedVelocity materialize_padded(const SpectralVectorField& u);

// (u.grad) f, alias-free for fields band-limited to [-n/2, n/2): derivatives
// are taken spectrally, both factors are zero-padded to 3n/2 points per axis,
// multiplied pointwise, transformed back and truncated to the base band.
// Output is Hermitian-symmetrized. u must be flagged divergence-free.
SpectralScalarField advect(const SpectralVectorField& u,
                           const SpectralScalarField& f);
SpectralVectorField advect(const SpectralVectorField& u,
                           const SpectralVectorField& f);
SpectralScalarField advect(const PaddedVelocity& u, const SpectralScalarField& f);
SpectralVectorField advect(const PaddedVelocity& u, const SpectralVectorField& f);

// Pointwise product h = f*g on a pad-factor lattice (default 2x), truncated
// back to the base band. Used by the commutator diagnostics.
SpectralScalarField dealiased_product(const SpectralScalarField& f,
                                      const SpectralScalarField& g,
                                      int pad_numer = 2, int pad_denom = 1);

}  // namespace mps
