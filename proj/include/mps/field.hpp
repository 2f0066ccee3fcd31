#pragma once
// Spectral fields: complex Fourier coefficients over a Grid. Real-valued
// physical fields are represented by Hermitian-symmetric coefficient arrays,
// coef(-k) = conj(coef(k)). Operations elsewhere treat fields as immutable
// values and return new ones.

#include <complex>
#include <vector>

#include "mps/grid.hpp"

namespace mps {

using cplx = std::complex<double>;

struct SpectralScalarField {
    Grid grid;
    std::vector<cplx> c;

    SpectralScalarField() = default;
    explicit SpectralScalarField(const Grid& g) : grid(g), c(g.size()) {}
};

// ncomp = grid.dim for velocity-like fields; microrotation in 2D is a single
// component. div_free is a caller-maintained promise checked by consumers
// that require it (advection).
struct SpectralVectorField {
    Grid grid;
    std::vector<SpectralScalarField> comp;
    bool div_free = false;

    SpectralVectorField() = default;
    SpectralVectorField(const Grid& g, int ncomp) : grid(g) {
        comp.reserve(ncomp);
        for (int i = 0; i < ncomp; ++i) comp.emplace_back(g);
    }
    int ncomp() const { return static_cast<int>(comp.size()); }
};

// Averages coef(k) with conj(coef(-k)). Idempotent; applied after every
// nonlinear evaluation so roundoff never accumulates an imaginary part.
void hermitian_symmetrize(SpectralScalarField& f);
void hermitian_symmetrize(SpectralVectorField& f);

// max_k |coef(k) - conj(coef(-k))|, an absolute asymmetry measure.
double hermitian_error(const SpectralScalarField& f);

// max_k |k . coef(k)| and max_k |coef(k)| over components, used for the
// divergence-free invariant check.
double divergence_linf(const SpectralVectorField& v);
double max_abs_coef(const SpectralVectorField& v);
double max_abs_coef(const SpectralScalarField& f);

bool has_nonfinite(const SpectralVectorField& v);

// c = a + s*b and c = s*a, elementwise over matching grids.
SpectralScalarField axpy(const SpectralScalarField& a, double s,
                         const SpectralScalarField& b);
SpectralVectorField axpy(const SpectralVectorField& a, double s,
                         const SpectralVectorField& b);
SpectralScalarField scaled(const SpectralScalarField& a, double s);
SpectralVectorField scaled(const SpectralVectorField& a, double s);

}  // namespace mps
