#pragma once
// FFTW-backed transforms. Convention: the forward transform carries the full
// 1/n^dim factor, so coef(0) is the spatial mean and backward(forward(f)) = f.
// Plans use FFTW_ESTIMATE and dedicated scratch buffers behind a mutex; FFTW
// threading stays off, so transform results are identical for any --threads
// setting.

#include <vector>

#include "mps/field.hpp"

namespace mps {

// Raw c2c transforms on an n^dim lattice (n need not come from a Grid; the
// padded dealiasing lattices use m = 3n/2 etc.). Forward includes 1/n^dim.
std::vector<cplx> fft_forward(int dim, int n, const std::vector<cplx>& phys);
std::vector<cplx> fft_backward(int dim, int n, const std::vector<cplx>& coef);

// Real-field entry points per the field representation contract.
SpectralScalarField transform_forward(const Grid& g,
                                      const std::vector<double>& phys);
std::vector<double> transform_backward(const SpectralScalarField& f);

// Copies the [-n/2, n/2) coefficient band into the matching band of an
// m-point lattice (m >= n), zeroing everything else, and the reverse.
std::vector<cplx> pad_coefficients(const SpectralScalarField& f, int m);
SpectralScalarField truncate_coefficients(const Grid& g, int m,
                                          const std::vector<cplx>& padded);

// Physical samples of f on a refine*n lattice via zero-padded backward
// transform; used for L^inf quadrature on a finer grid.
std::vector<double> refined_samples(const SpectralScalarField& f, int refine);

}  // namespace mps
