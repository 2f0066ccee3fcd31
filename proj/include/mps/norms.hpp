#pragma once
// Inner products and norms.
//
// Convention (used consistently everywhere): integrals over the torus are
// normalized by the domain volume, i.e. "dx" means (2 pi)^{-dim} dx. With the
// forward transform carrying 1/n^dim this makes Parseval exact with constant
// exactly 1:
//     <f, g> = sum_k coef_f(k) * conj(coef_g(k)),   ||f||_2^2 = sum |coef|^2,
// coef(0) is the spatial mean, and L^q norms are lattice averages
// ((1/n^dim) sum_x |f(x)|^q)^{1/q} on the unpadded grid.
//
// All reductions are serial in storage order so results are reproducible
// bit-for-bit regardless of the thread setting.

#include "mps/field.hpp"

namespace mps {

double inner_product_l2(const SpectralScalarField& f, const SpectralScalarField& g);
double inner_product_l2(const SpectralVectorField& f, const SpectralVectorField& g);

double l2_norm(const SpectralScalarField& f);
double l2_norm(const SpectralVectorField& f);

// || Lambda^s f ||_2 = sqrt(sum_k |k|^{2s} |coef(k)|^2). The k = 0 mode
// enters with weight 1 at s = 0 (so this is the L2 norm) and weight 0
// otherwise; in particular negative s excludes the mean.
double sobolev_seminorm(const SpectralScalarField& f, double s);
double sobolev_seminorm(const SpectralVectorField& f, double s);

// Full H^s norm, sqrt(||f||_2^2 + ||Lambda^s f||_2^2).
double hs_norm(const SpectralScalarField& f, double s);
double hs_norm(const SpectralVectorField& f, double s);

// L^q on the unpadded physical lattice; q = infinity() gives the max.
// Vector fields use the pointwise Euclidean magnitude.
double lq_norm(const SpectralScalarField& f, double q);
double lq_norm(const SpectralVectorField& f, double q);

// max_x |grad u| (Frobenius over components) sampled on a refine-times finer
// lattice via zero-padded transforms, to reduce quadrature error on the max.
double grad_linf(const SpectralVectorField& u, int refine = 2);
double linf_refined(const SpectralScalarField& f, int refine = 2);
double linf_refined(const SpectralVectorField& f, int refine = 2);

}  // namespace mps
