#pragma once
// Initial data: deterministic trigonometric fields and seeded random
// band-limited fields. Everything here is reproducible bit for bit from the
// (grid, seed, kmax, slope) tuple; draws happen in storage order from a
// single mt19937_64 stream.

#include <cstdint>

#include "mps/dynamics.hpp"

namespace mps {

// 3D: u = a (cos x sin y sin z, -sin x cos y sin z, 0) with a companion w
// chosen to have nonzero curl and nonzero divergence, so the curl couplings,
// the damping, and the grad-div term are all exercised from t = 0.
// 2D: u = a (sin x cos y, -cos x sin y), w = a sin x sin y.
State taylor_green_state(const Grid& grid, const ModelSpec& spec,
                         double amplitude);

// Gaussian coefficients shaped by (1+|k|)^slope on 0 < |k| <= kmax, then
// Hermitian symmetrization, Leray projection (div_free = true), and scaling
// to the requested L2 norm. amplitude = 0 gives the zero field.
SpectralVectorField random_divfree_field(const Grid& grid, std::uint64_t seed,
                                         double kmax, double slope,
                                         double amplitude);

// Same construction without the projection, for microrotation-like fields.
SpectralVectorField random_field(const Grid& grid, int ncomp,
                                 std::uint64_t seed, double kmax, double slope,
                                 double amplitude);

// Pairs a divergence-free u (stream `seed`) with a w of the model's
// component count (stream derived from seed), both at the same amplitude.
State random_state(const Grid& grid, const ModelSpec& spec, std::uint64_t seed,
                   double kmax, double slope, double amplitude);

}  // namespace mps
