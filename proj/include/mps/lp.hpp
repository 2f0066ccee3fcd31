#pragma once
// Dyadic frequency decomposition, Besov norms, and Bernstein-ratio probes.
//
// The radial bump phi is 1 on [0, 3/4], 0 on [4/3, inf), bridged by the
// standard exp(-1/x) mollifier so that with psi(r) = phi(r/2) - phi(r) the
// family telescopes: phi(r) + sum_{j=0}^{J} psi(2^{-j} r) = phi(2^{-J-1} r).
// Block j = -1 is the phi multiplier, blocks j >= 0 apply psi(2^{-j}|k|),
// and the cumulative low-pass S_j is the closed form phi(2^{-j}|k|).

#include <utility>

#include "mps/operators.hpp"

namespace mps {

struct DyadicPartition {
    RadialSymbol phi;
    RadialSymbol psi;
    int j_max = 0;  // floor(log2(n/2)) - 1: top fully resolved block
};

struct BesovIndex {
    double s = 0.0;
    double p = 2.0;  // Lebesgue exponents; infinity() allowed
    double q = 2.0;
};

DyadicPartition build_partition(const Grid& g);

// Partition evaluations independent of any grid (used by tests and the
// symbol caches).
double lp_phi(double r);
double lp_psi(double r);

SpectralScalarField dyadic_block(const DyadicPartition& p,
                                 const SpectralScalarField& f, int j);
SpectralScalarField low_pass(const DyadicPartition& p,
                             const SpectralScalarField& f, int j);
SpectralVectorField dyadic_block(const DyadicPartition& p,
                                 const SpectralVectorField& f, int j);

double besov_norm(const DyadicPartition& p, const SpectralScalarField& f,
                  const BesovIndex& idx);
double besov_norm(const DyadicPartition& p, const SpectralVectorField& f,
                  const BesovIndex& idx);

// For f frequency-supported in the annulus [3/4 * 2^j, 8/3 * 2^j] (checked;
// rejects other inputs), returns
//   first:  ||(-Delta)^alpha f||_q / (2^{2 alpha j} ||f||_q)
//   second: ||(-Delta)^alpha f||_q / (2^{2 alpha j + j d (1/p - 1/q)} ||f||_p)
std::pair<double, double> bernstein_ratio(const SpectralScalarField& f, int j,
                                          double alpha, double p, double q);

}  // namespace mps
