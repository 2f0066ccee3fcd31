#include "mps/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mps/norms.hpp"

namespace mps {

namespace {

// exp(-1/x) bridge, clamped to exact 0/1 outside (3/4, 4/3) so that block
// orthogonality Delta_j Delta_l = 0 (|j-l| >= 2) holds exactly, not just to
// rounding.
double mollifier_step(double x) {  // smooth 0 -> 1 on (0,1)
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double a = std::exp(-1.0 / x);
    double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

}  // namespace

double lp_phi(double r) {
    if (r <= 0.75) return 1.0;
    if (r >= 4.0 / 3.0) return 0.0;
    // descending bridge: 1 at 3/4, 0 at 4/3
    double t = (r - 0.75) / (4.0 / 3.0 - 0.75);
    return mollifier_step(1.0 - t);
}

double lp_psi(double r) { return lp_phi(0.5 * r) - lp_phi(r); }

DyadicPartition build_partition(const Grid& g) {
    DyadicPartition p;
    p.phi = RadialSymbol{[](double r) { return lp_phi(r); }, "phi"};
    p.psi = RadialSymbol{[](double r) { return lp_psi(r); }, "psi"};
    p.j_max = static_cast<int>(std::floor(std::log2(g.n / 2.0))) - 1;
    return p;
}

SpectralScalarField dyadic_block(const DyadicPartition& p,
                                 const SpectralScalarField& f, int j) {
    if (j < -1) {
        SpectralScalarField zero(f.grid);
        return zero;  // Delta_j = 0 for j <= -2
    }
    if (j == -1) return apply_radial_multiplier(f, p.phi);
    const double scale = std::ldexp(1.0, -j);  // 2^{-j}
    RadialSymbol m{[scale](double r) { return lp_psi(scale * r); }, "psi_j"};
    return apply_radial_multiplier(f, m);
}

SpectralScalarField low_pass(const DyadicPartition& p,
                             const SpectralScalarField& f, int j) {
    // S_j = sum_{l <= j-1} Delta_l telescopes to the phi(2^{-j} r) multiplier.
    (void)p;
    const double scale = std::ldexp(1.0, -j);
    RadialSymbol m{[scale](double r) { return lp_phi(scale * r); }, "phi_j"};
    return apply_radial_multiplier(f, m);
}

SpectralVectorField dyadic_block(const DyadicPartition& p,
                                 const SpectralVectorField& f, int j) {
    SpectralVectorField out(f.grid, f.ncomp());
    for (int c = 0; c < f.ncomp(); ++c) out.comp[c] = dyadic_block(p, f.comp[c], j);
    out.div_free = f.div_free;
    return out;
}

namespace {

template <class Field>
double besov_norm_impl(const DyadicPartition& p, const Field& f,
                       const BesovIndex& idx) {
    const double inf = std::numeric_limits<double>::infinity();
    double acc = 0.0, worst = 0.0;
    for (int j = -1; j <= p.j_max; ++j) {
        double bn = lq_norm(dyadic_block(p, f, j), idx.p);
        double weighted = std::pow(2.0, idx.s * j) * bn;
        if (idx.q == inf)
            worst = std::max(worst, weighted);
        else
            acc += std::pow(weighted, idx.q);
    }
    return idx.q == inf ? worst : std::pow(acc, 1.0 / idx.q);
}

}  // namespace

double besov_norm(const DyadicPartition& p, const SpectralScalarField& f,
                  const BesovIndex& idx) {
    return besov_norm_impl(p, f, idx);
}

double besov_norm(const DyadicPartition& p, const SpectralVectorField& f,
                  const BesovIndex& idx) {
    return besov_norm_impl(p, f, idx);
}

std::pair<double, double> bernstein_ratio(const SpectralScalarField& f, int j,
                                          double alpha, double p, double q) {
    const double lo = 0.75 * std::ldexp(1.0, j);
    const double hi = 8.0 / 3.0 * std::ldexp(1.0, j);
    double inside = 0.0, outside = 0.0;
    for_each_mode(f.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        double r = std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3);
        double a = std::abs(f.c[flat]);
        if (r < lo || r > hi)
            outside = std::max(outside, a);
        else
            inside = std::max(inside, a);
    });
    if (inside == 0.0 || outside > 1e-13 * inside)
        throw std::invalid_argument(
            "bernstein_ratio: field not localized to the level-j annulus");

    SpectralScalarField lap = fractional_laplacian(f, alpha);
    const double num = lq_norm(lap, q);
    const double den_q = lq_norm(f, q);
    const double den_p = lq_norm(f, p);
    const double d = static_cast<double>(f.grid.dim);
    const double s1 = std::pow(2.0, 2.0 * alpha * j);
    const double s2 = std::pow(2.0, 2.0 * alpha * j + j * d * (1.0 / p - 1.0 / q));
    return {num / (s1 * den_q), num / (s2 * den_p)};
}

}  // namespace mps
