#include "mps/initial_data.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "mps/fft.hpp"
#include "mps/norms.hpp"
#include "mps/operators.hpp"

namespace mps {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Samples a closed-form function on the physical lattice and transforms.
// Exact (to roundoff) for the low-order trigonometric polynomials below.
SpectralScalarField sample_field(const Grid& g,
                                 const std::function<double(double, double,
                                                            double)>& fn) {
    std::vector<double> phys(g.size());
    const int n = g.n;
    const double h = kTwoPi / n;
    if (g.dim == 3) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    phys[idx++] = fn(h * i, h * j, h * l);
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) phys[idx++] = fn(h * i, h * j, 0.0);
    }
    return transform_forward(g, phys);
}

void scale_to_l2(SpectralVectorField& f, double amplitude) {
    double nrm = l2_norm(f);
    double s = nrm > 0.0 ? amplitude / nrm : 0.0;
    for (auto& c : f.comp)
        for (auto& z : c.c) z *= s;
}

}  // namespace

State taylor_green_state(const Grid& grid, const ModelSpec& spec,
                         double amplitude) {
    State s = make_state(grid, spec);
    double a = amplitude;
    if (grid.dim == 3) {
        s.u.comp[0] = sample_field(grid, [a](double x, double y, double z) {
            return a * std::cos(x) * std::sin(y) * std::sin(z);
        });
        s.u.comp[1] = sample_field(grid, [a](double x, double y, double z) {
            return -a * std::sin(x) * std::cos(y) * std::sin(z);
        });
        // Third component already zero.
        s.w.comp[0] = sample_field(grid, [a](double x, double y, double) {
            return a * (std::sin(y) + std::sin(x));
        });
        s.w.comp[1] = sample_field(grid, [a](double, double, double z) {
            return a * std::sin(z);
        });
        s.w.comp[2] = sample_field(grid, [a](double x, double, double) {
            return a * std::sin(x);
        });
    } else {
        s.u.comp[0] = sample_field(grid, [a](double x, double y, double) {
            return a * std::sin(x) * std::cos(y);
        });
        s.u.comp[1] = sample_field(grid, [a](double x, double y, double) {
            return -a * std::cos(x) * std::sin(y);
        });
        s.w.comp[0] = sample_field(grid, [a](double x, double y, double) {
            return a * std::sin(x) * std::sin(y);
        });
    }
    hermitian_symmetrize(s.u);
    hermitian_symmetrize(s.w);
    s.u.div_free = true;
    return s;
}

SpectralVectorField random_field(const Grid& grid, int ncomp,
                                 std::uint64_t seed, double kmax, double slope,
                                 double amplitude) {
    SpectralVectorField f(grid, ncomp);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double kmax2 = kmax * kmax;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        auto k = grid.wavevector(idx);
        double k2 =
            double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        if (k2 == 0.0 || k2 > kmax2) continue;
        double shape = std::pow(1.0 + std::sqrt(k2), slope);
        for (int a = 0; a < ncomp; ++a) {
            double re = gauss(rng);
            double im = gauss(rng);
            f.comp[a].c[idx] = shape * cplx(re, im);
        }
    }
    hermitian_symmetrize(f);
    scale_to_l2(f, amplitude);
    return f;
}

SpectralVectorField random_divfree_field(const Grid& grid, std::uint64_t seed,
                                         double kmax, double slope,
                                         double amplitude) {
    SpectralVectorField f =
        random_field(grid, grid.dim, seed, kmax, slope, 1.0);
    f = leray_project(f);
    scale_to_l2(f, amplitude);
    return f;
}

State random_state(const Grid& grid, const ModelSpec& spec, std::uint64_t seed,
                   double kmax, double slope, double amplitude) {
    State s = make_state(grid, spec);
    s.u = random_divfree_field(grid, seed, kmax, slope, amplitude);
    std::uint64_t wseed = seed ^ 0x9e3779b97f4a7c15ull;
    s.w = random_field(grid, spec.w_components(), wseed, kmax, slope, amplitude);
    return s;
}

}  // namespace mps
