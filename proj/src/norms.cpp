#include "mps/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mps/fft.hpp"
#include "mps/operators.hpp"

namespace mps {

double inner_product_l2(const SpectralScalarField& f,
                        const SpectralScalarField& g) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("inner_product_l2: grid mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.c.size(); ++i)
        acc += f.c[i].real() * g.c[i].real() + f.c[i].imag() * g.c[i].imag();
    return acc;  // Re sum f conj(g); exact for Hermitian-symmetric fields
}

double inner_product_l2(const SpectralVectorField& f,
                        const SpectralVectorField& g) {
    if (f.ncomp() != g.ncomp())
        throw std::invalid_argument("inner_product_l2: component mismatch");
    double acc = 0.0;
    for (int c = 0; c < f.ncomp(); ++c)
        acc += inner_product_l2(f.comp[c], g.comp[c]);
    return acc;
}

double l2_norm(const SpectralScalarField& f) {
    return std::sqrt(inner_product_l2(f, f));
}

double l2_norm(const SpectralVectorField& f) {
    return std::sqrt(inner_product_l2(f, f));
}

namespace {

double seminorm_sq(const SpectralScalarField& f, double s) {
    double acc = 0.0;
    for_each_mode(f.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        double r2 = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        double w;
        if (r2 == 0.0)
            w = s == 0.0 ? 1.0 : 0.0;
        else
            w = s == 0.0 ? 1.0 : std::pow(r2, s);
        acc += w * std::norm(f.c[flat]);
    });
    return acc;
}

}  // namespace

double sobolev_seminorm(const SpectralScalarField& f, double s) {
    return std::sqrt(seminorm_sq(f, s));
}

double sobolev_seminorm(const SpectralVectorField& f, double s) {
    double acc = 0.0;
    for (int c = 0; c < f.ncomp(); ++c) acc += seminorm_sq(f.comp[c], s);
    return std::sqrt(acc);
}

double hs_norm(const SpectralScalarField& f, double s) {
    double a = l2_norm(f), b = sobolev_seminorm(f, s);
    return std::sqrt(a * a + b * b);
}

double hs_norm(const SpectralVectorField& f, double s) {
    double a = l2_norm(f), b = sobolev_seminorm(f, s);
    return std::sqrt(a * a + b * b);
}

namespace {

double lattice_lq(const std::vector<double>& mag2, double q, std::size_t count) {
    // mag2 holds squared pointwise magnitudes.
    if (q == std::numeric_limits<double>::infinity()) {
        double worst = 0.0;
        for (double v : mag2) worst = std::max(worst, v);
        return std::sqrt(worst);
    }
    if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
    double acc = 0.0;
    for (double v : mag2) acc += std::pow(v, 0.5 * q);
    return std::pow(acc / static_cast<double>(count), 1.0 / q);
}

}  // namespace

double lq_norm(const SpectralScalarField& f, double q) {
    std::vector<double> phys = transform_backward(f);
    for (double& v : phys) v = v * v;
    return lattice_lq(phys, q, f.grid.size());
}

double lq_norm(const SpectralVectorField& f, double q) {
    std::vector<double> mag2(f.grid.size(), 0.0);
    for (int c = 0; c < f.ncomp(); ++c) {
        std::vector<double> phys = transform_backward(f.comp[c]);
        for (std::size_t i = 0; i < phys.size(); ++i) mag2[i] += phys[i] * phys[i];
    }
    return lattice_lq(mag2, q, f.grid.size());
}

double linf_refined(const SpectralScalarField& f, int refine) {
    std::vector<double> phys = refined_samples(f, refine);
    double worst = 0.0;
    for (double v : phys) worst = std::max(worst, std::abs(v));
    return worst;
}

double linf_refined(const SpectralVectorField& f, int refine) {
    std::vector<double> mag2;
    for (int c = 0; c < f.ncomp(); ++c) {
        std::vector<double> phys = refined_samples(f.comp[c], refine);
        if (mag2.empty()) mag2.assign(phys.size(), 0.0);
        for (std::size_t i = 0; i < phys.size(); ++i) mag2[i] += phys[i] * phys[i];
    }
    double worst = 0.0;
    for (double v : mag2) worst = std::max(worst, v);
    return std::sqrt(worst);
}

double grad_linf(const SpectralVectorField& u, int refine) {
    std::vector<double> frob2;
    for (int c = 0; c < u.ncomp(); ++c) {
        SpectralVectorField g = gradient(u.comp[c]);
        for (int d = 0; d < g.ncomp(); ++d) {
            std::vector<double> phys = refined_samples(g.comp[d], refine);
            if (frob2.empty()) frob2.assign(phys.size(), 0.0);
            for (std::size_t i = 0; i < phys.size(); ++i)
                frob2[i] += phys[i] * phys[i];
        }
    }
    double worst = 0.0;
    for (double v : frob2) worst = std::max(worst, v);
    return std::sqrt(worst);
}

}  // namespace mps
