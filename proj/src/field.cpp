#include "mps/field.hpp"

#include <cmath>
#include <stdexcept>

#include "mps/parallel.hpp"

namespace mps {

void hermitian_symmetrize(SpectralScalarField& f) {
    const Grid& g = f.grid;
    auto& c = f.c;
    // Each unordered pair {k, -k} is touched once (flat <= conj partner), so
    // chunked parallel execution writes disjoint locations... except pairs
    // straddling a chunk boundary. Keep this serial; it is a single sweep.
    const std::size_t nmodes = g.size();
    for (std::size_t i = 0; i < nmodes; ++i) {
        std::size_t j = g.conjugate_index(i);
        if (j < i) continue;
        if (j == i) {
            c[i] = cplx(c[i].real(), 0.0);  // self-conjugate mode is real
        } else {
            cplx avg = 0.5 * (c[i] + std::conj(c[j]));
            c[i] = avg;
            c[j] = std::conj(avg);
        }
    }
}

void hermitian_symmetrize(SpectralVectorField& f) {
    for (auto& comp : f.comp) hermitian_symmetrize(comp);
}

double hermitian_error(const SpectralScalarField& f) {
    double worst = 0.0;
    const std::size_t nmodes = f.grid.size();
    for (std::size_t i = 0; i < nmodes; ++i) {
        std::size_t j = f.grid.conjugate_index(i);
        worst = std::max(worst, std::abs(f.c[i] - std::conj(f.c[j])));
    }
    return worst;
}

double divergence_linf(const SpectralVectorField& v) {
    if (v.ncomp() != v.grid.dim)
        throw std::invalid_argument("divergence_linf: needs dim components");
    double worst = 0.0;
    for_each_mode(v.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        cplx dot = static_cast<double>(k1) * v.comp[0].c[flat] +
                   static_cast<double>(k2) * v.comp[1].c[flat];
        if (v.grid.dim == 3) dot += static_cast<double>(k3) * v.comp[2].c[flat];
        worst = std::max(worst, std::abs(dot));
    });
    return worst;
}

double max_abs_coef(const SpectralScalarField& f) {
    double worst = 0.0;
    for (const cplx& z : f.c) worst = std::max(worst, std::abs(z));
    return worst;
}

double max_abs_coef(const SpectralVectorField& v) {
    double worst = 0.0;
    for (const auto& comp : v.comp) worst = std::max(worst, max_abs_coef(comp));
    return worst;
}

bool has_nonfinite(const SpectralVectorField& v) {
    for (const auto& comp : v.comp)
        for (const cplx& z : comp.c)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return true;
    return false;
}

SpectralScalarField axpy(const SpectralScalarField& a, double s,
                         const SpectralScalarField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("axpy: grid mismatch");
    SpectralScalarField out(a.grid);
    parallel_for(out.c.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out.c[i] = a.c[i] + s * b.c[i];
    });
    return out;
}

SpectralVectorField axpy(const SpectralVectorField& a, double s,
                         const SpectralVectorField& b) {
    if (a.ncomp() != b.ncomp())
        throw std::invalid_argument("axpy: component mismatch");
    SpectralVectorField out(a.grid, a.ncomp());
    for (int m = 0; m < a.ncomp(); ++m) out.comp[m] = axpy(a.comp[m], s, b.comp[m]);
    out.div_free = a.div_free && b.div_free;
    return out;
}

SpectralScalarField scaled(const SpectralScalarField& a, double s) {
    SpectralScalarField out(a.grid);
    parallel_for(out.c.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out.c[i] = s * a.c[i];
    });
    return out;
}

SpectralVectorField scaled(const SpectralVectorField& a, double s) {
    SpectralVectorField out(a.grid, a.ncomp());
    for (int m = 0; m < a.ncomp(); ++m) out.comp[m] = scaled(a.comp[m], s);
    out.div_free = a.div_free;
    return out;
}

}  // namespace mps
