#include "mps/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "mps/fft.hpp"
#include "mps/parallel.hpp"

namespace mps {

namespace {

const cplx I(0.0, 1.0);

void require_dim(const SpectralVectorField& v, int dim, const char* who) {
    if (v.grid.dim != dim || v.ncomp() != dim)
        throw std::invalid_argument(std::string(who) + ": wrong dimension");
}

}  // namespace

SpectralScalarField apply_radial_multiplier(const SpectralScalarField& f,
                                            const RadialSymbol& m) {
    SpectralScalarField out(f.grid);
    // std::function indirection per mode is acceptable at these sizes; the
    // stepper's hot path uses cached per-mode matrices instead.
    for_each_mode(f.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        double r = std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3);
        out.c[flat] = m.eval(r) * f.c[flat];
    });
    return out;
}

SpectralVectorField apply_radial_multiplier(const SpectralVectorField& f,
                                            const RadialSymbol& m) {
    SpectralVectorField out(f.grid, f.ncomp());
    for (int c = 0; c < f.ncomp(); ++c)
        out.comp[c] = apply_radial_multiplier(f.comp[c], m);
    out.div_free = f.div_free;  // diagonal multipliers preserve k.coef = 0
    return out;
}

SpectralScalarField fractional_laplacian(const SpectralScalarField& f,
                                         double rho) {
    if (rho < 0.0)
        throw std::invalid_argument("fractional_laplacian: negative exponent");
    if (rho == 0.0) return f;
    SpectralScalarField out(f.grid);
    const double p = 2.0 * rho;
    for_each_mode(f.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        double r2 = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        out.c[flat] = r2 > 0.0 ? std::pow(r2, 0.5 * p) * f.c[flat] : cplx(0.0);
    });
    return out;
}

SpectralVectorField fractional_laplacian(const SpectralVectorField& f,
                                         double rho) {
    SpectralVectorField out(f.grid, f.ncomp());
    for (int c = 0; c < f.ncomp(); ++c)
        out.comp[c] = fractional_laplacian(f.comp[c], rho);
    out.div_free = f.div_free;
    return out;
}

SpectralVectorField gradient(const SpectralScalarField& f) {
    SpectralVectorField out(f.grid, f.grid.dim);
    for_each_mode(f.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        cplx v = I * f.c[flat];
        out.comp[0].c[flat] = double(k1) * v;
        out.comp[1].c[flat] = double(k2) * v;
        if (f.grid.dim == 3) out.comp[2].c[flat] = double(k3) * v;
    });
    return out;
}

SpectralScalarField divergence(const SpectralVectorField& v) {
    require_dim(v, v.grid.dim, "divergence");
    SpectralScalarField out(v.grid);
    for_each_mode(v.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        cplx dot = double(k1) * v.comp[0].c[flat] + double(k2) * v.comp[1].c[flat];
        if (v.grid.dim == 3) dot += double(k3) * v.comp[2].c[flat];
        out.c[flat] = I * dot;
    });
    return out;
}

SpectralVectorField curl(const SpectralVectorField& v) {
    require_dim(v, 3, "curl");
    SpectralVectorField out(v.grid, 3);
    for_each_mode(v.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        const cplx a = v.comp[0].c[flat], b = v.comp[1].c[flat],
                   c = v.comp[2].c[flat];
        out.comp[0].c[flat] = I * (double(k2) * c - double(k3) * b);
        out.comp[1].c[flat] = I * (double(k3) * a - double(k1) * c);
        out.comp[2].c[flat] = I * (double(k1) * b - double(k2) * a);
    });
    out.div_free = true;  // k.(k x a) = 0 exactly
    return out;
}

SpectralScalarField curl_2d(const SpectralVectorField& v) {
    require_dim(v, 2, "curl_2d");
    SpectralScalarField out(v.grid);
    for_each_mode(v.grid, [&](std::size_t flat, int k1, int k2, int) {
        out.c[flat] =
            I * (double(k1) * v.comp[1].c[flat] - double(k2) * v.comp[0].c[flat]);
    });
    return out;
}

SpectralVectorField perp_gradient(const SpectralScalarField& f) {
    if (f.grid.dim != 2)
        throw std::invalid_argument("perp_gradient: 2D only");
    SpectralVectorField out(f.grid, 2);
    for_each_mode(f.grid, [&](std::size_t flat, int k1, int k2, int) {
        cplx v = I * f.c[flat];
        out.comp[0].c[flat] = -double(k2) * v;
        out.comp[1].c[flat] = double(k1) * v;
    });
    out.div_free = true;  // k . (-k2, k1) = 0 exactly
    return out;
}

SpectralVectorField grad_div(const SpectralVectorField& v) {
    require_dim(v, v.grid.dim, "grad_div");
    SpectralVectorField out(v.grid, v.grid.dim);
    for_each_mode(v.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        cplx dot = double(k1) * v.comp[0].c[flat] + double(k2) * v.comp[1].c[flat];
        if (v.grid.dim == 3) dot += double(k3) * v.comp[2].c[flat];
        out.comp[0].c[flat] = -double(k1) * dot;
        out.comp[1].c[flat] = -double(k2) * dot;
        if (v.grid.dim == 3) out.comp[2].c[flat] = -double(k3) * dot;
    });
    return out;
}

SpectralVectorField leray_project(const SpectralVectorField& v) {
    require_dim(v, v.grid.dim, "leray_project");
    SpectralVectorField out(v.grid, v.grid.dim);
    for_each_mode(v.grid, [&](std::size_t flat, int k1, int k2, int k3) {
        double kk = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        if (kk == 0.0) {  // mean passes through
            for (int c = 0; c < v.grid.dim; ++c)
                out.comp[c].c[flat] = v.comp[c].c[flat];
            return;
        }
        cplx dot = double(k1) * v.comp[0].c[flat] + double(k2) * v.comp[1].c[flat];
        if (v.grid.dim == 3) dot += double(k3) * v.comp[2].c[flat];
        dot /= kk;
        out.comp[0].c[flat] = v.comp[0].c[flat] - double(k1) * dot;
        out.comp[1].c[flat] = v.comp[1].c[flat] - double(k2) * dot;
        if (v.grid.dim == 3)
            out.comp[2].c[flat] = v.comp[2].c[flat] - double(k3) * dot;
    });
    out.div_free = true;
    return out;
}

namespace {

std::vector<double> padded_physical(const SpectralScalarField& f, int m) {
    std::vector<cplx> phys = fft_backward(f.grid.dim, m, pad_coefficients(f, m));
    std::vector<double> out(phys.size());
    parallel_for(out.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = phys[i].real();
    });
    return out;
}

}  // namespace

PaddedVelocity materialize_padded(const SpectralVectorField& u) {
    if (!u.div_free)
        throw std::invalid_argument("advect: velocity not flagged divergence-free");
    require_dim(u, u.grid.dim, "advect");
    PaddedVelocity pv;
    pv.grid = u.grid;
    pv.m = 3 * u.grid.n / 2;
    pv.phys.reserve(u.grid.dim);
    for (int c = 0; c < u.grid.dim; ++c)
        pv.phys.push_back(padded_physical(u.comp[c], pv.m));
    return pv;
}

SpectralScalarField advect(const PaddedVelocity& u, const SpectralScalarField& f) {
    if (!(f.grid == u.grid)) throw std::invalid_argument("advect: grid mismatch");
    const int m = u.m;
    SpectralVectorField df = gradient(f);
    std::vector<double> acc(u.phys[0].size(), 0.0);
    for (int j = 0; j < u.grid.dim; ++j) {
        std::vector<double> dj = padded_physical(df.comp[j], m);
        parallel_for(acc.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) acc[i] += u.phys[j][i] * dj[i];
        });
    }
    std::vector<cplx> buf(acc.size());
    parallel_for(acc.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) buf[i] = cplx(acc[i], 0.0);
    });
    std::vector<cplx> coef = fft_forward(u.grid.dim, m, buf);
    SpectralScalarField out = truncate_coefficients(u.grid, m, coef);
    hermitian_symmetrize(out);
    return out;
}

SpectralVectorField advect(const PaddedVelocity& u, const SpectralVectorField& f) {
    SpectralVectorField out(f.grid, f.ncomp());
    for (int c = 0; c < f.ncomp(); ++c) out.comp[c] = advect(u, f.comp[c]);
    return out;
}

SpectralScalarField advect(const SpectralVectorField& u,
                           const SpectralScalarField& f) {
    return advect(materialize_padded(u), f);
}

SpectralVectorField advect(const SpectralVectorField& u,
                           const SpectralVectorField& f) {
    return advect(materialize_padded(u), f);
}

SpectralScalarField dealiased_product(const SpectralScalarField& f,
                                      const SpectralScalarField& g,
                                      int pad_numer, int pad_denom) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("dealiased_product: grid mismatch");
    const int m = f.grid.n * pad_numer / pad_denom;
    if (m < 3 * f.grid.n / 2)
        throw std::invalid_argument("dealiased_product: pad factor below 3/2");
    std::vector<double> pf = padded_physical(f, m);
    std::vector<double> pg = padded_physical(g, m);
    std::vector<cplx> buf(pf.size());
    parallel_for(buf.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) buf[i] = cplx(pf[i] * pg[i], 0.0);
    });
    SpectralScalarField out =
        truncate_coefficients(f.grid, m, fft_forward(f.grid.dim, m, buf));
    hermitian_symmetrize(out);
    return out;
}

}  // namespace mps
