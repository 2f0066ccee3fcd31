#include "mps/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace mps {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::size_t count = 0;
    std::mutex mtx;

    ~PlanPair() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

// One scratch-buffer plan pair per lattice shape. The planner itself is not
// thread-safe, hence the registry mutex around creation.
std::mutex g_registry_mtx;
std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> g_plans;

PlanPair& plans_for(int dim, int n) {
    std::lock_guard<std::mutex> lock(g_registry_mtx);
    auto key = std::make_pair(dim, n);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return *it->second;

    auto pp = std::make_unique<PlanPair>();
    pp->count = 1;
    for (int d = 0; d < dim; ++d) pp->count *= static_cast<std::size_t>(n);
    pp->in = fftw_alloc_complex(pp->count);
    pp->out = fftw_alloc_complex(pp->count);
    std::vector<int> shape(dim, n);
    pp->fwd = fftw_plan_dft(dim, shape.data(), pp->in, pp->out, FFTW_FORWARD,
                            FFTW_ESTIMATE);
    pp->bwd = fftw_plan_dft(dim, shape.data(), pp->in, pp->out, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
    if (!pp->fwd || !pp->bwd) throw std::runtime_error("fftw planning failed");
    auto& ref = *pp;
    g_plans.emplace(key, std::move(pp));
    return ref;
}

std::vector<cplx> execute(int dim, int n, const std::vector<cplx>& data,
                          bool forward) {
    PlanPair& pp = plans_for(dim, n);
    if (data.size() != pp.count)
        throw std::invalid_argument("fft: sample count does not match lattice");
    std::vector<cplx> result(pp.count);
    {
        std::lock_guard<std::mutex> lock(pp.mtx);
        std::memcpy(pp.in, static_cast<const void*>(data.data()),
                    pp.count * sizeof(cplx));
        fftw_execute(forward ? pp.fwd : pp.bwd);
        std::memcpy(static_cast<void*>(result.data()), pp.out,
                    pp.count * sizeof(cplx));
    }
    if (forward) {
        const double scale = 1.0 / static_cast<double>(pp.count);
        for (cplx& z : result) z *= scale;
    }
    return result;
}

// Band embedding: wavenumber k of the source lattice sits at axis index
// (k + m) % m on the destination lattice.
template <class Body>
void for_each_band_index(const Grid& g, int m, Body&& body) {
    const std::size_t um = static_cast<std::size_t>(m);
    for_each_mode(g, [&](std::size_t flat, int k1, int k2, int k3) {
        std::size_t i1 = static_cast<std::size_t>((k1 + m) % m);
        std::size_t i2 = static_cast<std::size_t>((k2 + m) % m);
        std::size_t padded = i1 * um + i2;
        if (g.dim == 3)
            padded = padded * um + static_cast<std::size_t>((k3 + m) % m);
        body(flat, padded);
    });
}

}  // namespace

std::vector<cplx> fft_forward(int dim, int n, const std::vector<cplx>& phys) {
    return execute(dim, n, phys, true);
}

std::vector<cplx> fft_backward(int dim, int n, const std::vector<cplx>& coef) {
    return execute(dim, n, coef, false);
}

SpectralScalarField transform_forward(const Grid& g,
                                      const std::vector<double>& phys) {
    if (phys.size() != g.size())
        throw std::invalid_argument("transform_forward: sample shape mismatch");
    std::vector<cplx> buf(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i) buf[i] = cplx(phys[i], 0.0);
    SpectralScalarField f(g);
    f.c = fft_forward(g.dim, g.n, buf);
    return f;
}

std::vector<double> transform_backward(const SpectralScalarField& f) {
    std::vector<cplx> phys = fft_backward(f.grid.dim, f.grid.n, f.c);
    std::vector<double> out(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i) out[i] = phys[i].real();
    return out;
}

std::vector<cplx> pad_coefficients(const SpectralScalarField& f, int m) {
    if (m < f.grid.n)
        throw std::invalid_argument("pad_coefficients: m smaller than n");
    std::size_t total = 1;
    for (int d = 0; d < f.grid.dim; ++d) total *= static_cast<std::size_t>(m);
    std::vector<cplx> padded(total, cplx(0.0, 0.0));
    for_each_band_index(f.grid, m, [&](std::size_t flat, std::size_t pidx) {
        padded[pidx] = f.c[flat];
    });
    return padded;
}

SpectralScalarField truncate_coefficients(const Grid& g, int m,
                                          const std::vector<cplx>& padded) {
    SpectralScalarField f(g);
    for_each_band_index(g, m, [&](std::size_t flat, std::size_t pidx) {
        f.c[flat] = padded[pidx];
    });
    return f;
}

std::vector<double> refined_samples(const SpectralScalarField& f, int refine) {
    const int m = f.grid.n * refine;
    std::vector<cplx> phys =
        fft_backward(f.grid.dim, m, pad_coefficients(f, m));
    std::vector<double> out(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i) out[i] = phys[i].real();
    return out;
}

}  // namespace mps
