#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "mps/fft.hpp"
#include "mps/initial_data.hpp"
#include "mps/norms.hpp"
#include "mps/operators.hpp"
#include "mps/parallel.hpp"
#include "mps/snapshot.hpp"

using namespace mps;
using std::numbers::pi;

namespace {

// Lattice samples of a closed-form function, row-major, last axis fastest.
template <class F>
std::vector<double> sample(const Grid& g, F fn) {
    std::vector<double> out(g.size());
    const double h = 2.0 * pi / g.n;
    std::size_t idx = 0;
    if (g.dim == 2) {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j, ++idx) out[idx] = fn(h * i, h * j, 0.0);
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int l = 0; l < g.n; ++l, ++idx)
                    out[idx] = fn(h * i, h * j, h * l);
    }
    return out;
}

std::size_t flat_of(const Grid& g, int k1, int k2, int k3 = 0) {
    std::size_t found = 0;
    bool hit = false;
    for_each_mode(g, [&](std::size_t f, int a, int b, int c) {
        if (a == k1 && b == k2 && c == k3) {
            found = f;
            hit = true;
        }
    });
    REQUIRE(hit);
    return found;
}

double max_coef_diff(const SpectralScalarField& a, const SpectralScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        m = std::max(m, std::abs(a.c[i] - b.c[i]));
    return m;
}

}  // namespace

TEST_CASE("grid: wavevector mapping and conjugate pairing") {
    Grid g = make_grid(3, 8);
    CHECK(g.size() == 512);
    // Storage index i maps to wavenumber i for i < n/2 and i - n beyond.
    CHECK(g.wavenumber(0) == 0);
    CHECK(g.wavenumber(3) == 3);
    CHECK(g.wavenumber(4) == -4);
    CHECK(g.wavenumber(7) == -1);
    for_each_mode(g, [&](std::size_t f, int k1, int k2, int k3) {
        std::size_t cj = g.conjugate_index(f);
        auto kc = g.wavevector(cj);
        // Conjugate slot holds -k, with the Nyquist row mapping to itself.
        auto wrap = [&](int k) { return k == -g.n / 2 ? k : -k; };
        CHECK(kc[0] == wrap(k1));
        CHECK(kc[1] == wrap(k2));
        CHECK(kc[2] == wrap(k3));
        CHECK(g.conjugate_index(cj) == f);
    });
    CHECK_THROWS(make_grid(4, 8));
    CHECK_THROWS(make_grid(3, 7));   // odd
    CHECK_THROWS(make_grid(3, 4));   // below minimum
}

TEST_CASE("fft: forward of a bare cosine lands on the two expected modes") {
    // cos(3x) = (e^{i3x} + e^{-i3x})/2, so the forward transform (which
    // carries the 1/n^d factor) must put exactly 0.5 at k = (3,0,0) and
    // k = (-3,0,0) and nothing anywhere else.
    Grid g = make_grid(3, 16);
    auto f = transform_forward(g, sample(g, [](double x, double, double) {
                                   return std::cos(3 * x);
                               }));
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        cplx want = (std::abs(k1) == 3 && k2 == 0 && k3 == 0) ? cplx(0.5, 0.0)
                                                              : cplx(0.0, 0.0);
        CHECK(std::abs(f.c[idx] - want) < 1e-14);
    });
}

TEST_CASE("fft: round trip and Parseval on random data") {
    for (int dim : {2, 3}) {
        Grid g = make_grid(dim, dim == 2 ? 32 : 12);
        SpectralScalarField f =
            random_field(g, 1, 42 + dim, 4.0, -1.0, 0.9).comp[0];
        std::vector<double> phys = transform_backward(f);
        SpectralScalarField back = transform_forward(g, phys);
        CHECK(max_coef_diff(back, f) < 1e-13);

        double spectral = 0.0;
        for (const auto& z : f.c) spectral += std::norm(z);
        double physical = 0.0;
        for (double v : phys) physical += v * v;
        physical /= double(g.size());
        CHECK(spectral == doctest::Approx(physical).epsilon(1e-13));
    }
}

TEST_CASE("operators: exact first derivatives and vector identities") {
    Grid g = make_grid(3, 16);
    SpectralVectorField v = random_field(g, 3, 7, 5.0, -1.0, 1.0);

    SUBCASE("divergence of curl vanishes") {
        CHECK(max_abs_coef(divergence(curl(v))) < 1e-14);
    }
    SUBCASE("curl of gradient vanishes") {
        SpectralScalarField s = random_field(g, 1, 8, 5.0, -1.0, 1.0).comp[0];
        CHECK(max_abs_coef(curl(gradient(s))) < 1e-14);
    }
    SUBCASE("curl curl = grad div - Laplacian") {
        SpectralVectorField cc = curl(curl(v));
        SpectralVectorField gd = grad_div(v);
        SpectralVectorField lap = fractional_laplacian(v, 1.0);
        double err = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < cc.comp[c].c.size(); ++i)
                err = std::max(err, std::abs(cc.comp[c].c[i] -
                                             (gd.comp[c].c[i] + lap.comp[c].c[i])));
        CHECK(err < 1e-12);
    }
    SUBCASE("half-power composes to the Laplacian") {
        SpectralVectorField a = fractional_laplacian(fractional_laplacian(v, 0.5), 0.5);
        SpectralVectorField b = fractional_laplacian(v, 1.0);
        double err = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < a.comp[c].c.size(); ++i)
                err = std::max(err, std::abs(a.comp[c].c[i] - b.comp[c].c[i]));
        CHECK(err < 1e-12);
    }
    SUBCASE("exponent zero is the identity") {
        SpectralVectorField a = fractional_laplacian(v, 0.0);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < a.comp[c].c.size(); ++i)
                CHECK(a.comp[c].c[i] == v.comp[c].c[i]);
    }
}

TEST_CASE("leray: kills gradients, fixes divergence-free fields") {
    Grid g = make_grid(3, 16);
    SpectralScalarField phi = random_field(g, 1, 9, 5.0, -1.0, 1.0).comp[0];
    SpectralVectorField grad_phi = gradient(phi);
    // Pure gradients project to zero apart from the untouched mean (zero here).
    CHECK(max_abs_coef(leray_project(grad_phi)) < 1e-13);

    SpectralVectorField u = random_divfree_field(g, 10, 5.0, -1.0, 1.0);
    SpectralVectorField pu = leray_project(u);
    double err = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < u.comp[c].c.size(); ++i)
            err = std::max(err, std::abs(pu.comp[c].c[i] - u.comp[c].c[i]));
    CHECK(err < 1e-13);
    CHECK(inner_product_l2(pu, grad_phi) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("advection: hand-worked coefficients for u = (sin y, 0)") {
    // (u.grad) cos x = sin y * (-sin x) = -(cos(x-y) - cos(x+y))/2, i.e.
    // coefficient -1/4 at (1,-1) and (-1,1), +1/4 at (1,1) and (-1,-1).
    Grid g = make_grid(2, 16);
    SpectralVectorField u(g, 2);
    u.comp[0].c[flat_of(g, 0, 1)] = cplx(0.0, -0.5);   // sin y
    u.comp[0].c[flat_of(g, 0, -1)] = cplx(0.0, 0.5);
    u.div_free = true;
    SpectralScalarField f(g);
    f.c[flat_of(g, 1, 0)] = 0.5;                       // cos x
    f.c[flat_of(g, -1, 0)] = 0.5;

    SpectralScalarField a = advect(u, f);
    CHECK(std::abs(a.c[flat_of(g, 1, -1)] - cplx(-0.25, 0.0)) < 1e-14);
    CHECK(std::abs(a.c[flat_of(g, -1, 1)] - cplx(-0.25, 0.0)) < 1e-14);
    CHECK(std::abs(a.c[flat_of(g, 1, 1)] - cplx(0.25, 0.0)) < 1e-14);
    CHECK(std::abs(a.c[flat_of(g, -1, -1)] - cplx(0.25, 0.0)) < 1e-14);
    double offdiag = 0.0;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int) {
        if (std::abs(k1) == 1 && std::abs(k2) == 1) return;
        offdiag = std::max(offdiag, std::abs(a.c[idx]));
    });
    CHECK(offdiag < 1e-14);
}

TEST_CASE("advection: planar Taylor-Green self-advection is a pure gradient") {
    // For u = a (sin x cos y, -cos x sin y):
    //   (u.grad)u = (a^2/2) (sin 2x, sin 2y) = grad(-(a^2/4)(cos 2x + cos 2y)),
    // so the Leray projection of the advection vanishes: this u is a steady
    // Euler flow. Checked against the raw coefficients too.
    Grid g = make_grid(2, 32);
    ModelSpec spec{Model::Fractional2D, default_params(Model::Fractional2D)};
    State s = taylor_green_state(g, spec, 0.7);
    SpectralVectorField adv = advect(s.u, s.u);

    const double c = 0.7 * 0.7 / 2.0;
    // sin 2x has coefficient -i/2 c at (2,0) and +i/2 c at (-2,0).
    CHECK(std::abs(adv.comp[0].c[flat_of(g, 2, 0)] - cplx(0.0, -c / 2)) < 1e-13);
    CHECK(std::abs(adv.comp[0].c[flat_of(g, -2, 0)] - cplx(0.0, c / 2)) < 1e-13);
    CHECK(std::abs(adv.comp[1].c[flat_of(g, 0, 2)] - cplx(0.0, -c / 2)) < 1e-13);
    CHECK(std::abs(adv.comp[1].c[flat_of(g, 0, -2)] - cplx(0.0, c / 2)) < 1e-13);
    CHECK(max_abs_coef(leray_project(adv)) < 1e-13);
}

TEST_CASE("dealiasing: squared high mode does not fold back into the band") {
    // sin(5x)^2 = 1/2 - cos(10x)/2 on n = 16. Mode 10 is outside the stored
    // band; a naive unpadded product would alias it onto 10 - 16 = -6 with
    // coefficient -1/4. The padded product must keep -6 clean.
    Grid g = make_grid(2, 16);
    SpectralScalarField s5(g);
    s5.c[flat_of(g, 5, 0)] = cplx(0.0, -0.5);
    s5.c[flat_of(g, -5, 0)] = cplx(0.0, 0.5);
    SpectralScalarField sq = dealiased_product(s5, s5);
    CHECK(std::abs(sq.c[flat_of(g, 0, 0)] - cplx(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(sq.c[flat_of(g, -6, 0)]) < 1e-14);
    double rest = 0.0;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int) {
        if (k1 == 0 && k2 == 0) return;
        rest = std::max(rest, std::abs(sq.c[idx]));
    });
    CHECK(rest < 1e-14);
}

TEST_CASE("advection is skew against its transported scalar") {
    Grid g = make_grid(2, 32);
    for (int trial = 0; trial < 5; ++trial) {
        SpectralVectorField u =
            random_divfree_field(g, 100 + trial, 9.0, -1.5, 1.0);
        SpectralScalarField f =
            random_field(g, 1, 200 + trial, 9.0, -1.5, 1.0).comp[0];
        double ip = inner_product_l2(advect(u, f), f);
        double scale = l2_norm(advect(u, f)) * l2_norm(f) + 1e-300;
        CHECK(std::abs(ip) / scale < 1e-12);
    }
}

TEST_CASE("norms: single-mode and cosine closed forms") {
    Grid g = make_grid(3, 16);

    SUBCASE("Sobolev seminorm of one mode is |k|^s times its L2 mass") {
        // |k| = 3, s = 2.5: 3^2.5 = 15.58845726811990 (mpmath, 25 digits).
        SpectralScalarField f(g);
        f.c[flat_of(g, 3, 0, 0)] = cplx(0.2, -0.1);
        f.c[flat_of(g, -3, 0, 0)] = cplx(0.2, 0.1);
        double l2 = l2_norm(f);
        CHECK(sobolev_seminorm(f, 2.5) ==
              doctest::Approx(15.58845726811990 * l2).epsilon(1e-13));
        CHECK(hs_norm(f, 2.5) ==
              doctest::Approx(std::sqrt(1.0 + std::pow(3.0, 5.0)) * l2)
                  .epsilon(1e-13));
        CHECK(sobolev_seminorm(f, 0.0) == doctest::Approx(l2).epsilon(1e-14));
    }
    SUBCASE("lattice L4 norm of cos x") {
        // mean(cos^4) = 3/8 exactly (the lattice sum is exact for n > 4),
        // so ||cos x||_4 = (3/8)^{1/4} = 0.7825422900366437.
        SpectralScalarField f(g);
        f.c[flat_of(g, 1, 0, 0)] = 0.5;
        f.c[flat_of(g, -1, 0, 0)] = 0.5;
        CHECK(lq_norm(f, 4.0) ==
              doctest::Approx(0.7825422900366437).epsilon(1e-13));
        CHECK(lq_norm(f, 2.0) ==
              doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    }
}

TEST_CASE("norms: refined gradient max beats the coarse lattice") {
    // Two incommensurate modes put the true maximum of |f'| between coarse
    // lattice points; the 2x-refined evaluation must not fall below the
    // coarse one and must land within 2% of a dense 1e5-point scan.
    Grid g = make_grid(2, 16);
    SpectralVectorField u(g, 2);
    u.comp[0].c[flat_of(g, 1, 0)] = 0.5;                 // cos x
    u.comp[0].c[flat_of(g, -1, 0)] = 0.5;
    u.comp[0].c[flat_of(g, 3, 0)] = cplx(0.15, 0.2);     // mixed-phase mode 3
    u.comp[0].c[flat_of(g, -3, 0)] = cplx(0.15, -0.2);
    u.div_free = false;

    double truth = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double x = 2.0 * pi * i / 100000.0;
        double d = -std::sin(x) + 2.0 * std::real(cplx(0.0, 3.0) *
                                                  cplx(0.15, 0.2) *
                                                  std::exp(cplx(0.0, 3.0 * x)));
        truth = std::max(truth, std::abs(d));
    }
    double coarse = grad_linf(u, 1);
    double refined = grad_linf(u, 2);
    CHECK(refined >= coarse - 1e-12);
    CHECK(refined <= truth + 1e-12);
    CHECK(refined == doctest::Approx(truth).epsilon(0.02));
}

TEST_CASE("hermitian symmetrization produces a real field") {
    Grid g = make_grid(3, 12);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    SpectralScalarField f(g);
    for (auto& z : f.c) z = cplx(gauss(rng), gauss(rng));
    hermitian_symmetrize(f);
    CHECK(hermitian_error(f) < 1e-15);
    // A Hermitian spectrum must round-trip through the real-sample path.
    SpectralScalarField back = transform_forward(g, transform_backward(f));
    CHECK(max_coef_diff(back, f) < 1e-12);
}

TEST_CASE("snapshot: byte round trip and truncation diagnostics") {
    Grid g = make_grid(2, 16);
    SpectralVectorField v = random_field(g, 2, 77, 5.0, -1.0, 1.0);
    std::ostringstream os(std::ios::binary);
    write_snapshot(os, v);
    std::string bytes = os.str();

    std::istringstream is(bytes, std::ios::binary);
    SpectralVectorField r = read_snapshot(is);
    REQUIRE(r.grid == v.grid);
    REQUIRE(int(r.comp.size()) == 2);
    for (int c = 0; c < 2; ++c)
        CHECK(std::memcmp(r.comp[c].c.data(), v.comp[c].c.data(),
                          v.comp[c].c.size() * sizeof(cplx)) == 0);

    std::istringstream bad(bytes.substr(0, bytes.size() / 2), std::ios::binary);
    CHECK_THROWS_WITH_AS(read_snapshot(bad),
                         doctest::Contains("truncated"), std::runtime_error);
    std::string wrong = bytes;
    wrong[0] = 'X';
    std::istringstream badmagic(wrong, std::ios::binary);
    CHECK_THROWS_WITH_AS(read_snapshot(badmagic), doctest::Contains("magic"),
                         std::runtime_error);
}

TEST_CASE("parallel maps agree with serial execution") {
    std::vector<double> data(100000);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = std::sin(0.001 * i);
    std::vector<double> serial = data, parallel = data;

    set_thread_count(1);
    for (auto& v : serial) v = v * v + 1.0;
    set_thread_count(4);
    parallel_for(parallel.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            parallel[i] = parallel[i] * parallel[i] + 1.0;
    });
    set_thread_count(1);
    CHECK(std::memcmp(serial.data(), parallel.data(),
                      serial.size() * sizeof(double)) == 0);
}

TEST_CASE("transforms are invariant under thread count") {
    Grid g = make_grid(3, 16);
    SpectralVectorField v = random_divfree_field(g, 31, 5.0, -1.5, 1.0);
    set_thread_count(1);
    SpectralVectorField a1 = advect(v, v);
    double n1 = sobolev_seminorm(v, 1.7);
    set_thread_count(4);
    SpectralVectorField a4 = advect(v, v);
    double n4 = sobolev_seminorm(v, 1.7);
    set_thread_count(1);
    CHECK(n1 == n4);  // serial reduction: bitwise reproducible
    for (int c = 0; c < 3; ++c)
        CHECK(std::memcmp(a1.comp[c].c.data(), a4.comp[c].c.data(),
                          a1.comp[c].c.size() * sizeof(cplx)) == 0);
}
