#pragma once
// Uniform lattice on the 2*pi-periodic torus in 2 or 3 dimensions.
// Wavevectors run over the integer lattice [-n/2, n/2)^dim; because every
// axis has length 2*pi, lattice wavenumbers and physical wavenumbers
// coincide. Coefficient storage is row-major with the last axis fastest,
// matching FFTW's default layout. Axis index i maps to wavenumber
// k = i < n/2 ? i : i - n.

#include <array>
#include <cstddef>

namespace mps {

struct Grid {
    int dim = 3;
    int n = 8;  // points per axis; even, >= 8

    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }

    int wavenumber(int axis_index) const {
        return axis_index < n / 2 ? axis_index : axis_index - n;
    }

    // Flat index of the conjugate mode -k (mod n on every axis). Used to
    // enforce Hermitian symmetry of real fields.
    std::size_t conjugate_index(std::size_t flat) const;

    std::array<int, 3> wavevector(std::size_t flat) const;  // k3 = 0 in 2D

    bool operator==(const Grid& o) const { return dim == o.dim && n == o.n; }
};

Grid make_grid(int dim, int n);

// Visits every mode in storage order: fn(flat, k1, k2, k3) with k3 = 0 in 2D.
template <class F>
void for_each_mode(const Grid& g, F&& fn) {
    std::size_t flat = 0;
    if (g.dim == 2) {
        for (int i1 = 0; i1 < g.n; ++i1) {
            int k1 = g.wavenumber(i1);
            for (int i2 = 0; i2 < g.n; ++i2, ++flat)
                fn(flat, k1, g.wavenumber(i2), 0);
        }
    } else {
        for (int i1 = 0; i1 < g.n; ++i1) {
            int k1 = g.wavenumber(i1);
            for (int i2 = 0; i2 < g.n; ++i2) {
                int k2 = g.wavenumber(i2);
                for (int i3 = 0; i3 < g.n; ++i3, ++flat)
                    fn(flat, k1, k2, g.wavenumber(i3));
            }
        }
    }
}

}  // namespace mps
