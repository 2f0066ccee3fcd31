#include "mps/grid.hpp"

#include <stdexcept>
#include <string>

namespace mps {

Grid make_grid(int dim, int n) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("make_grid: dim must be 2 or 3, got " +
                                    std::to_string(dim));
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("make_grid: n must be even and >= 8, got " +
                                    std::to_string(n));
    return Grid{dim, n};
}

std::size_t Grid::conjugate_index(std::size_t flat) const {
    const std::size_t un = static_cast<std::size_t>(n);
    std::size_t out = 0;
    // Peel axis indices from the fastest axis, negate each mod n, and
    // reassemble. (-i) mod n = 0 for i = 0, n - i otherwise.
    std::size_t rem = flat;
    std::size_t stride = 1;
    for (int d = 0; d < dim; ++d) {
        std::size_t i = rem % un;
        rem /= un;
        std::size_t neg = i == 0 ? 0 : un - i;
        out += neg * stride;
        stride *= un;
    }
    return out;
}

std::array<int, 3> Grid::wavevector(std::size_t flat) const {
    const std::size_t un = static_cast<std::size_t>(n);
    std::array<int, 3> k{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
        k[d] = wavenumber(static_cast<int>(flat % un));
        flat /= un;
    }
    return k;
}

}  // namespace mps
