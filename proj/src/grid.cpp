#include "acnsf/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace acnsf {

GridSpec make_grid(int dim, int n, double length, double pad_factor) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("spectral_core.make_grid: dim must be 2 or 3");
    if (n % 2 != 0)
        throw std::invalid_argument("spectral_core.make_grid: n must be even");
    if (n < 8)
        throw std::invalid_argument("spectral_core.make_grid: n must be >= 8");
    if (!(length > 0.0))
        throw std::invalid_argument("spectral_core.make_grid: length must be > 0");
    const bool pad_ok = std::abs(pad_factor - 1.5) < 1e-12 || std::abs(pad_factor - 2.0) < 1e-12;
    if (!pad_ok)
        throw std::invalid_argument("spectral_core.make_grid: pad_factor must be 3/2 or 2");
    GridSpec g;
    g.dim = dim;
    g.n = n;
    g.length = length;
    g.pad_factor = pad_factor;
    return g;
}

}  // namespace acnsf
