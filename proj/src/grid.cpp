#include "pathvar/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pathvar {

Grid make_grid(double a, double b, int m) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("grid bounds must be finite");
    if (!(a < b))
        throw std::invalid_argument("grid requires a < b");
    if (m < 8)
        throw std::invalid_argument("grid requires m >= 8, got " + std::to_string(m));
    if (m % 2 != 0)
        throw std::invalid_argument("grid requires even m, got " + std::to_string(m));
    return Grid{a, b, m, (b - a) / m};
}

double simpson_weight(const Grid& grid, int i) {
    if (i == 0 || i == grid.m) return grid.h / 3.0;
    return (i % 2 == 1) ? 4.0 * grid.h / 3.0 : 2.0 * grid.h / 3.0;
}

} // namespace pathvar
