#pragma once

#include "pathvar/lagrangian.hpp"
#include "pathvar/path.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace testutil {

inline pathvar::Path sample(const pathvar::Grid& g, int dim,
                            const std::function<std::vector<double>(double)>& f) {
    return pathvar::path_from_fn(g, dim, f);
}

/// Independent Euler-Lagrange oracle built from nodal finite differences of
/// the action. The raw per-node gradient of the discrete action carries the
/// alternating Simpson weights, so single nodes oscillate; summing adjacent
/// nodes divides the weights back out. Entry i approximates the
/// Euler-Lagrange value at the midpoint t_{i+1/2}, for i = 1..m-2. No
/// momentum path is ever formed, so this shares nothing with el_path.
inline pathvar::Path midpoint_fd_el(const pathvar::Lagrangian& lag, const pathvar::Path& gamma,
                                    double h = 1e-6) {
    using namespace pathvar;
    const Grid& g = gamma.grid();
    const int dim = gamma.dim();
    Path raw(g, dim);
    for (int i = 1; i < g.m; ++i) {
        for (int k = 0; k < dim; ++k) {
            Path plus = gamma, minus = gamma;
            plus(i, k) += h;
            minus(i, k) -= h;
            raw(i, k) = (action(lag, plus) - action(lag, minus)) / (2.0 * h);
        }
    }
    Path out(g, dim);
    for (int i = 1; i + 1 < g.m; ++i) {
        const double w = simpson_weight(g, i) + simpson_weight(g, i + 1);
        for (int k = 0; k < dim; ++k) out(i, k) = (raw(i, k) + raw(i + 1, k)) / w;
    }
    return out;
}

} // namespace testutil
