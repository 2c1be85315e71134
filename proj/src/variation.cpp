#include "pathvar/variation.hpp"

#include "pathvar/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace pathvar {

ELPath el_path(const Lagrangian& lag, const Path& gamma) {
    if (lag.dim() != gamma.dim())
        throw std::invalid_argument("el_path: Lagrangian dim " + std::to_string(lag.dim()) +
                                    " vs path dim " + std::to_string(gamma.dim()));
    const Grid& g = gamma.grid();
    const int dim = gamma.dim();
    const Path dgamma = derivative(gamma);

    if (lag.has_guard()) {
        for (int i = 0; i <= g.m; ++i) {
            if (auto reason = lag.guard_reason(gamma.node(i), dgamma.node(i), g.node(i)))
                throw GuardError(i, g.node(i), *reason);
        }
    }

    Path position_grad(g, dim);
    Path momentum(g, dim);
    for (int i = 0; i <= g.m; ++i) {
        lag.grad_x(gamma.node(i), dgamma.node(i), g.node(i), position_grad.node(i));
        lag.grad_xdot(gamma.node(i), dgamma.node(i), g.node(i), momentum.node(i));
    }
    Path el = linear_combine(1.0, position_grad, -1.0, derivative(momentum));
    for (double v : el.samples())
        if (!std::isfinite(v))
            throw std::runtime_error("el_path: non-finite Euler-Lagrange value");

    double source = 0.0;
    for (int i = 0; i <= g.m; ++i)
        source += simpson_weight(g, i) * lag.eval(gamma.node(i), dgamma.node(i), g.node(i));
    return ELPath{std::move(el), source};
}

double pair_gradient(const ELPath& el, const Direction& eta) {
    return inner_product(el.path, eta.path());
}

double fd_directional(const Lagrangian& lag, const Path& gamma, const Direction& eta,
                      double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_directional: step must be positive");
    double plus = 0.0, minus = 0.0;
    try {
        plus = action(lag, linear_combine(1.0, gamma, h, eta.path()));
    } catch (const GuardError& e) {
        throw GuardError(e.node(), e.t(), "+h perturbation: " + e.reason());
    }
    try {
        minus = action(lag, linear_combine(1.0, gamma, -h, eta.path()));
    } catch (const GuardError& e) {
        throw GuardError(e.node(), e.t(), "-h perturbation: " + e.reason());
    }
    return (plus - minus) / (2.0 * h);
}

double stationarity_residual(const Lagrangian& lag, const Path& gamma) {
    return sup_norm(el_path(lag, gamma).path, /*interior_only=*/true);
}

} // namespace pathvar
