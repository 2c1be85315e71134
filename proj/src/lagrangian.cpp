#include "pathvar/lagrangian.hpp"

#include "pathvar/errors.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

namespace pathvar {

namespace {

constexpr double kSpeedFloor = 1e-12;

double fd_step(double coord) {
    static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
    return base * std::max(1.0, std::fabs(coord));
}

Lagrangian::GradFn synthesize_grad(const Lagrangian::EvalFn& eval, int dim, bool wrt_xdot) {
    return [eval, dim, wrt_xdot](std::span<const double> x, std::span<const double> xdot,
                                 double t, std::span<double> out) {
        std::vector<double> xp(x.begin(), x.end());
        std::vector<double> vp(xdot.begin(), xdot.end());
        std::vector<double>& target = wrt_xdot ? vp : xp;
        for (int k = 0; k < dim; ++k) {
            const double saved = target[k];
            const double h = fd_step(saved);
            target[k] = saved + h;
            const double fp = eval(xp, vp, t);
            target[k] = saved - h;
            const double fm = eval(xp, vp, t);
            target[k] = saved;
            out[k] = (fp - fm) / (2.0 * h);
        }
    };
}

double speed(std::span<const double> v) {
    double s2 = 0.0;
    for (double c : v) s2 += c * c;
    return std::sqrt(s2);
}

} // namespace

Lagrangian Lagrangian::with_analytic(int dim, EvalFn eval, GradFn grad_x, GradFn grad_xdot,
                                     GuardFn guard) {
    if (dim < 1) throw std::invalid_argument("Lagrangian dimension must be >= 1");
    if (!eval || !grad_x || !grad_xdot)
        throw std::invalid_argument("analytic Lagrangian needs eval and both gradients");
    Lagrangian l;
    l.dim_ = dim;
    l.mode_ = Partials::analytic;
    l.eval_ = std::move(eval);
    l.grad_x_ = std::move(grad_x);
    l.grad_xdot_ = std::move(grad_xdot);
    l.guard_ = std::move(guard);
    return l;
}

Lagrangian Lagrangian::with_fd_partials(int dim, EvalFn eval, GuardFn guard) {
    if (dim < 1) throw std::invalid_argument("Lagrangian dimension must be >= 1");
    if (!eval) throw std::invalid_argument("Lagrangian needs an evaluator");
    Lagrangian l;
    l.dim_ = dim;
    l.mode_ = Partials::finite_difference;
    l.eval_ = eval;
    l.grad_x_ = synthesize_grad(eval, dim, false);
    l.grad_xdot_ = synthesize_grad(eval, dim, true);
    l.guard_ = std::move(guard);
    return l;
}

Lagrangian euclidean_length() {
    auto guard = [](std::span<const double>, std::span<const double> v,
                    double) -> std::optional<std::string> {
        if (speed(v) < kSpeedFloor) return "zero speed";
        return std::nullopt;
    };
    return Lagrangian::with_analytic(
        2,
        [](std::span<const double>, std::span<const double> v, double) {
            return std::hypot(v[0], v[1]);
        },
        [](std::span<const double>, std::span<const double>, double, std::span<double> out) {
            out[0] = 0.0;
            out[1] = 0.0;
        },
        [](std::span<const double>, std::span<const double> v, double, std::span<double> out) {
            const double s = std::hypot(v[0], v[1]);
            out[0] = v[0] / s;
            out[1] = v[1] / s;
        },
        guard);
}

Lagrangian hyperbolic_length() {
    auto guard = [](std::span<const double> x, std::span<const double> v,
                    double) -> std::optional<std::string> {
        if (!(x[1] > 0.0)) return "y <= 0";
        if (speed(v) < kSpeedFloor) return "zero speed";
        return std::nullopt;
    };
    return Lagrangian::with_analytic(
        2,
        [](std::span<const double> x, std::span<const double> v, double) {
            return std::hypot(v[0], v[1]) / x[1];
        },
        [](std::span<const double> x, std::span<const double> v, double, std::span<double> out) {
            out[0] = 0.0;
            out[1] = -std::hypot(v[0], v[1]) / (x[1] * x[1]);
        },
        [](std::span<const double> x, std::span<const double> v, double, std::span<double> out) {
            const double s = std::hypot(v[0], v[1]);
            out[0] = v[0] / (x[1] * s);
            out[1] = v[1] / (x[1] * s);
        },
        guard);
}

Lagrangian euclidean_length_3d() {
    auto guard = [](std::span<const double>, std::span<const double> v,
                    double) -> std::optional<std::string> {
        if (speed(v) < kSpeedFloor) return "zero speed";
        return std::nullopt;
    };
    return Lagrangian::with_analytic(
        3,
        [](std::span<const double>, std::span<const double> v, double) {
            return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        },
        [](std::span<const double>, std::span<const double>, double, std::span<double> out) {
            out[0] = out[1] = out[2] = 0.0;
        },
        [](std::span<const double>, std::span<const double> v, double, std::span<double> out) {
            const double s = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            out[0] = v[0] / s;
            out[1] = v[1] / s;
            out[2] = v[2] / s;
        },
        guard);
}

Lagrangian green_area() {
    return Lagrangian::with_analytic(
        2,
        [](std::span<const double> x, std::span<const double> v, double) {
            return 0.5 * (x[0] * v[1] - v[0] * x[1]);
        },
        [](std::span<const double>, std::span<const double> v, double, std::span<double> out) {
            out[0] = 0.5 * v[1];
            out[1] = -0.5 * v[0];
        },
        [](std::span<const double> x, std::span<const double>, double, std::span<double> out) {
            out[0] = -0.5 * x[1];
            out[1] = 0.5 * x[0];
        });
}

Lagrangian projectile(double g) {
    if (!std::isfinite(g)) throw std::invalid_argument("projectile: g must be finite");
    return Lagrangian::with_analytic(
        2,
        [g](std::span<const double> x, std::span<const double> v, double) {
            return 0.5 * (v[0] * v[0] + v[1] * v[1]) - g * x[1];
        },
        [g](std::span<const double>, std::span<const double>, double, std::span<double> out) {
            out[0] = 0.0;
            out[1] = -g;
        },
        [](std::span<const double>, std::span<const double> v, double, std::span<double> out) {
            out[0] = v[0];
            out[1] = v[1];
        });
}

Lagrangian oscillator() {
    return Lagrangian::with_analytic(
        1,
        [](std::span<const double> x, std::span<const double> v, double) {
            return 0.5 * v[0] * v[0] - 0.5 * x[0] * x[0];
        },
        [](std::span<const double> x, std::span<const double>, double, std::span<double> out) {
            out[0] = -x[0];
        },
        [](std::span<const double>, std::span<const double> v, double, std::span<double> out) {
            out[0] = v[0];
        });
}

namespace {

// Simpson on the fixed y-grid of the density. Both the loss integrand and
// its q-partial share this loop.
double density_integral(const DensityFn& d, double x,
                        const std::function<double(double y, double p)>& term) {
    const int n = d.y_nodes;
    const double h = 1.0 / n;
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double y = j * h;
        const double p = d.p(x, y);
        if (!(p >= 0.0))
            throw std::domain_error("density is negative at (x=" + std::to_string(x) +
                                    ", y=" + std::to_string(y) + ")");
        const double w = (j == 0 || j == n) ? h / 3.0 : ((j % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
        acc += w * term(y, p);
    }
    return acc;
}

} // namespace

Lagrangian squared_loss(DensityFn density) {
    if (!density.p) throw std::invalid_argument("squared_loss: density function required");
    if (density.y_nodes < 8 || density.y_nodes % 2 != 0)
        throw std::invalid_argument("squared_loss: y_nodes must be even and >= 8");
    auto d = std::make_shared<DensityFn>(std::move(density));
    return Lagrangian::with_analytic(
        1,
        [d](std::span<const double> x, std::span<const double>, double t) {
            const double q = x[0];
            return density_integral(*d, t, [q](double y, double p) {
                return (q - y) * (q - y) * p;
            });
        },
        [d](std::span<const double> x, std::span<const double>, double t, std::span<double> out) {
            const double q = x[0];
            out[0] = density_integral(*d, t, [q](double y, double p) {
                return 2.0 * (q - y) * p;
            });
        },
        [](std::span<const double>, std::span<const double>, double, std::span<double> out) {
            out[0] = 0.0;
        });
}

Lagrangian builtin(const std::string& id, const BuiltinParams& params) {
    if (id == "euclidean") return euclidean_length();
    if (id == "hyperbolic") return hyperbolic_length();
    if (id == "spherical") return euclidean_length_3d();
    if (id == "isoperimetric") return green_area();
    if (id == "projectile") return projectile(params.g);
    if (id == "oscillator") return oscillator();
    if (id == "regression") {
        if (params.density) return squared_loss(*params.density);
        return squared_loss(DensityFn{[](double, double) { return 1.0; }, 64});
    }
    throw std::invalid_argument("unknown scenario '" + id + "'");
}

Lagrangian sum(const Lagrangian& a, const Lagrangian& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sum: dimension mismatch");
    const int dim = a.dim();
    auto guard = [a, b](std::span<const double> x, std::span<const double> v,
                        double t) -> std::optional<std::string> {
        if (auto r = a.guard_reason(x, v, t)) return r;
        return b.guard_reason(x, v, t);
    };
    auto combine = [dim](auto&& ga, auto&& gb) {
        return [ga, gb, dim](std::span<const double> x, std::span<const double> v, double t,
                             std::span<double> out) {
            std::vector<double> tmp(dim);
            ga(x, v, t, out);
            gb(x, v, t, std::span<double>(tmp));
            for (int k = 0; k < dim; ++k) out[k] += tmp[k];
        };
    };
    auto eval = [a, b](std::span<const double> x, std::span<const double> v, double t) {
        return a.eval(x, v, t) + b.eval(x, v, t);
    };
    auto gx = combine([a](auto x, auto v, double t, auto o) { a.grad_x(x, v, t, o); },
                      [b](auto x, auto v, double t, auto o) { b.grad_x(x, v, t, o); });
    auto gxd = combine([a](auto x, auto v, double t, auto o) { a.grad_xdot(x, v, t, o); },
                       [b](auto x, auto v, double t, auto o) { b.grad_xdot(x, v, t, o); });
    if (a.partials_mode() == Lagrangian::Partials::analytic &&
        b.partials_mode() == Lagrangian::Partials::analytic)
        return Lagrangian::with_analytic(dim, eval, gx, gxd, guard);
    return Lagrangian::with_fd_partials(dim, eval, guard);
}

Lagrangian scaled(double c, const Lagrangian& lag) {
    const int dim = lag.dim();
    auto guard = [lag](std::span<const double> x, std::span<const double> v, double t) {
        return lag.guard_reason(x, v, t);
    };
    auto eval = [c, lag](std::span<const double> x, std::span<const double> v, double t) {
        return c * lag.eval(x, v, t);
    };
    auto gx = [c, lag, dim](std::span<const double> x, std::span<const double> v, double t,
                            std::span<double> out) {
        lag.grad_x(x, v, t, out);
        for (int k = 0; k < dim; ++k) out[k] *= c;
    };
    auto gxd = [c, lag, dim](std::span<const double> x, std::span<const double> v, double t,
                             std::span<double> out) {
        lag.grad_xdot(x, v, t, out);
        for (int k = 0; k < dim; ++k) out[k] *= c;
    };
    if (lag.partials_mode() == Lagrangian::Partials::analytic)
        return Lagrangian::with_analytic(dim, eval, gx, gxd, guard);
    return Lagrangian::with_fd_partials(dim, eval, guard);
}

double action(const Lagrangian& lag, const Path& path) {
    if (lag.dim() != path.dim())
        throw std::invalid_argument("action: Lagrangian dim " + std::to_string(lag.dim()) +
                                    " vs path dim " + std::to_string(path.dim()));
    const Grid& g = path.grid();
    const Path dpath = derivative(path);
    if (lag.has_guard()) {
        for (int i = 0; i <= g.m; ++i) {
            if (auto reason = lag.guard_reason(path.node(i), dpath.node(i), g.node(i)))
                throw GuardError(i, g.node(i), *reason);
        }
    }
    double acc = 0.0;
    for (int i = 0; i <= g.m; ++i)
        acc += simpson_weight(g, i) * lag.eval(path.node(i), dpath.node(i), g.node(i));
    return acc;
}

double partials_check(const Lagrangian& lag, std::span<const double> x,
                      std::span<const double> xdot, double t) {
    const int dim = lag.dim();
    std::vector<double> analytic(dim), numeric(dim);
    auto eval = [&lag](std::span<const double> xs, std::span<const double> vs, double ts) {
        return lag.eval(xs, vs, ts);
    };
    double worst = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const bool wrt_xdot = pass == 1;
        if (wrt_xdot)
            lag.grad_xdot(x, xdot, t, analytic);
        else
            lag.grad_x(x, xdot, t, analytic);
        synthesize_grad(eval, dim, wrt_xdot)(x, xdot, t, numeric);
        for (int k = 0; k < dim; ++k)
            worst = std::max(worst, std::fabs(analytic[k] - numeric[k]));
    }
    return worst;
}

} // namespace pathvar
