#pragma once

#include "pathvar/path.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace pathvar {

/// Evaluator bundle for a Lagrangian L(x, xdot, t) with its first partials.
///
/// When built with with_fd_partials the gradients are synthesized by
/// central differences from eval (step = cbrt(machine epsilon) scaled per
/// coordinate). The optional domain guard returns a reason string where L
/// is singular (zero speed, y <= 0, ...); absence of a guard means L is
/// defined everywhere. Evaluators must be pure; Lagrangian values are
/// freely shareable across threads.
class Lagrangian {
public:
    enum class Partials { analytic, finite_difference };

    using EvalFn = std::function<double(std::span<const double> x,
                                        std::span<const double> xdot, double t)>;
    using GradFn = std::function<void(std::span<const double> x,
                                      std::span<const double> xdot, double t,
                                      std::span<double> out)>;
    /// Returns a rejection reason, or nullopt when (x, xdot, t) is admissible.
    using GuardFn = std::function<std::optional<std::string>(
        std::span<const double> x, std::span<const double> xdot, double t)>;

    static Lagrangian with_analytic(int dim, EvalFn eval, GradFn grad_x,
                                    GradFn grad_xdot, GuardFn guard = {});
    static Lagrangian with_fd_partials(int dim, EvalFn eval, GuardFn guard = {});

    int dim() const { return dim_; }
    Partials partials_mode() const { return mode_; }
    bool has_guard() const { return static_cast<bool>(guard_); }

    double eval(std::span<const double> x, std::span<const double> xdot, double t) const {
        return eval_(x, xdot, t);
    }
    void grad_x(std::span<const double> x, std::span<const double> xdot, double t,
                std::span<double> out) const {
        grad_x_(x, xdot, t, out);
    }
    void grad_xdot(std::span<const double> x, std::span<const double> xdot, double t,
                   std::span<double> out) const {
        grad_xdot_(x, xdot, t, out);
    }

    /// Rejection reason at (x, xdot, t), or nullopt when admissible.
    std::optional<std::string> guard_reason(std::span<const double> x,
                                            std::span<const double> xdot, double t) const {
        if (!guard_) return std::nullopt;
        return guard_(x, xdot, t);
    }

private:
    Lagrangian() = default;
    int dim_ = 1;
    Partials mode_ = Partials::analytic;
    EvalFn eval_;
    GradFn grad_x_, grad_xdot_;
    GuardFn guard_;
};

/// Joint density on [0,1]^2 for the expected-loss Lagrangian. The inner
/// y-integral uses composite Simpson on y_nodes intervals (even, >= 8).
struct DensityFn {
    std::function<double(double x, double y)> p;
    int y_nodes = 64;
};

// Built-in Lagrangians.
Lagrangian euclidean_length();               // N=2, L = |xdot|, guard: zero speed
Lagrangian hyperbolic_length();              // N=2, L = |xdot|/y, guards y > 0 and speed
Lagrangian euclidean_length_3d();            // N=3 version of euclidean_length
Lagrangian green_area();                     // N=2, L = (x*ydot - xdot*y)/2
Lagrangian projectile(double g = 9.8);       // N=2, L = |xdot|^2/2 - g*y
Lagrangian oscillator();                     // N=1, L = xdot^2/2 - x^2/2
Lagrangian squared_loss(DensityFn density);  // N=1, L(q,qdot,x) = int (q-y)^2 p(x,y) dy

/// Optional parameters for builtin(); fields are ignored where they do
/// not apply.
struct BuiltinParams {
    double g = 9.8;
    std::optional<DensityFn> density;
};

/// Look up a built-in Lagrangian by its stable scenario id:
/// euclidean, hyperbolic, spherical, isoperimetric, projectile,
/// oscillator, regression. Unknown ids are an error.
Lagrangian builtin(const std::string& id, const BuiltinParams& params = {});

/// Pointwise sum and scalar multiple of Lagrangians (dims must match;
/// guards are conjoined). Partials stay analytic when both inputs are.
Lagrangian sum(const Lagrangian& a, const Lagrangian& b);
Lagrangian scaled(double c, const Lagrangian& lag);

/// Composite Simpson quadrature of L(gamma(t), gamma'(t), t) over the grid.
/// The guard is checked at every node first; a failure reports the first
/// offending node, its t and the reason.
double action(const Lagrangian& lag, const Path& path);

/// Max absolute discrepancy between the analytic partials and central
/// finite differences of eval at one probe point.
double partials_check(const Lagrangian& lag, std::span<const double> x,
                      std::span<const double> xdot, double t);

} // namespace pathvar
