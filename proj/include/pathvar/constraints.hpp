#pragma once

#include "pathvar/lagrangian.hpp"
#include "pathvar/path.hpp"
#include "pathvar/variation.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace pathvar {

/// Pointwise holonomic constraint g(gamma(t)) = level with its gradient.
struct HolonomicConstraint {
    std::function<double(std::span<const double>)> g;
    std::function<std::vector<double>(std::span<const double>)> grad_g;
    double level = 0.0;
};

/// The unit sphere |x|^2 = level in R^3 (the CLI's --g-builtin sphere).
HolonomicConstraint sphere_constraint(double level = 1.0);

/// Max discrepancy between grad_g and central differences of g over the
/// probe points (regular-value sanity for hand-written gradients).
double constraint_gradient_check(const HolonomicConstraint& con,
                                 std::span<const std::vector<double>> probes);

/// Outcome of a constrained Euler-Lagrange check. For the holonomic case
/// lambda is a pointwise multiplier path (dim 1); for the isoperimetric
/// case it is a scalar. The multiplier follows the constrained equations
/// dL/dx_i + lambda dg/dx_i = d/dt dL/dxdot_i, i.e. lambda is the negated
/// projection coefficient of EL onto the constraint gradient. The residual
/// is the component of EL that no multiplier can explain; it vanishes
/// exactly at constrained stationary paths.
struct ConstraintReport {
    std::optional<Path> lambda_path;       // holonomic: lambda(t_i)
    std::optional<double> lambda_scalar;   // isoperimetric: lambda*
    Path residual_path;
    double residual_norm = 0.0;            // interior sup norm of residual_path
    double constraint_violation = 0.0;
};

/// Check the pointwise constrained Euler-Lagrange condition: at every node
/// project EL onto grad_g (requires |grad_g| >= 1e-10 along the path) and
/// report lambda(t) = -<EL, grad_g>/|grad_g|^2, the orthogonal residual,
/// and max_i |g(gamma(t_i)) - level|.
ConstraintReport holonomic_check(const Lagrangian& lag, const HolonomicConstraint& con,
                                 const Path& gamma);

/// Check the integral-constrained condition EL^L + lambda* EL^M = 0 with
/// the global least-squares multiplier lambda* = -<EL^L,EL^M>/<EL^M,EL^M>
/// (requires a nondegenerate EL^M). When the constraint value c is given,
/// constraint_violation = |action(lagM, gamma) - c|.
ConstraintReport isoperimetric_check(const Lagrangian& lagL, const Lagrangian& lagM,
                                     const Path& gamma,
                                     std::optional<double> c = std::nullopt);

/// CSV serialization: columns t, lambda, residual_1..residual_N, then a
/// commented scalar summary block.
void write_constraint_csv(std::ostream& out, const ConstraintReport& report);

} // namespace pathvar
