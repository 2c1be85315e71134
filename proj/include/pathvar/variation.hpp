#pragma once

#include "pathvar/lagrangian.hpp"
#include "pathvar/path.hpp"

namespace pathvar {

/// The Euler-Lagrange path of an action at some input path: component i is
/// dL/dx_i - d/dt dL/dxdot_i sampled nodewise. Acts as the gradient of the
/// action: pairing it against endpoint-vanishing directions reproduces
/// directional derivatives of the action.
struct ELPath {
    Path path;
    double source_action = 0.0;
};

/// Compute the Euler-Lagrange path of lag at gamma:
///   (1) gamma' by the grid stencils,
///   (2) A(t_i) = grad_x and momentum P(t_i) = grad_xdot nodewise,
///   (3) EL = A - derivative(P).
/// The guard is checked at every node; source_action is the action of
/// gamma at computation time.
ELPath el_path(const Lagrangian& lag, const Path& gamma);

/// L2 pairing of the gradient with a tangent direction.
double pair_gradient(const ELPath& el, const Direction& eta);

/// Central-difference directional derivative of the action:
/// (S(gamma + h*eta) - S(gamma - h*eta)) / (2h). Guard failures on a
/// perturbed path report which sign of the perturbation failed.
double fd_directional(const Lagrangian& lag, const Path& gamma, const Direction& eta,
                      double h = 1e-5);

/// Interior sup norm of the Euler-Lagrange path; zero exactly at solutions
/// of the Euler-Lagrange equations.
double stationarity_residual(const Lagrangian& lag, const Path& gamma);

} // namespace pathvar
