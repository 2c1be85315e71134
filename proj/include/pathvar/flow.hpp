#pragma once

#include "pathvar/lagrangian.hpp"
#include "pathvar/path.hpp"

#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pathvar {

enum class FlowDirection { minimize, maximize };

/// Options for the gradient flow. The update direction is always the
/// endpoint-zeroed Euler-Lagrange path; steps are chosen by Armijo
/// backtracking, with a Barzilai-Borwein trial step warm-started from the
/// previous iterate pair. max_step caps every trial: stiff actions
/// (oscillator-type potentials) need it at the parabolic stability level
/// or the accepted large steps amplify near-Nyquist modes that the
/// stencil-based gradient cannot remove again.
struct FlowOptions {
    FlowDirection direction = FlowDirection::minimize;
    double initial_step = 0.1;
    double armijo_c = 1e-4;
    double shrink = 0.5;
    int max_backtracks = 40;
    double tol = 1e-6;     // on the interior sup norm of EL
    int max_iters = 5000;
    double max_step = std::numeric_limits<double>::infinity();
};

/// Per-iteration snapshot. step and dir_norm_sq describe the move accepted
/// at this iteration (step = 0 in the terminal entry), so the Armijo
/// inequality between consecutive kept entries is checkable.
struct FlowSample {
    int iteration = 0;
    double action = 0.0;
    double residual = 0.0;
    double step = 0.0;
    double dir_norm_sq = 0.0;
};

/// Result of a flow run. Every ceil(max_iters/100)-th iterate is kept,
/// plus the first and the last.
struct FlowTrace {
    std::vector<FlowSample> iterates_kept;
    FixedEndpointPath final;
    bool converged = false;
    int iterations = 0;
};

/// Line search failure: either the action could not be improved along the
/// Euler-Lagrange direction (stalled) or the guard rejected every trial.
/// Carries the iterate at failure time.
class FlowError : public std::runtime_error {
public:
    enum class Kind { stalled, guard_exhausted };

    FlowError(Kind kind, FixedEndpointPath snapshot, int iteration, const std::string& what)
        : std::runtime_error(what), kind_(kind), snapshot_(std::move(snapshot)),
          iteration_(iteration) {}

    Kind kind() const { return kind_; }
    const FixedEndpointPath& snapshot() const { return snapshot_; }
    int iteration() const { return iteration_; }

private:
    Kind kind_;
    FixedEndpointPath snapshot_;
    int iteration_;
};

/// Gradient flow of the action from start, keeping endpoints pinned:
/// gamma <- pin(gamma -+ s * Z(EL)), stopping when the interior residual
/// reaches opts.tol or max_iters is exhausted. Action values along the
/// accepted iterates are monotone (Armijo). A line search that bottoms out
/// at the representable precision of the action returns the trace as-is;
/// a measurable uphill direction throws FlowError.
FlowTrace descend(const Lagrangian& lag, const FixedEndpointPath& start,
                  const FlowOptions& opts = {});

/// Trace CSV: header iter,action,residual, one row per kept iterate.
void write_trace_csv(std::ostream& out, const FlowTrace& trace);

} // namespace pathvar
