#include "pathvar/flow.hpp"

#include "pathvar/csv.hpp"
#include "pathvar/errors.hpp"
#include "pathvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace pathvar {

namespace {

void validate(const FlowOptions& o) {
    if (!(o.shrink > 0.0 && o.shrink < 1.0))
        throw std::invalid_argument("flow: shrink must lie in (0,1)");
    if (!(o.tol > 0.0)) throw std::invalid_argument("flow: tol must be positive");
    if (!(o.armijo_c > 0.0 && o.armijo_c < 0.5))
        throw std::invalid_argument("flow: armijo_c must lie in (0, 1/2)");
    if (!(o.initial_step > 0.0)) throw std::invalid_argument("flow: initial_step must be positive");
    if (!(o.max_step > 0.0)) throw std::invalid_argument("flow: max_step must be positive");
    if (o.max_iters < 0 || o.max_backtracks < 0)
        throw std::invalid_argument("flow: iteration counts must be nonnegative");
}

Path zeroed_el(const Lagrangian& lag, const Path& gamma) {
    Path el = el_path(lag, gamma).path;
    const int m = el.grid().m;
    for (int k = 0; k < el.dim(); ++k) {
        el(0, k) = 0.0;
        el(m, k) = 0.0;
    }
    return el;
}

} // namespace

FlowTrace descend(const Lagrangian& lag, const FixedEndpointPath& start,
                  const FlowOptions& opts) {
    validate(opts);
    const double sign = opts.direction == FlowDirection::minimize ? 1.0 : -1.0;
    const std::vector<double> p(start.p().begin(), start.p().end());
    const std::vector<double> q(start.q().begin(), start.q().end());
    const int keep_every = std::max(1, (opts.max_iters + 99) / 100);

    FixedEndpointPath current = start;
    double f = action(lag, current.path());

    FlowTrace trace{{}, current, false, 0};
    Path prev_gamma(current.path().grid(), current.path().dim());
    Path prev_dir(current.path().grid(), current.path().dim());
    bool have_prev = false;
    double last_accepted = std::min(opts.initial_step, opts.max_step);

    int it = 0;
    for (; it < opts.max_iters; ++it) {
        Path dir = zeroed_el(lag, current.path());
        const double residual = sup_norm(dir, /*interior_only=*/true);
        if (residual <= opts.tol) {
            trace.converged = true;
            break;
        }
        const double dir_norm_sq = inner_product(dir, dir);

        // Barzilai-Borwein trial from the previous (iterate, direction)
        // pair; fall back to doubling the last accepted step.
        double s = std::min(opts.initial_step, opts.max_step);
        if (have_prev) {
            const Path dx = linear_combine(1.0, current.path(), -1.0, prev_gamma);
            const Path dg = linear_combine(sign, dir, -sign, prev_dir);
            const double num = inner_product(dx, dx);
            const double den = inner_product(dx, dg);
            const double scale = std::sqrt(num * inner_product(dg, dg));
            if (num > 0.0 && den > 1e-12 * scale)
                s = std::clamp(num / den, 1e-8, std::min(opts.max_step, 1e3));
            else
                s = std::min(2.0 * last_accepted, opts.max_step);
        }
        prev_gamma = current.path();
        prev_dir = dir;
        have_prev = true;

        if (it % keep_every == 0)
            trace.iterates_kept.push_back({it, f, residual, 0.0, dir_norm_sq});

        bool accepted = false;
        bool any_evaluated = false;
        double best_candidate = sign > 0 ? std::numeric_limits<double>::infinity()
                                         : -std::numeric_limits<double>::infinity();
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            FixedEndpointPath candidate(
                linear_combine(1.0, current.path(), -sign * s, dir), p, q);
            double fc;
            try {
                fc = action(lag, candidate.path());
            } catch (const GuardError&) {
                s *= opts.shrink;
                continue;
            }
            any_evaluated = true;
            best_candidate = sign > 0 ? std::min(best_candidate, fc)
                                      : std::max(best_candidate, fc);
            if (sign * (f - fc) >= opts.armijo_c * s * dir_norm_sq) {
                if (!trace.iterates_kept.empty() &&
                    trace.iterates_kept.back().iteration == it) {
                    trace.iterates_kept.back().step = s;
                }
                current = std::move(candidate);
                f = fc;
                last_accepted = s;
                accepted = true;
                break;
            }
            s *= opts.shrink;
        }
        if (!accepted) {
            if (!any_evaluated)
                throw FlowError(FlowError::Kind::guard_exhausted, current, it,
                                "flow: domain guard rejected every line-search step at iteration " +
                                    std::to_string(it));
            const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                                 (1.0 + std::fabs(f));
            if (sign * (best_candidate - f) > noise)
                throw FlowError(FlowError::Kind::stalled, current, it,
                                "flow: stalled (action non-decreasing at zero step) at iteration " +
                                    std::to_string(it));
            // Improvements have shrunk below the representable precision of
            // the action; treat as the numerical floor of this grid.
            break;
        }
    }
    trace.iterations = it;

    Path final_dir = zeroed_el(lag, current.path());
    const double final_residual = sup_norm(final_dir, /*interior_only=*/true);
    if (final_residual <= opts.tol) trace.converged = true;
    if (trace.iterates_kept.empty() || trace.iterates_kept.back().step != 0.0 ||
        trace.iterates_kept.back().iteration != it) {
        trace.iterates_kept.push_back(
            {it, f, final_residual, 0.0, inner_product(final_dir, final_dir)});
    }
    trace.final = std::move(current);
    return trace;
}

void write_trace_csv(std::ostream& out, const FlowTrace& trace) {
    out << "iter,action,residual\n";
    for (const auto& s : trace.iterates_kept)
        out << s.iteration << ',' << format_double(s.action) << ','
            << format_double(s.residual) << '\n';
}

} // namespace pathvar
