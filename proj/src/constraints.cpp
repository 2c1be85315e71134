#include "pathvar/constraints.hpp"

#include "pathvar/csv.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pathvar {

namespace {
constexpr double kDegenerate = 1e-10;
}

HolonomicConstraint sphere_constraint(double level) {
    return HolonomicConstraint{
        [](std::span<const double> x) {
            return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        },
        [](std::span<const double> x) {
            return std::vector<double>{2.0 * x[0], 2.0 * x[1], 2.0 * x[2]};
        },
        level};
}

double constraint_gradient_check(const HolonomicConstraint& con,
                                 std::span<const std::vector<double>> probes) {
    double worst = 0.0;
    for (const auto& p : probes) {
        std::vector<double> analytic = con.grad_g(p);
        std::vector<double> probe = p;
        for (size_t k = 0; k < probe.size(); ++k) {
            const double saved = probe[k];
            const double h = 1e-6 * std::max(1.0, std::fabs(saved));
            probe[k] = saved + h;
            const double fp = con.g(probe);
            probe[k] = saved - h;
            const double fm = con.g(probe);
            probe[k] = saved;
            worst = std::max(worst, std::fabs(analytic[k] - (fp - fm) / (2.0 * h)));
        }
    }
    return worst;
}

ConstraintReport holonomic_check(const Lagrangian& lag, const HolonomicConstraint& con,
                                 const Path& gamma) {
    const Grid& g = gamma.grid();
    const int dim = gamma.dim();
    const ELPath el = el_path(lag, gamma);

    Path lambda(g, 1);
    Path residual(g, dim);
    double violation = 0.0;
    for (int i = 0; i <= g.m; ++i) {
        const std::vector<double> gg = con.grad_g(gamma.node(i));
        if (static_cast<int>(gg.size()) != dim)
            throw std::invalid_argument("constraint gradient has wrong dimension");
        double norm2 = 0.0, dot = 0.0;
        for (int k = 0; k < dim; ++k) {
            norm2 += gg[k] * gg[k];
            dot += el.path(i, k) * gg[k];
        }
        if (std::sqrt(norm2) < kDegenerate)
            throw std::domain_error("constraint gradient vanishes at node " + std::to_string(i) +
                                    " (t=" + std::to_string(g.node(i)) + ")");
        const double coeff = dot / norm2;
        lambda(i, 0) = -coeff;
        for (int k = 0; k < dim; ++k) residual(i, k) = el.path(i, k) - coeff * gg[k];
        violation = std::max(violation, std::fabs(con.g(gamma.node(i)) - con.level));
    }

    ConstraintReport report;
    report.lambda_path = std::move(lambda);
    report.residual_norm = sup_norm(residual, /*interior_only=*/true);
    report.residual_path = std::move(residual);
    report.constraint_violation = violation;
    return report;
}

ConstraintReport isoperimetric_check(const Lagrangian& lagL, const Lagrangian& lagM,
                                     const Path& gamma, std::optional<double> c) {
    const ELPath elL = el_path(lagL, gamma);
    const ELPath elM = el_path(lagM, gamma);

    const double mm = inner_product(elM.path, elM.path);
    if (std::sqrt(mm) < kDegenerate)
        throw std::domain_error("constraint Euler-Lagrange path is degenerate (|EL^M| < 1e-10)");
    const double lambda = -inner_product(elL.path, elM.path) / mm;

    ConstraintReport report;
    report.lambda_scalar = lambda;
    Path residual = linear_combine(1.0, elL.path, lambda, elM.path);
    report.residual_norm = sup_norm(residual, /*interior_only=*/true);
    report.residual_path = std::move(residual);
    report.constraint_violation = c ? std::fabs(elM.source_action - *c) : 0.0;
    return report;
}

void write_constraint_csv(std::ostream& out, const ConstraintReport& report) {
    if (!report.lambda_path && !report.lambda_scalar)
        throw std::invalid_argument("constraint report carries no multiplier");
    const Path& r = report.residual_path;
    const Grid& g = r.grid();
    out << "t,lambda";
    for (int k = 1; k <= r.dim(); ++k) out << ",residual_" << k;
    out << '\n';
    for (int i = 0; i <= g.m; ++i) {
        out << format_double(g.node(i)) << ',';
        if (report.lambda_path)
            out << format_double((*report.lambda_path)(i, 0));
        else
            out << format_double(*report.lambda_scalar);
        for (int k = 0; k < r.dim(); ++k) out << ',' << format_double(r(i, k));
        out << '\n';
    }
    out << "# summary\n";
    if (report.lambda_scalar) out << "# lambda_star," << format_double(*report.lambda_scalar) << '\n';
    out << "# residual_norm," << format_double(report.residual_norm) << '\n';
    out << "# constraint_violation," << format_double(report.constraint_violation) << '\n';
}

} // namespace pathvar
