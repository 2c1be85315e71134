// Acceptance suite: runs every top-level criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exit status is nonzero when
// any criterion fails.

#include "pathvar/constraints.hpp"
#include "pathvar/flow.hpp"
#include "pathvar/lagrangian.hpp"
#include "pathvar/scenarios.hpp"
#include "pathvar/variation.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace pathvar;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

Path sample(const Grid& g, int dim, const std::function<std::vector<double>(double)>& f) {
    return path_from_fn(g, dim, f);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

/// Random polynomial direction: (t-a)(b-t) * sum_j c_j tau^j per component,
/// degree <= 5, coefficients in [-1, 1].
Direction random_direction(const Grid& g, int dim, std::mt19937& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> c(static_cast<size_t>(dim) * 4);
    for (auto& v : c) v = coef(rng);
    const double a = g.a, b = g.b;
    Path p = path_from_fn(g, dim, [&](double t) {
        const double tau = (t - a) / (b - a);
        const double envelope = (t - a) * (b - t);
        std::vector<double> out(dim);
        for (int k = 0; k < dim; ++k) {
            double poly = 0.0;
            for (int j = 3; j >= 0; --j) poly = poly * tau + c[static_cast<size_t>(k) * 4 + j];
            out[k] = envelope * poly;
        }
        return out;
    });
    return Direction::zeroed(std::move(p));
}

struct PairingCase {
    std::string id;
    Lagrangian lag;
    Path gamma;
};

std::vector<PairingCase> pairing_cases() {
    std::vector<PairingCase> cases;
    const int m = 400;
    cases.push_back({"euclidean", euclidean_length(),
                     sample(make_grid(0, 1, m), 2, [](double t) {
                         return std::vector<double>{t, t * (1 - t)};
                     })});
    cases.push_back({"hyperbolic", hyperbolic_length(),
                     sample(make_grid(kPi / 4, 3 * kPi / 4, m), 2, [](double t) {
                         return std::vector<double>{4 * t / kPi - 2, 1.0};
                     })});
    cases.push_back({"spherical", euclidean_length_3d(),
                     sample(make_grid(0, kPi, m), 3, [](double t) {
                         return std::vector<double>{0.0, std::cos(t), std::sin(t)};
                     })});
    cases.push_back({"isoperimetric", green_area(),
                     sample(make_grid(0, 2 * kPi, m), 2, [](double t) {
                         return std::vector<double>{1 - std::cos(t), std::sin(t)};
                     })});
    cases.push_back({"projectile", projectile(9.8),
                     sample(make_grid(0, 1, m), 2, [](double t) {
                         return std::vector<double>{3 * t, -9.8 * t * (t - 1)};
                     })});
    cases.push_back({"oscillator", oscillator(),
                     sample(make_grid(0, kPi, m), 1, [](double t) {
                         return std::vector<double>{2 * t / kPi - 1};
                     })});
    cases.push_back({"regression",
                     squared_loss(DensityFn{[](double, double) { return 1.0; }, 64}),
                     sample(make_grid(0, 1, m), 1, [](double t) {
                         return std::vector<double>{t};
                     })});
    return cases;
}

// 1. Gradient pairing: FD directional derivative vs <EL, eta> for all
//    scenarios x 20 random endpoint-vanishing polynomial directions.
void criterion_pairing() {
    std::mt19937 rng(42);
    double worst = 0.0;
    std::string worst_id;
    bool pass = true;
    for (const auto& c : pairing_cases()) {
        const ELPath el = el_path(c.lag, c.gamma);
        for (int trial = 0; trial < 20; ++trial) {
            const Direction eta = random_direction(c.gamma.grid(), c.gamma.dim(), rng);
            const double paired = pair_gradient(el, eta);
            const double fd = fd_directional(c.lag, c.gamma, eta, 1e-5);
            const double err = std::fabs(fd - paired) / (1.0 + std::fabs(paired));
            if (err > worst) {
                worst = err;
                worst_id = c.id;
            }
            if (err > 1e-4) pass = false;
        }
    }
    report(1, "gradient pairing identity (7 scenarios x 20 directions, m=400)", pass,
           "worst relative gap " + fmt(worst) + " in " + worst_id + ", bound 1e-4");
}

double check_value(const ScenarioReport& rep, const std::string& name) {
    const ScenarioCheck* c = rep.find(name);
    return c ? c->value : std::nan("");
}

bool check_passed(const ScenarioReport& rep, const std::string& name) {
    const ScenarioCheck* c = rep.find(name);
    return c && c->pass;
}

// 2. Printed closed forms at m = 400.
void criterion_closed_forms(const std::vector<ScenarioReport>& reps) {
    struct Item {
        const char* scenario;
        const char* check;
    };
    const Item items[] = {
        {"euclidean", "el_gamma1_max_err"},   {"euclidean", "el_gamma2_max_err"},
        {"hyperbolic", "el_gamma1_max_err"},  {"projectile", "el_gamma1_max_err"},
        {"oscillator", "el_gamma1_max_err"},  {"spherical", "el_max_err"},
        {"spherical", "grad_g_max_err"},      {"isoperimetric", "el_L_max_err"},
        {"isoperimetric", "el_M_max_err"},
    };
    bool pass = true;
    double worst = 0.0;
    for (const auto& item : items) {
        for (const auto& rep : reps) {
            if (rep.id != item.scenario) continue;
            if (!check_passed(rep, item.check)) pass = false;
            worst = std::max(worst, check_value(rep, item.check));
        }
    }
    report(2, "printed Euler-Lagrange closed forms (m=400)", pass,
           "worst nodewise error " + fmt(worst) + ", bound 1e-6");
}

// 3. Stationary paths have (constrained) residual <= 1e-6.
void criterion_stationarity(const std::vector<ScenarioReport>& reps) {
    struct Item {
        const char* scenario;
        const char* check;
    };
    const Item items[] = {
        {"euclidean", "gamma0_stationarity"},
        {"projectile", "gamma0_stationarity"},
        {"oscillator", "gamma0_stationarity"},
        {"spherical", "constrained_residual"},
        {"isoperimetric", "constrained_residual"},
    };
    bool pass = true;
    double worst = 0.0;
    for (const auto& item : items) {
        for (const auto& rep : reps) {
            if (rep.id != item.scenario) continue;
            if (!check_passed(rep, item.check)) pass = false;
            worst = std::max(worst, check_value(rep, item.check));
        }
    }
    report(3, "zeros of the gradient at the stated minimizers", pass,
           "worst residual " + fmt(worst) + ", bound 1e-6");
}

// 4. Constraint multipliers.
void criterion_multipliers(const std::vector<ScenarioReport>& reps) {
    bool pass = true;
    double coeff = std::nan(""), lambda = std::nan(""), ortho = std::nan("");
    for (const auto& rep : reps) {
        if (rep.id == "spherical") {
            pass = pass && check_passed(rep, "projection_coeff_max_err");
            coeff = check_value(rep, "projection_coeff_max_err");
        }
        if (rep.id == "isoperimetric") {
            pass = pass && check_passed(rep, "lambda_star_err") &&
                   check_passed(rep, "orthogonality");
            lambda = check_value(rep, "lambda_star_err");
            ortho = check_value(rep, "orthogonality");
        }
    }
    report(4, "constraint multipliers (1/2 pointwise; lambda*=1, residual orthogonal)", pass,
           "coeff err " + fmt(coeff) + ", lambda* err " + fmt(lambda) +
               ", orthogonality " + fmt(ortho));
}

// 5. Gradient flow convergence within 5000 iterations.
void criterion_flows() {
    bool pass = true;
    std::string detail;

    {
        const Grid g = make_grid(0, 1, 200);
        FlowOptions opts;
        opts.tol = 1e-4;
        const FlowTrace tr = descend(euclidean_length(),
                                     FixedEndpointPath(sample(g, 2, [](double t) {
                                         return std::vector<double>{t, t * (1 - t)};
                                     })),
                                     opts);
        double dist = 0.0;
        for (int i = 0; i <= g.m; ++i) dist = std::max(dist, std::fabs(tr.final.path()(i, 1)));
        pass = pass && dist <= 1e-3 && tr.iterations <= 5000;
        detail += "euclidean dist " + fmt(dist) + " in " +
                  std::to_string(tr.iterations) + " iters";
    }
    {
        const Grid g = make_grid(0, kPi, 100);
        FlowOptions opts;
        opts.max_step = 1e-3;
        const FlowTrace tr = descend(oscillator(),
                                     FixedEndpointPath(sample(g, 1, [](double t) {
                                         return std::vector<double>{2 * t / kPi - 1};
                                     })),
                                     opts);
        double dist = 0.0;
        for (int i = 0; i <= g.m; ++i)
            dist = std::max(dist, std::fabs(tr.final.path()(i, 0) + std::cos(g.node(i))));
        pass = pass && dist <= 1e-3 && tr.iterations <= 5000;
        detail += "; oscillator dist " + fmt(dist) + " in " +
                  std::to_string(tr.iterations) + " iters";
    }
    {
        const Grid g = make_grid(kPi / 4, 3 * kPi / 4, 200);
        FlowOptions opts;
        opts.tol = 1e-4;
        opts.max_step = 1e-2;
        const FlowTrace tr = descend(hyperbolic_length(),
                                     FixedEndpointPath(sample(g, 2, [](double t) {
                                         return std::vector<double>{4 * t / kPi - 2, 1.0};
                                     })),
                                     opts);
        const double target = 2 * std::log(1 + std::numbers::sqrt2);
        const double gap = std::fabs(action(hyperbolic_length(), tr.final.path()) - target);
        pass = pass && gap <= 1e-3 && tr.iterations <= 5000;
        detail += "; hyperbolic action gap " + fmt(gap) + " in " +
                  std::to_string(tr.iterations) + " iters";
    }
    report(5, "gradient flow convergence (<= 5000 iterations)", pass, detail);
}

// 6. Fourth-order convergence: halving h reduces the closed-form error by
//    at least 12x on the euclidean scenario.
void criterion_order(const ScenarioReport& at400) {
    ScenarioOverrides ov;
    ov.grid_points = 200;
    ov.run_descent = false;
    const ScenarioReport at200 = run_scenario("euclidean", ov);
    const double e200 = check_value(at200, "el_gamma1_max_err");
    const double e400 = check_value(at400, "el_gamma1_max_err");
    const double ratio = e200 / e400;
    report(6, "order of accuracy (euclidean EL error, m=200 vs 400)", ratio >= 12.0,
           "ratio " + fmt(ratio) + ", need >= 12");
}

// 7. Regression: zero of the Euler-Lagrange function.
void criterion_regression() {
    const Grid g = make_grid(0, 1, 400);
    double worst_uniform = 0.0;
    {
        const Path zero = regression_el_zero(DensityFn{[](double, double) { return 1.0; }, 64}, g);
        for (int i = 0; i <= g.m; ++i)
            worst_uniform = std::max(worst_uniform, std::fabs(zero(i, 0) - 0.5));
    }
    double worst_tilted = 0.0;
    {
        const Path zero = regression_el_zero(
            DensityFn{[](double x, double y) { return 1.0 + x * y; }, 64}, g);
        for (int i = 0; i <= g.m; ++i) {
            const double x = g.node(i);
            const double want = (0.5 + x / 3.0) / (1.0 + x / 2.0);
            worst_tilted = std::max(worst_tilted, std::fabs(zero(i, 0) - want));
        }
    }
    report(7, "regression optimal models (p=1 and p=1+xy)",
           worst_uniform <= 1e-9 && worst_tilted <= 1e-8,
           "p=1 err " + fmt(worst_uniform) + " (bound 1e-9), p=1+xy err " +
               fmt(worst_tilted) + " (bound 1e-8)");
}

// 8. Property suite.
void criterion_properties() {
    bool pass = true;
    std::string detail;
    std::mt19937 rng(7);

    {  // pairing linearity in eta, 1e-12 relative
        const Grid g = make_grid(0, 1, 400);
        const Path gamma = sample(g, 2, [](double t) {
            return std::vector<double>{t, t * (1 - t)};
        });
        const ELPath el = el_path(euclidean_length(), gamma);
        const Direction e1 = random_direction(g, 2, rng);
        const Direction e2 = random_direction(g, 2, rng);
        const double c1 = 0.7, c2 = -1.3;
        const Direction combo =
            Direction::zeroed(linear_combine(c1, e1.path(), c2, e2.path()));
        const double lhs = pair_gradient(el, combo);
        const double rhs = c1 * pair_gradient(el, e1) + c2 * pair_gradient(el, e2);
        const double err = std::fabs(lhs - rhs) / (1.0 + std::fabs(rhs));
        pass = pass && err <= 1e-12;
        detail += "linearity " + fmt(err);
    }
    {  // Simpson exactness on a cubic integrand, 1e-12 relative
        const Grid g = make_grid(-1, 2, 12);
        const Path alpha = sample(g, 2, [](double t) { return std::vector<double>{t * t, t}; });
        const Path beta = sample(g, 2, [](double t) { return std::vector<double>{t, 1.0}; });
        const double got = inner_product(alpha, beta);  // integral of t^3 + t over [-1, 2]
        const double want = 21.0 / 4.0;
        const double err = std::fabs(got - want) / std::fabs(want);
        pass = pass && err <= 1e-12;
        detail += "; simpson cubic " + fmt(err);
    }
    {  // bump-basis zero-gradient characterization on projectile gamma1 and gamma0
        const Grid g = make_grid(0, 1, 200);
        const Lagrangian lag = projectile(9.8);
        for (bool stationary : {false, true}) {
            const Path gamma = sample(g, 2, [stationary](double t) {
                const double scale = stationary ? 0.5 : 1.0;
                return std::vector<double>{3 * t, -scale * 9.8 * t * (t - 1)};
            });
            const ELPath el = el_path(lag, gamma);
            double max_pair = 0.0;
            for (int i = 1; i < g.m; ++i) {
                for (int k = 0; k < 2; ++k) {
                    Path bump(g, 2);
                    bump(i, k) = 1.0;
                    max_pair =
                        std::max(max_pair, std::fabs(pair_gradient(el, Direction(bump))));
                }
            }
            const double r = max_pair / g.h;
            const double sup = sup_norm(el.path, true);
            const bool ok = sup <= 10.0 * r + 1e-9 && r <= 10.0 * sup + 1e-9;
            pass = pass && ok;
            detail += std::string("; bump[") + (stationary ? "gamma0" : "gamma1") +
                      "] sup=" + fmt(sup) + " r=" + fmt(r);
        }
    }
    {  // Armijo monotonicity of every accepted step (full trace retention)
        const Grid g = make_grid(0, kPi, 100);
        FlowOptions opts;
        opts.max_step = 1e-3;
        opts.max_iters = 100;
        opts.tol = 1e-12;
        const FlowTrace tr = descend(oscillator(),
                                     FixedEndpointPath(sample(g, 1, [](double t) {
                                         return std::vector<double>{2 * t / kPi - 1};
                                     })),
                                     opts);
        bool armijo = true;
        for (size_t k = 0; k + 1 < tr.iterates_kept.size(); ++k) {
            const FlowSample& s0 = tr.iterates_kept[k];
            const FlowSample& s1 = tr.iterates_kept[k + 1];
            if (s1.iteration != s0.iteration + 1) continue;
            if (!(s1.action <= s0.action - opts.armijo_c * s0.step * s0.dir_norm_sq))
                armijo = false;
        }
        pass = pass && armijo;
        detail += std::string("; armijo ") + (armijo ? "held" : "violated");
    }
    {  // mirror symmetry of the euclidean gamma1/gamma2 flows, 1e-12 nodewise
        const Grid g = make_grid(0, 1, 200);
        FlowOptions opts;
        opts.max_iters = 100;
        opts.tol = 1e-12;
        const FlowTrace up = descend(euclidean_length(),
                                     FixedEndpointPath(sample(g, 2, [](double t) {
                                         return std::vector<double>{t, t * (1 - t)};
                                     })),
                                     opts);
        const FlowTrace down = descend(euclidean_length(),
                                       FixedEndpointPath(sample(g, 2, [](double t) {
                                           return std::vector<double>{t, t * (t - 1)};
                                       })),
                                       opts);
        double mirror_err = 0.0;
        for (int i = 0; i <= g.m; ++i) {
            mirror_err = std::max(mirror_err, std::fabs(up.final.path()(i, 0) -
                                                        down.final.path()(i, 0)));
            mirror_err = std::max(mirror_err, std::fabs(up.final.path()(i, 1) +
                                                        down.final.path()(i, 1)));
        }
        pass = pass && mirror_err <= 1e-12;
        detail += "; mirror " + fmt(mirror_err);
    }
    report(8, "property suite (linearity, Simpson, bump basis, Armijo, mirror)", pass, detail);
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion_pairing();

    ScenarioOverrides ov400;
    ov400.grid_points = 400;
    ov400.run_descent = false;
    std::vector<ScenarioReport> reps;
    for (const char* id :
         {"euclidean", "hyperbolic", "spherical", "isoperimetric", "oscillator", "projectile"})
        reps.push_back(run_scenario(id, ov400));

    criterion_closed_forms(reps);
    criterion_stationarity(reps);
    criterion_multipliers(reps);
    criterion_flows();
    criterion_order(reps.front());
    criterion_regression();
    criterion_properties();

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
