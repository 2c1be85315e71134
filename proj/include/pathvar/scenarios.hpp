#pragma once

#include "pathvar/flow.hpp"
#include "pathvar/lagrangian.hpp"
#include "pathvar/path.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pathvar {

struct ScenarioInfo {
    std::string id;
    std::string description;
    bool constrained = false;
    bool analysis_only = false;  // no gradient flow for this scenario
};

/// The seven built-in scenarios, in registry order.
const std::vector<ScenarioInfo>& scenario_list();

/// One named tolerance check inside a scenario run. value is the measured
/// error (or indicator), threshold the pinned bound; pass = value <= threshold.
struct ScenarioCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string note;  // e.g. the closed form the value was measured against
};

/// Figure data: polylines in problem coordinates plus arrow segments
/// (base -> tip) drawn from the negated Euler-Lagrange values.
struct FigureCurve {
    std::string label;
    std::vector<std::array<double, 2>> points;
    std::vector<std::array<double, 4>> arrows;  // x1, y1, x2, y2
};

struct Figure {
    std::string name;
    std::vector<FigureCurve> curves;
    int arrows_per_annotated_curve = 0;
};

struct ScenarioArtifact {
    std::string name;
    Path path;
};

struct ScenarioReport {
    std::string id;
    Grid grid;
    std::vector<ScenarioCheck> checks;
    std::vector<ScenarioArtifact> paths;
    std::optional<Figure> figure;

    bool all_pass() const;
    const ScenarioCheck* find(const std::string& name) const;
    void write_text(std::ostream& out) const;
};

struct ScenarioOverrides {
    std::optional<int> grid_points;     // overrides the default m
    std::optional<DensityFn> density;   // regression only
    bool run_descent = true;
};

/// Run one scenario end-to-end: Euler-Lagrange paths for the named paths
/// compared against their closed forms, stationarity of the minimizer,
/// constraint checks and gradient flow where the scenario has them, and
/// figure data. Tolerance breaches are reported in the checks, not thrown.
ScenarioReport run_scenario(const std::string& id, const ScenarioOverrides& overrides = {});

/// Pointwise zero of the regression Euler-Lagrange function for a density:
/// the conditional-mean model x -> (int y p(x,y) dy) / (int p(x,y) dy),
/// computed with the same y-quadrature the Lagrangian uses.
Path regression_el_zero(const DensityFn& density, const Grid& grid);

} // namespace pathvar
