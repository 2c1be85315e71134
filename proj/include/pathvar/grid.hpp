#pragma once

namespace pathvar {

/// Uniform discretization of [a, b] into m intervals (m + 1 nodes).
///
/// m must be even (composite Simpson quadrature needs interval pairs) and
/// at least 8 (the five-point derivative stencils need room on both sides).
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int m = 8;
    double h = 0.125;

    double node(int i) const { return a + i * h; }
    int node_count() const { return m + 1; }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Validating constructor for Grid. Rejects a >= b, non-finite bounds,
/// odd m and m < 8.
Grid make_grid(double a, double b, int m);

/// Composite Simpson weight of node i: h/3 at the ends, alternating
/// 4h/3 (odd i) and 2h/3 (even i) inside.
double simpson_weight(const Grid& grid, int i);

} // namespace pathvar
