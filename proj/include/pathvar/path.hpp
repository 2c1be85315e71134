#pragma once

#include "pathvar/grid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace pathvar {

/// An N-dimensional path sampled on a uniform grid: samples(i, k) holds
/// component k of the path value at node i. All operations on paths are
/// pure; shared Path values are never mutated in place.
class Path {
public:
    Path() : Path(Grid{}, 1) {}
    Path(Grid grid, int dim);

    const Grid& grid() const { return grid_; }
    int dim() const { return dim_; }

    double operator()(int i, int k) const { return samples_[static_cast<size_t>(i) * dim_ + k]; }
    double& operator()(int i, int k) { return samples_[static_cast<size_t>(i) * dim_ + k]; }

    /// Row view of node i (length dim).
    std::span<const double> node(int i) const {
        return {samples_.data() + static_cast<size_t>(i) * dim_, static_cast<size_t>(dim_)};
    }
    std::span<double> node(int i) {
        return {samples_.data() + static_cast<size_t>(i) * dim_, static_cast<size_t>(dim_)};
    }

    std::span<const double> samples() const { return samples_; }
    std::span<double> samples() { return samples_; }

    friend bool operator==(const Path&, const Path&) = default;

private:
    Grid grid_;
    int dim_;
    std::vector<double> samples_;
};

/// Sample f over the grid nodes. f must return a finite vector of length
/// dim at every node; a non-finite or wrongly sized value is an error
/// naming the offending node.
Path path_from_fn(const Grid& grid, int dim,
                  const std::function<std::vector<double>(double)>& f);

/// Nodewise time derivative. Interior nodes (2 <= i <= m-2) use the
/// five-point fourth-order central stencil; nodes {0, 1, m-1, m} use
/// fourth-order one-sided stencils. Exact for polynomials of degree <= 4.
Path derivative(const Path& path);

/// Composite Simpson approximation of the L2 pairing
/// integral over [a,b] of alpha(t) . beta(t) dt.
/// Summation is fixed left-to-right for bit reproducibility.
double inner_product(const Path& alpha, const Path& beta);

/// c1 * alpha + c2 * beta, nodewise.
Path linear_combine(double c1, const Path& alpha, double c2, const Path& beta);

/// Max Euclidean node norm, over all nodes or interior nodes 1..m-1 only.
double sup_norm(const Path& path, bool interior_only = false);

/// A path pinned to endpoint values p and q. Construction re-asserts
/// samples[0] = p and samples[m] = q bitwise, so the fixed-endpoint
/// invariant survives arithmetic drift in producers.
class FixedEndpointPath {
public:
    FixedEndpointPath() : FixedEndpointPath(Path{}) {}

    /// Pin endpoints to the path's own current endpoint values.
    explicit FixedEndpointPath(Path path);

    /// Pin endpoints to p and q (overwriting the sampled endpoint rows).
    FixedEndpointPath(Path path, std::vector<double> p, std::vector<double> q);

    const Path& path() const { return path_; }
    std::span<const double> p() const { return p_; }
    std::span<const double> q() const { return q_; }

private:
    Path path_;
    std::vector<double> p_, q_;
};

/// A tangent direction: a path vanishing exactly at both endpoints.
/// The validating constructor rejects nonzero endpoints; zeroed() clamps
/// them instead (used to restrict updates to endpoint-vanishing moves).
class Direction {
public:
    explicit Direction(Path path);
    static Direction zeroed(Path path);

    const Path& path() const { return path_; }

private:
    struct AlreadyZero {};
    Direction(Path path, AlreadyZero) : path_(std::move(path)) {}
    Path path_;
};

} // namespace pathvar
