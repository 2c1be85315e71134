#include "pathvar/path.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pathvar {

Path::Path(Grid grid, int dim) : grid_(grid), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("path dimension must be >= 1");
    samples_.assign(static_cast<size_t>(grid.m + 1) * dim, 0.0);
}

Path path_from_fn(const Grid& grid, int dim,
                  const std::function<std::vector<double>(double)>& f) {
    Path p(grid, dim);
    for (int i = 0; i <= grid.m; ++i) {
        const double t = grid.node(i);
        std::vector<double> v = f(t);
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("sampler returned " + std::to_string(v.size()) +
                                        " components at node " + std::to_string(i) +
                                        ", expected " + std::to_string(dim));
        for (int k = 0; k < dim; ++k) {
            if (!std::isfinite(v[k]))
                throw std::invalid_argument("non-finite sample at node " + std::to_string(i) +
                                            " (t=" + std::to_string(t) + "), component " +
                                            std::to_string(k));
            p(i, k) = v[k];
        }
    }
    return p;
}

Path derivative(const Path& path) {
    const Grid& g = path.grid();
    const int m = g.m;
    const int dim = path.dim();
    const double denom = 12.0 * g.h;
    Path d(g, dim);
    for (int k = 0; k < dim; ++k) {
        auto f = [&](int i) { return path(i, k); };
        d(0, k) = (-25 * f(0) + 48 * f(1) - 36 * f(2) + 16 * f(3) - 3 * f(4)) / denom;
        d(1, k) = (-3 * f(0) - 10 * f(1) + 18 * f(2) - 6 * f(3) + f(4)) / denom;
        for (int i = 2; i <= m - 2; ++i)
            d(i, k) = (-f(i + 2) + 8 * f(i + 1) - 8 * f(i - 1) + f(i - 2)) / denom;
        d(m - 1, k) = (3 * f(m) + 10 * f(m - 1) - 18 * f(m - 2) + 6 * f(m - 3) - f(m - 4)) / denom;
        d(m, k) = (25 * f(m) - 48 * f(m - 1) + 36 * f(m - 2) - 16 * f(m - 3) + 3 * f(m - 4)) / denom;
    }
    return d;
}

static void require_compatible(const Path& a, const Path& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("paths live on different grids");
    if (a.dim() != b.dim())
        throw std::invalid_argument("paths have different dimensions");
}

double inner_product(const Path& alpha, const Path& beta) {
    require_compatible(alpha, beta);
    const Grid& g = alpha.grid();
    const int dim = alpha.dim();
    double acc = 0.0;
    for (int i = 0; i <= g.m; ++i) {
        double dot = 0.0;
        for (int k = 0; k < dim; ++k) dot += alpha(i, k) * beta(i, k);
        acc += simpson_weight(g, i) * dot;
    }
    return acc;
}

Path linear_combine(double c1, const Path& alpha, double c2, const Path& beta) {
    require_compatible(alpha, beta);
    Path out(alpha.grid(), alpha.dim());
    auto a = alpha.samples();
    auto b = beta.samples();
    auto o = out.samples();
    for (size_t j = 0; j < o.size(); ++j) o[j] = c1 * a[j] + c2 * b[j];
    return out;
}

double sup_norm(const Path& path, bool interior_only) {
    const int m = path.grid().m;
    const int lo = interior_only ? 1 : 0;
    const int hi = interior_only ? m - 1 : m;
    double mx = 0.0;
    for (int i = lo; i <= hi; ++i) {
        double n2 = 0.0;
        for (int k = 0; k < path.dim(); ++k) n2 += path(i, k) * path(i, k);
        mx = std::max(mx, std::sqrt(n2));
    }
    return mx;
}

FixedEndpointPath::FixedEndpointPath(Path path)
    : path_(std::move(path)) {
    const int m = path_.grid().m;
    p_.assign(path_.node(0).begin(), path_.node(0).end());
    q_.assign(path_.node(m).begin(), path_.node(m).end());
}

FixedEndpointPath::FixedEndpointPath(Path path, std::vector<double> p, std::vector<double> q)
    : path_(std::move(path)), p_(std::move(p)), q_(std::move(q)) {
    if (static_cast<int>(p_.size()) != path_.dim() || static_cast<int>(q_.size()) != path_.dim())
        throw std::invalid_argument("endpoint vectors must have the path dimension");
    const int m = path_.grid().m;
    for (int k = 0; k < path_.dim(); ++k) {
        path_(0, k) = p_[k];
        path_(m, k) = q_[k];
    }
}

Direction::Direction(Path path) : path_(std::move(path)) {
    const int m = path_.grid().m;
    for (int k = 0; k < path_.dim(); ++k) {
        if (path_(0, k) != 0.0 || path_(m, k) != 0.0)
            throw std::invalid_argument("direction must vanish at both endpoints");
    }
}

Direction Direction::zeroed(Path path) {
    const int m = path.grid().m;
    for (int k = 0; k < path.dim(); ++k) {
        path(0, k) = 0.0;
        path(m, k) = 0.0;
    }
    return Direction(std::move(path), AlreadyZero{});
}

} // namespace pathvar
