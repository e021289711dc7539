#include "tentlab/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tentlab {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

/// out[i] = min_j in[j] + torus(i − j)² along one periodic line.
void line_transform(std::vector<double>& line, std::vector<double>& scratch) {
    const int N = static_cast<int>(line.size());
    scratch.assign(line.size(), inf);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (line[static_cast<std::size_t>(j)] == inf) continue;
            const int d = std::min(std::abs(i - j), N - std::abs(i - j));
            scratch[static_cast<std::size_t>(i)] =
                std::min(scratch[static_cast<std::size_t>(i)], line[static_cast<std::size_t>(j)] + double(d) * d);
        }
    line.swap(scratch);
}

}  // namespace

std::vector<double> distance_to_set(const Grid& grid, const std::vector<char>& set) {
    if (set.size() != grid.points()) throw std::invalid_argument("distance_to_set: size mismatch");
    const int n = grid.dim(), N = grid.size();
    std::vector<double> d2(grid.points());
    for (std::size_t x = 0; x < d2.size(); ++x) d2[x] = set[x] ? 0.0 : inf;
    std::vector<double> line(static_cast<std::size_t>(N)), scratch;
    for (int axis = 0; axis < n; ++axis) {
        std::size_t stride = 1;
        for (int d = n - 1; d > axis; --d) stride *= static_cast<std::size_t>(N);
        for (std::size_t x = 0; x < grid.points(); ++x) {
            if (grid.unflatten(x)[axis] != 0) continue;
            for (int i = 0; i < N; ++i) line[static_cast<std::size_t>(i)] = d2[x + static_cast<std::size_t>(i) * stride];
            line_transform(line, scratch);
            for (int i = 0; i < N; ++i) d2[x + static_cast<std::size_t>(i) * stride] = line[static_cast<std::size_t>(i)];
        }
    }
    for (double& v : d2) v = std::sqrt(v) * grid.spacing();
    return d2;
}

std::vector<std::size_t> WhitneyCover::members(const Grid& grid, std::size_t cube) const {
    const WhitneyCube& q = cubes.at(cube);
    std::vector<std::size_t> out;
    Index o{};
    const int n = grid.dim();
    for (o[0] = 0; o[0] < q.side; ++o[0])
        for (o[1] = 0; o[1] < (n >= 2 ? q.side : 1); ++o[1])
            for (o[2] = 0; o[2] < (n == 3 ? q.side : 1); ++o[2]) {
                Index idx = q.corner;
                for (int d = 0; d < n; ++d) idx[d] += o[d];
                out.push_back(grid.flatten(idx));
            }
    return out;
}

WhitneyCover whitney_decompose(const Grid& grid, const std::vector<char>& mask) {
    if (mask.size() != grid.points()) throw std::invalid_argument("whitney_decompose: size mismatch");
    const auto inside = std::count(mask.begin(), mask.end(), char{1});
    if (inside == 0) throw std::invalid_argument("whitney_decompose: empty set");
    if (static_cast<std::size_t>(inside) == grid.points())
        throw std::invalid_argument("whitney_decompose: set is the whole torus, complement distances undefined");

    std::vector<char> complement(mask.size());
    for (std::size_t x = 0; x < mask.size(); ++x) complement[x] = !mask[x];
    const std::vector<double> dist = distance_to_set(grid, complement);

    const int n = grid.dim(), N = grid.size();
    const double h = grid.spacing();
    WhitneyCover cover;
    cover.owner.assign(grid.points(), -1);

    for (int side = N / 2; side >= 1; side /= 2) {
        const double diam = ((side - 1) * std::sqrt(double(n)) + 1) * h;
        const int cells = N / side;
        Index c{};
        for (c[0] = 0; c[0] < cells; ++c[0])
            for (c[1] = 0; c[1] < cells; ++c[1])
                for (c[2] = 0; c[2] < (n == 3 ? cells : 1); ++c[2]) {
                    WhitneyCube q;
                    q.side = side;
                    for (int d = 0; d < n; ++d) q.corner[d] = c[d] * side;
                    q.diameter = diam;
                    cover.cubes.push_back(q);
                    const std::size_t id = cover.cubes.size() - 1;
                    const auto pts = cover.members(grid, id);
                    bool free = true;
                    double dq = inf;
                    for (std::size_t p : pts) {
                        if (!mask[p] || cover.owner[p] >= 0) {
                            free = false;
                            break;
                        }
                        dq = std::min(dq, dist[p]);
                    }
                    const double slack = 1e-12 * diam;
                    const bool sandwich = dq >= diam - slack && dq <= 4 * diam + slack;
                    if (!free || (side > 1 && !sandwich)) {
                        cover.cubes.pop_back();
                        continue;
                    }
                    if (!sandwich) ++cover.violations;
                    auto& cube = cover.cubes.back();
                    cube.distance = dq;
                    for (int d = 0; d < n; ++d) cube.ball.center[d] = (c[d] * side + 0.5 * (side - 1)) * h;
                    cube.ball.radius = 1.5 * diam;
                    for (std::size_t p : pts) cover.owner[p] = static_cast<int>(id);
                }
    }
    return cover;
}

}  // namespace tentlab
