#include "tentlab/balls.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tentlab {

namespace {

int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

int torus_abs(int a, int n) {
    a = std::abs(a) % n;
    return std::min(a, n - a);
}

// Largest w ≥ 0 with w² ≤ rem (closed) or w² < rem (open); −1 if none.
int half_width(double rem, double eps, bool closed) {
    if (closed ? rem < -eps : rem <= eps) return -1;
    int w = static_cast<int>(std::floor(std::sqrt(std::max(rem, 0.0))));
    if (closed) {
        while (static_cast<double>(w + 1) * (w + 1) <= rem + eps) ++w;
        while (w > 0 && static_cast<double>(w) * w > rem + eps) --w;
    } else {
        while (static_cast<double>(w + 1) * (w + 1) < rem - eps) ++w;
        while (w > 0 && static_cast<double>(w) * w >= rem - eps) --w;
    }
    return w;
}

}  // namespace

std::vector<double> dyadic_radii(const Grid& grid) {
    std::vector<double> radii;
    const double h = grid.spacing();
    for (int m = 2; m * 2 <= grid.size(); m *= 2) radii.push_back(m * h);
    return radii;
}

std::vector<Index> ball_offsets(const Grid& grid, double radius, bool closed) {
    const int n = grid.dim(), N = grid.size();
    const double rho2 = std::pow(radius / grid.spacing(), 2);
    const double eps = 1e-9 * std::max(1.0, rho2);
    std::vector<Index> out;
    Index a{};
    const int lo = -N / 2, hi = N / 2;
    for (a[0] = lo; a[0] < hi; ++a[0])
        for (a[1] = lo; a[1] < hi; ++a[1])
            for (a[2] = (n == 3 ? lo : 0); a[2] < (n == 3 ? hi : 1); ++a[2]) {
                double d2 = 0.0;
                for (int d = 0; d < n; ++d) d2 += std::pow(torus_abs(a[d], N), 2);
                if (closed ? d2 <= rho2 + eps : d2 < rho2 - eps) out.push_back(a);
            }
    return out;
}

BallRows ball_rows(const Grid& grid, double radius, bool closed) {
    const int n = grid.dim(), N = grid.size();
    const double rho2 = std::pow(radius / grid.spacing(), 2);
    const double eps = 1e-9 * std::max(1.0, rho2);
    BallRows rows;
    Index a{};
    const int lo = -N / 2, hi = N / 2;
    for (a[0] = lo; a[0] < hi; ++a[0])
        for (a[1] = (n == 3 ? lo : 0); a[1] < (n == 3 ? hi : 1); ++a[1]) {
            double e2 = std::pow(torus_abs(a[0], N), 2);
            if (n == 3) e2 += std::pow(torus_abs(a[1], N), 2);
            const int w = half_width(rho2 - e2, eps, closed);
            if (w < 0) continue;
            rows.row_offsets.push_back(a);
            rows.half_width.push_back(2 * w + 1 >= N ? -1 : w);
        }
    return rows;
}

ConeIndex cone_index(const Grid& grid, const std::vector<double>& times) {
    ConeIndex index;
    for (double t : times) index.slices.push_back(ball_rows(grid, std::sqrt(t), true));
    return index;
}

BallFamily::BallFamily(const Grid& grid, int stride, std::vector<double> radii)
    : grid_(grid), stride_(stride > 0 ? stride : std::max(1, grid.size() / 16)), radii_(std::move(radii)) {
    if (radii_.empty()) radii_ = dyadic_radii(grid_);
    if (grid_.size() % stride_ != 0) throw std::invalid_argument("ball family: stride must divide N");
    for (double r : radii_)
        if (!(r > 0.0) || r > grid_.box() / 2 * (1 + 1e-12))
            throw std::invalid_argument("ball family: radii must lie in (0, L/2]");
    for (std::size_t x = 0; x < grid_.points(); ++x) {
        const Index idx = grid_.unflatten(x);
        bool on = true;
        for (int d = 0; d < grid_.dim(); ++d) on = on && idx[d] % stride_ == 0;
        if (on) centers_.push_back(x);
    }
    for (double r : radii_) offsets_.push_back(ball_offsets(grid_, r, false));
}

Ball BallFamily::ball(std::size_t center_index, std::size_t radius_index) const {
    return Ball{grid_.position(centers_.at(center_index)), radii_.at(radius_index)};
}

double BallFamily::volume(std::size_t radius_index) const {
    return static_cast<double>(offsets_.at(radius_index).size()) * grid_.cell_volume();
}

std::string BallFamily::id() const {
    std::ostringstream os;
    os << "stride=" << stride_ << ";radii=";
    for (std::size_t i = 0; i < radii_.size(); ++i) os << (i ? "," : "") << radii_[i] / grid_.spacing() << "h";
    return os.str();
}

RowScanner::RowScanner(const Grid& grid, std::span<const double> values, bool want_max)
    : grid_(grid), n_(grid.dim()), rows_(grid.points() / static_cast<std::size_t>(grid.size())) {
    const std::size_t N = static_cast<std::size_t>(grid.size());
    if (values.size() != grid.points()) throw std::invalid_argument("row scanner: value count mismatch");
    prefix_.assign(rows_ * (N + 1), 0.0);
    row_total_.assign(rows_, 0.0);
    row_peak_.assign(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0, peak = -INFINITY;
        for (std::size_t j = 0; j < N; ++j) {
            acc += values[r * N + j];
            prefix_[r * (N + 1) + j + 1] = acc;
            peak = std::max(peak, values[r * N + j]);
        }
        row_total_[r] = acc;
        row_peak_[r] = peak;
    }
    if (!want_max) return;
    const std::size_t width = 2 * N;
    sparse_.emplace_back(rows_ * width);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < width; ++j) sparse_[0][r * width + j] = values[r * N + j % N];
    for (std::size_t len = 2; len <= width; len *= 2) {
        const auto& prev = sparse_.back();
        std::vector<double> next(rows_ * width, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j + len <= width; ++j)
                next[r * width + j] = std::max(prev[r * width + j], prev[r * width + j + len / 2]);
        sparse_.push_back(std::move(next));
    }
}

std::size_t RowScanner::row_of(std::size_t row, const Index& offset) const noexcept {
    const int N = grid_.size();
    if (n_ == 2) return static_cast<std::size_t>(wrap(static_cast<int>(row) + offset[0], N));
    const int i0 = static_cast<int>(row) / N, i1 = static_cast<int>(row) % N;
    return static_cast<std::size_t>(wrap(i0 + offset[0], N) * N + wrap(i1 + offset[1], N));
}

double RowScanner::row_sum(std::size_t row, int j, int w) const noexcept {
    if (w < 0) return row_total_[row];
    const int N = grid_.size();
    const double* p = &prefix_[row * static_cast<std::size_t>(N + 1)];
    const int l = wrap(j - w, N), len = 2 * w + 1;
    if (l + len <= N) return p[l + len] - p[l];
    return (p[N] - p[l]) + p[l + len - N];
}

double RowScanner::row_max(std::size_t row, int j, int w) const noexcept {
    if (w < 0) return row_peak_[row];
    const std::size_t width = 2 * static_cast<std::size_t>(grid_.size());
    const int l = wrap(j - w, grid_.size()), len = 2 * w + 1;
    const int level = std::bit_width(static_cast<unsigned>(len)) - 1;
    const auto& table = sparse_[static_cast<std::size_t>(level)];
    const double* base = &table[row * width];
    return std::max(base[l], base[l + len - (1 << level)]);
}

double RowScanner::sum(std::size_t center, const BallRows& rows) const {
    const std::size_t N = static_cast<std::size_t>(grid_.size());
    const std::size_t row = center / N;
    const int j = static_cast<int>(center % N);
    double acc = 0.0;
    for (std::size_t i = 0; i < rows.row_offsets.size(); ++i)
        acc += row_sum(row_of(row, rows.row_offsets[i]), j, rows.half_width[i]);
    return acc;
}

double RowScanner::max(std::size_t center, const BallRows& rows) const {
    if (sparse_.empty()) throw std::logic_error("row scanner: built without max tables");
    const std::size_t N = static_cast<std::size_t>(grid_.size());
    const std::size_t row = center / N;
    const int j = static_cast<int>(center % N);
    double m = -INFINITY;
    for (std::size_t i = 0; i < rows.row_offsets.size(); ++i)
        m = std::max(m, row_max(row_of(row, rows.row_offsets[i]), j, rows.half_width[i]));
    return m;
}

std::vector<double> RowScanner::sums(const BallRows& rows) const {
    std::vector<double> out(grid_.points());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = sum(x, rows);
    return out;
}

std::vector<double> RowScanner::maxima(const BallRows& rows) const {
    std::vector<double> out(grid_.points());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = max(x, rows);
    return out;
}

}  // namespace tentlab
