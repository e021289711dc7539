#include "tentlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tentlab {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::shared_ptr<const WaveTable> build_waves(int dim, int size, double box) {
    auto table = std::make_shared<WaveTable>();
    std::size_t points = 1;
    for (int d = 0; d < dim; ++d) points *= static_cast<std::size_t>(size);
    const double unit = 2.0 * std::numbers::pi / box;
    table->k.resize(points);
    table->kd.resize(points);
    table->k2.resize(points);
    table->shell.resize(points);
    table->conj.resize(points);
    table->keep.resize(points);

    std::map<long, int> shells;
    std::vector<long> m2(points);
    for (std::size_t flat = 0; flat < points; ++flat) {
        std::size_t rest = flat;
        Point k{}, kd{};
        Index neg{};
        long msq = 0;
        bool keep = true;
        for (int d = dim - 1; d >= 0; --d) {
            const int i = static_cast<int>(rest % static_cast<std::size_t>(size));
            rest /= static_cast<std::size_t>(size);
            const int m = i < size / 2 ? i : i - size;
            k[d] = unit * m;
            kd[d] = (i == size / 2) ? 0.0 : unit * m;
            msq += static_cast<long>(m) * m;
            neg[d] = (size - i) % size;
            if (3 * std::abs(m) > size) keep = false;
        }
        std::size_t c = 0;
        for (int d = 0; d < dim; ++d) c = c * static_cast<std::size_t>(size) + static_cast<std::size_t>(neg[d]);
        table->k[flat] = k;
        table->kd[flat] = kd;
        table->k2[flat] = unit * unit * static_cast<double>(msq);
        table->conj[flat] = c;
        table->keep[flat] = keep ? 1 : 0;
        m2[flat] = msq;
        shells.emplace(msq, 0);
    }
    int id = 0;
    for (auto& [msq, index] : shells) {
        index = id++;
        table->shell_k2.push_back(unit * unit * static_cast<double>(msq));
    }
    for (std::size_t flat = 0; flat < points; ++flat) table->shell[flat] = shells.at(m2[flat]);
    return table;
}

}  // namespace

Grid::Grid(int dim, int size, double box) : dim_(dim), size_(size), box_(box) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("grid: dim must be 2 or 3, got " + std::to_string(dim));
    if (!is_power_of_two(size) || size < 8)
        throw std::invalid_argument("grid: size must be a power of two >= 8, got " + std::to_string(size));
    if (!(box > 0.0) || !std::isfinite(box)) throw std::invalid_argument("grid: box must be positive");
    points_ = 1;
    for (int d = 0; d < dim; ++d) points_ *= static_cast<std::size_t>(size);
    waves_ = build_waves(dim, size, box);
}

Grid make_grid(int dim, int size, double box) { return Grid(dim, size, box); }

double Grid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }
double Grid::volume() const noexcept { return std::pow(box_, dim_); }
double Grid::wavenumber_unit() const noexcept { return 2.0 * std::numbers::pi / box_; }

Index Grid::unflatten(std::size_t flat) const noexcept {
    Index idx{};
    for (int d = dim_ - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % static_cast<std::size_t>(size_));
        flat /= static_cast<std::size_t>(size_);
    }
    return idx;
}

std::size_t Grid::flatten(const Index& idx) const noexcept {
    std::size_t flat = 0;
    for (int d = 0; d < dim_; ++d) {
        int i = idx[d] % size_;
        if (i < 0) i += size_;
        flat = flat * static_cast<std::size_t>(size_) + static_cast<std::size_t>(i);
    }
    return flat;
}

std::size_t Grid::shifted(std::size_t flat, const Index& offset) const noexcept {
    Index idx = unflatten(flat);
    for (int d = 0; d < dim_; ++d) idx[d] += offset[d];
    return flatten(idx);
}

Point Grid::position(std::size_t flat) const noexcept {
    const Index idx = unflatten(flat);
    Point p{};
    for (int d = 0; d < dim_; ++d) p[d] = idx[d] * spacing();
    return p;
}

long Grid::index_distance2(std::size_t a, std::size_t b) const noexcept {
    const Index ia = unflatten(a), ib = unflatten(b);
    long sum = 0;
    for (int d = 0; d < dim_; ++d) {
        int diff = std::abs(ia[d] - ib[d]);
        diff = std::min(diff, size_ - diff);
        sum += static_cast<long>(diff) * diff;
    }
    return sum;
}

double Grid::distance(std::size_t a, std::size_t b) const noexcept {
    return std::sqrt(static_cast<double>(index_distance2(a, b))) * spacing();
}

double Grid::distance(std::size_t a, const Point& p) const noexcept { return distance(position(a), p); }

double Grid::distance(const Point& a, const Point& b) const noexcept {
    double sum = 0.0;
    for (int d = 0; d < dim_; ++d) {
        double diff = std::fmod(std::abs(a[d] - b[d]), box_);
        diff = std::min(diff, box_ - diff);
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

TimeGrid::TimeGrid(double t_min, double ratio, int count) : t_min_(t_min), ratio_(ratio), count_(count) {
    if (!(t_min > 0.0)) throw std::invalid_argument("time grid: t_min must be positive");
    if (!(ratio > 1.0)) throw std::invalid_argument("time grid: ratio must exceed 1");
    if (count < 1) throw std::invalid_argument("time grid: count must be at least 1");
    values_.resize(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) values_[static_cast<std::size_t>(j)] = t_min * std::pow(ratio, j);
}

TimeGrid TimeGrid::spanning(double t_min, int per_octave, double t_max) {
    if (per_octave < 1) throw std::invalid_argument("time grid: per_octave must be positive");
    const double octaves = std::log2(t_max / t_min);
    const int count = static_cast<int>(std::floor(octaves * per_octave + 1e-9)) + 1;
    return TimeGrid(t_min, std::exp2(1.0 / per_octave), std::max(count, 1));
}

TimeGrid TimeGrid::for_grid(const Grid& grid, int per_octave) {
    const double h = grid.spacing();
    return spanning(h * h, per_octave, grid.box() * grid.box());
}

TimeGrid TimeGrid::scaled(double factor) const { return TimeGrid(t_min_ * factor, ratio_, count_); }

std::vector<double> TimeGrid::weights(double upper) const {
    std::vector<double> w(values_.size(), 0.0);
    if (!(upper > 0.0)) return w;
    if (upper <= values_[0]) {
        w[0] = upper;
        return w;
    }
    w[0] = values_[0];
    for (std::size_t j = 0; j + 1 < values_.size(); ++j) {
        const double a = values_[j], b = values_[j + 1];
        if (upper <= a) break;
        const double delta = b - a;
        if (upper >= b) {
            w[j] += 0.5 * delta;
            w[j + 1] += 0.5 * delta;
        } else {
            const double len = upper - a;
            const double theta = len / delta;
            w[j] += 0.5 * len * (2.0 - theta);
            w[j + 1] += 0.5 * len * theta;
            break;
        }
    }
    return w;
}

Interpolant interpolant(const TimeGrid& times, double s) {
    Interpolant ip;
    const int count = times.count();
    if (s <= times.t_min()) {
        ip.lo = 0;
        ip.w_lo = 1.0;
        return ip;
    }
    if (s > times.last() * (1.0 + 1e-14)) return ip;
    const double x = std::log(s / times.t_min()) / std::log(times.ratio());
    int j = std::min(static_cast<int>(std::floor(x)), count - 1);
    if (j >= count - 1) {
        ip.lo = count - 1;
        ip.w_lo = 1.0;
        return ip;
    }
    const double theta = std::clamp(x - j, 0.0, 1.0);
    ip.lo = j;
    ip.hi = j + 1;
    ip.w_lo = 1.0 - theta;
    ip.w_hi = theta;
    return ip;
}

}  // namespace tentlab
