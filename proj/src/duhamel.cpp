#include "tentlab/duhamel.hpp"

#include "tentlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace tentlab {

namespace {

using Samples = std::vector<Field>;

/// One quadrature contribution: a cell and how its node reads the samples.
struct Tap {
    int lo = -1;
    int hi = -1;
    double w_lo = 0.0;
    double w_hi = 0.0;
    Cell cell;
};

Tap cell_tap(const TimeGrid& times, const Cell& c) {
    const Interpolant ip = interpolant(times, c.node);
    return {ip.lo, ip.hi, ip.w_lo, ip.w_hi, c};
}

Tap sample_tap(const TimeGrid& times, int i) {
    const double s = times.at(i);
    return {i, -1, 1.0, 0.0, Cell{s, s, s}};
}

/// out[m][j] = Σ_taps weight(j, tap, |k|²)·D_m(node) for each member m and target j.
///
/// Weights depend on the mode only through its shell, so each target builds
/// one table β[sample][shell] and applies it to every member.
template <class TapsOf, class Weight>
std::vector<std::vector<Field>> assemble(const std::vector<Samples>& members, const TimeGrid& times, std::size_t targets,
                                         TapsOf&& taps_of, Weight&& weight) {
    const Field& proto = members.front().front();
    const Grid& grid = proto.grid();
    const auto& shell = grid.waves().shell;
    const auto& shell_k2 = grid.waves().shell_k2;
    const std::size_t S = shell_k2.size();
    const std::size_t M = static_cast<std::size_t>(times.count());
    std::vector<std::vector<Field>> out(members.size());
    std::vector<double> beta(M * S);
    std::vector<char> used(M);
    for (std::size_t j = 0; j < targets; ++j) {
        std::fill(beta.begin(), beta.end(), 0.0);
        std::fill(used.begin(), used.end(), 0);
        for (const Tap& tap : taps_of(j)) {
            if (tap.lo < 0) continue;
            double* blo = &beta[static_cast<std::size_t>(tap.lo) * S];
            double* bhi = tap.hi >= 0 ? &beta[static_cast<std::size_t>(tap.hi) * S] : nullptr;
            used[static_cast<std::size_t>(tap.lo)] = 1;
            if (bhi) used[static_cast<std::size_t>(tap.hi)] = 1;
            for (std::size_t s = 0; s < S; ++s) {
                const double w = weight(j, tap.cell, shell_k2[s]);
                blo[s] += w * tap.w_lo;
                if (bhi) bhi[s] += w * tap.w_hi;
            }
        }
        for (std::size_t m = 0; m < members.size(); ++m) {
            Field f(grid, proto.rank());
            for (std::size_t i = 0; i < M; ++i) {
                if (!used[i]) continue;
                const double* b = &beta[i * S];
                const Field& d = members[m][i];
                for (int c = 0; c < f.components(); ++c) {
                    auto dst = f.coeffs(c);
                    auto src = d.coeffs(c);
                    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += b[shell[k]] * src[k];
                }
            }
            out[m].push_back(std::move(f));
        }
    }
    return out;
}

std::vector<SpaceTimeField> wrap(const TimeGrid& times, std::vector<std::vector<Field>> slices) {
    std::vector<SpaceTimeField> out;
    for (auto& s : slices) out.emplace_back(times, std::move(s));
    return out;
}

const TimeGrid& common_times(std::span<const SpaceTimeField> fs) {
    if (fs.empty()) throw std::invalid_argument("operator batch: empty input");
    for (const auto& f : fs)
        if (!(f.times() == fs.front().times()) || !(f.grid() == fs.front().grid()) || f.rank() != fs.front().rank())
            throw std::invalid_argument("operator batch: members must share grid, time grid and rank");
    return fs.front().times();
}

std::vector<Samples> pdiv_samples(std::span<const SpaceTimeField> alphas) {
    std::vector<Samples> out;
    for (const auto& a : alphas) {
        if (a.rank() != Rank::tensor) throw std::invalid_argument("expected a tensor field");
        Samples s;
        for (const Field& f : a.slices()) s.push_back(leray_divergence(f));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Samples> raw_samples(std::span<const SpaceTimeField> fs) {
    std::vector<Samples> out;
    for (const auto& f : fs) out.push_back(f.slices());
    return out;
}

/// Taps for ∫₀^{t_j} on the graded Duhamel cells.
auto duhamel_taps(const TimeGrid& times, const QuadratureScheme& scheme) {
    return [&times, scheme](std::size_t j) {
        std::vector<Tap> taps;
        for (const Cell& c : duhamel_cells(times.at(static_cast<int>(j)), scheme)) taps.push_back(cell_tap(times, c));
        return taps;
    };
}

/// Taps for ∫_{t_from}^∞ over the span.
std::vector<Tap> span_taps(const TimeGrid& times, const QuadratureScheme& scheme, SpanRule rule, int from, const SpanCells& graded) {
    std::vector<Tap> taps;
    if (rule == SpanRule::graded) {
        for (std::size_t c = 0; c < graded.cells.size(); ++c)
            if (graded.piece[c] >= from) taps.push_back(cell_tap(times, graded.cells[c]));
        return taps;
    }
    (void)scheme;
    const auto full = times.weights();
    const auto head = from >= 0 ? times.weights(times.at(from)) : std::vector<double>(full.size(), 0.0);
    for (int i = std::max(from, 0); i < times.count(); ++i) {
        Tap t = sample_tap(times, i);
        t.w_lo = full[static_cast<std::size_t>(i)] - head[static_cast<std::size_t>(i)];
        taps.push_back(t);
    }
    return taps;
}

/// ∫ of e^{−(t+s)k²} over the tap: exact on graded cells, the sample value on sample taps.
double plus_kernel(double t, const Cell& c, double k2) {
    if (c.hi == c.lo) return std::exp(-(t + c.node) * k2);
    return exp_integral(t + c.lo, t + c.hi, k2);
}

double minus_kernel(double t, const Cell& c, double k2) { return exp_integral(t - c.hi, t - c.lo, k2); }

/// Scalar part of Z(s^{1/2}α)(s) = T_s(s^{1/2}α(s)) per shell: s^{1/2}·(−s^{1/2}(1 − e^{−2sk²})/(sk²)).
double z_source_factor(double s, double k2) { return -s * decay_quotient(s * k2); }

std::vector<SpaceTimeField> run_a(const std::vector<Samples>& d, const TimeGrid& times, const QuadratureScheme& scheme) {
    const std::size_t n = static_cast<std::size_t>(times.count());
    return wrap(times, assemble(d, times, n, duhamel_taps(times, scheme), [&](std::size_t j, const Cell& c, double k2) {
                    return minus_kernel(times.at(static_cast<int>(j)), c, k2);
                }));
}

std::vector<SpaceTimeField> run_maxreg(const std::vector<Samples>& d, const TimeGrid& times, const QuadratureScheme& scheme,
                                       bool z_source) {
    const std::size_t n = static_cast<std::size_t>(times.count());
    return wrap(times, assemble(d, times, n, duhamel_taps(times, scheme), [&](std::size_t j, const Cell& c, double k2) {
                    const double w = -k2 * minus_kernel(times.at(static_cast<int>(j)), c, k2);
                    return z_source ? w * z_source_factor(c.node, k2) : w;
                }));
}

std::vector<SpaceTimeField> run_a2(const std::vector<Samples>& d, const TimeGrid& times, const QuadratureScheme& scheme,
                                   SpanRule rule) {
    const SpanCells graded = span_cells(times, scheme);
    const std::vector<Tap> taps = span_taps(times, scheme, rule, -1, graded);
    const std::size_t n = static_cast<std::size_t>(times.count());
    return wrap(times, assemble(d, times, n, [&](std::size_t) -> const std::vector<Tap>& { return taps; },
                                [&](std::size_t j, const Cell& c, double k2) { return plus_kernel(times.at(static_cast<int>(j)), c, k2); }));
}

std::vector<SpaceTimeField> run_a3(const std::vector<Samples>& d, const TimeGrid& times, const QuadratureScheme& scheme,
                                   SpanRule rule) {
    const SpanCells graded = span_cells(times, scheme);
    const std::size_t n = static_cast<std::size_t>(times.count());
    return wrap(times, assemble(d, times, n,
                                [&](std::size_t j) { return span_taps(times, scheme, rule, static_cast<int>(j), graded); },
                                [&](std::size_t j, const Cell& c, double k2) { return plus_kernel(times.at(static_cast<int>(j)), c, k2); }));
}

}  // namespace

SpaceTimeField duhamel_A(const SpaceTimeField& alpha, const QuadratureScheme& scheme) {
    return duhamel_A(std::span<const SpaceTimeField>(&alpha, 1), scheme).front();
}

std::vector<SpaceTimeField> duhamel_A(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme) {
    const TimeGrid& times = common_times(alphas);
    return run_a(pdiv_samples(alphas), times, scheme);
}

SpaceTimeField duhamel_A(const TimeSource& alpha, const TimeGrid& targets, const QuadratureScheme& scheme) {
    std::vector<Field> out;
    for (int j = 0; j < targets.count(); ++j) {
        const double t = targets.at(j);
        std::optional<Field> acc;
        for (const Cell& c : duhamel_cells(t, scheme)) {
            const Field d = leray_divergence(alpha(c.node));
            if (!acc) acc.emplace(d.grid(), d.rank());
            const auto& k2 = d.grid().waves().k2;
            for (int comp = 0; comp < d.components(); ++comp) {
                auto dst = acc->coeffs(comp);
                auto src = d.coeffs(comp);
                for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += minus_kernel(t, c, k2[k]) * src[k];
            }
        }
        out.push_back(std::move(*acc));
    }
    return SpaceTimeField(targets, std::move(out));
}

SpaceTimeField bilinear_B(const SpaceTimeField& u, const SpaceTimeField& v, const QuadratureScheme& scheme) {
    if (!(u.times() == v.times()) || !(u.grid() == v.grid())) throw std::invalid_argument("bilinear_B: grid mismatch");
    std::vector<Field> prod;
    for (int j = 0; j < u.count(); ++j) prod.push_back(tensor_product(u.slice(j), v.slice(j)));
    return duhamel_A(SpaceTimeField(u.times(), std::move(prod)), scheme);
}

SpaceTimeField maxreg_apply(const SpaceTimeField& f, const QuadratureScheme& scheme) {
    return maxreg_apply(std::span<const SpaceTimeField>(&f, 1), scheme).front();
}

std::vector<SpaceTimeField> maxreg_apply(std::span<const SpaceTimeField> fs, const QuadratureScheme& scheme) {
    return run_maxreg(raw_samples(fs), common_times(fs), scheme, false);
}

SpaceTimeField z_apply(const SpaceTimeField& f) {
    std::vector<Field> out;
    for (int j = 0; j < f.count(); ++j) out.push_back(ts_apply(f.slice(j), f.times().at(j)));
    return SpaceTimeField(f.times(), std::move(out));
}

SpaceTimeField a1_apply(const SpaceTimeField& alpha, const QuadratureScheme& scheme) {
    return a1_apply(std::span<const SpaceTimeField>(&alpha, 1), scheme).front();
}

std::vector<SpaceTimeField> a1_apply(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme) {
    return run_maxreg(pdiv_samples(alphas), common_times(alphas), scheme, true);
}

SpaceTimeField a2_apply(const SpaceTimeField& alpha, const QuadratureScheme& scheme, SpanRule rule) {
    return a2_apply(std::span<const SpaceTimeField>(&alpha, 1), scheme, rule).front();
}

std::vector<SpaceTimeField> a2_apply(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme, SpanRule rule) {
    return run_a2(pdiv_samples(alphas), common_times(alphas), scheme, rule);
}

SpaceTimeField a3_apply(const SpaceTimeField& alpha, const QuadratureScheme& scheme, SpanRule rule) {
    return a3_apply(std::span<const SpaceTimeField>(&alpha, 1), scheme, rule).front();
}

std::vector<SpaceTimeField> a3_apply(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme, SpanRule rule) {
    return run_a3(pdiv_samples(alphas), common_times(alphas), scheme, rule);
}

Field calM_prime(const SpaceTimeField& alpha, const QuadratureScheme& scheme, SpanRule rule) {
    const TimeGrid& times = alpha.times();
    const SpanCells graded = span_cells(times, scheme);
    const std::vector<Tap> taps = span_taps(times, scheme, rule, -1, graded);
    auto out = assemble(pdiv_samples(std::span<const SpaceTimeField>(&alpha, 1)), times, 1,
                        [&](std::size_t) -> const std::vector<Tap>& { return taps; },
                        [](std::size_t, const Cell& c, double k2) { return plus_kernel(0.0, c, k2); });
    return std::move(out.front().front());
}

SpaceTimeField r_apply(const SpaceTimeField& f, const QuadratureScheme& scheme, SpanRule rule, double source_power) {
    return r_apply(std::span<const SpaceTimeField>(&f, 1), scheme, rule, source_power).front();
}

std::vector<SpaceTimeField> r_apply(std::span<const SpaceTimeField> fs, const QuadratureScheme& scheme, SpanRule rule,
                                    double source_power) {
    const TimeGrid& times = common_times(fs);
    const std::vector<Samples> d = pdiv_samples(fs);
    const int n = times.count();
    // V[p] = ∫_{piece p} s^{p−1/2} e^{sΔ} ℙdiv F(s) ds; pieces 0..n−1 (graded: piece i is
    // [t_i, t_{i+1}], sample: the sample t_i itself).
    const SpanCells graded = span_cells(times, scheme);
    std::vector<std::vector<Tap>> pieces(static_cast<std::size_t>(n));
    if (rule == SpanRule::graded) {
        for (std::size_t c = 0; c < graded.cells.size(); ++c)
            if (graded.piece[c] >= 0) pieces[static_cast<std::size_t>(graded.piece[c])].push_back(cell_tap(times, graded.cells[c]));
    } else {
        for (int i = 0; i < n; ++i) pieces[static_cast<std::size_t>(i)].push_back(sample_tap(times, i));
    }
    const auto kernel = [&](std::size_t, const Cell& c, double k2) {
        return std::pow(c.node, source_power - 0.5) * plus_kernel(0.0, c, k2);
    };
    const auto v = assemble(d, times, static_cast<std::size_t>(n), [&](std::size_t p) -> const std::vector<Tap>& { return pieces[p]; },
                            kernel);

    const auto full = times.weights();
    std::vector<SpaceTimeField> out;
    for (std::size_t m = 0; m < fs.size(); ++m) {
        std::vector<Field> slices(static_cast<std::size_t>(n), Field(fs[m].grid(), Rank::vector));
        Field suffix(fs[m].grid(), Rank::vector);
        for (int j = n - 1; j >= 0; --j) {
            const std::size_t js = static_cast<std::size_t>(j);
            if (rule == SpanRule::graded) {
                suffix += v[m][js];
                slices[js] = heat_evolve(suffix, times.at(j));
            } else {
                // Trapezoid on [t_j, last]: half of the first interval at t_j.
                const double first = j + 1 < n ? 0.5 * (times.at(j + 1) - times.at(j)) : 0.0;
                Field acc = suffix;
                acc.axpy(first, v[m][js]);
                slices[js] = heat_evolve(acc, times.at(j));
                suffix.axpy(full[js], v[m][js]);
            }
        }
        out.emplace_back(times, std::move(slices));
    }
    return out;
}

DecompositionDefect decomposition_defect(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme) {
    const TimeGrid& times = common_times(alphas);
    const std::vector<Samples> d = pdiv_samples(alphas);
    const auto a = run_a(d, times, scheme);
    const auto a1 = run_maxreg(d, times, scheme, true);
    const auto a2 = run_a2(d, times, scheme, SpanRule::graded);
    const auto a3 = run_a3(d, times, scheme, SpanRule::graded);
    DecompositionDefect out;
    for (std::size_t m = 0; m < alphas.size(); ++m) {
        double worst = 0.0;
        for (int j = 0; j < times.count(); ++j) {
            const double base = a[m].slice(j).l2_norm();
            if (base == 0.0) continue;
            Field diff = a[m].slice(j);
            diff -= a1[m].slice(j);
            diff -= a2[m].slice(j);
            diff += a3[m].slice(j);
            worst = std::max(worst, diff.l2_norm() / base);
        }
        out.per_member.push_back(worst);
        out.max_relative = std::max(out.max_relative, worst);
    }
    return out;
}

}  // namespace tentlab
