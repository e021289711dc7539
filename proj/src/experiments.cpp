#include "tentlab/experiments.hpp"

#include "tentlab/atoms.hpp"
#include "tentlab/corpus.hpp"
#include "tentlab/hardy.hpp"
#include "tentlab/kernel_probes.hpp"
#include "tentlab/operators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tentlab {

namespace {

using Config = ExperimentConfig;

template <class F>
auto timed(RunReport& r, std::string stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto out = f();
    r.timings.push_back({std::move(stage), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
    return out;
}

double spread(double ratio) { return std::max(ratio, 1.0 / ratio); }

PlotSeries per_sample_series(const std::string& name, const std::string& y, const std::vector<double>& v) {
    PlotSeries s{name, "sample", y, {}};
    for (std::size_t i = 0; i < v.size(); ++i) s.points.emplace_back(static_cast<double>(i), v[i]);
    return s;
}

/// Adds finite and drift checks plus a two-point curve for one probe.
void add_probe(RunReport& r, const OperatorNormReport& p, const std::string& key, double drift_factor) {
    r.checks.push_back(check_true(key + ".finite", p.max_ratio, p.finite()));
    r.checks.push_back(check_le(key + ".drift", p.refined_size ? spread(p.drift) : NAN, drift_factor));
    r.plots.push_back({key, "N", "max ratio", {{p.grid_size, p.max_ratio}, {p.refined_size, p.refined_max}}});
    r.details[key] = to_json(p);
}

Config at_size(const Config& c, int size) {
    Config out = c;
    out.size = size;
    return out;
}

// 1 ------------------------------------------------------------------------

RunReport leray_idempotence(const Config& c) {
    RunReport r;
    for (int dim : {2, 3}) {
        const Grid g = make_grid(dim, c.size, c.box);
        const SpectrumShape full{c.spectrum_exponent, g.size()};
        double idem = 0.0, div = 0.0, grad = 0.0;
        timed(r, "leray.n" + std::to_string(dim), [&] {
            for (int i = 0; i < c.corpus_size; ++i) {
                const auto seed = c.seed + static_cast<std::uint64_t>(i);
                const Field u = random_field(g, Rank::vector, seed, full);
                const Field p = leray_project(u);
                idem = std::max(idem, (leray_project(p) - p).l2_norm() / u.l2_norm());
                div = std::max(div, differentiate(p, Divergence{}).l2_norm() / differentiate(u, Gradient{}).l2_norm());
                const Field gr = generate_field(g, FieldKind::gradient, seed, full);
                grad = std::max(grad, leray_project(gr).l2_norm() / gr.l2_norm());
            }
            return 0;
        });
        const std::string n = ".n" + std::to_string(dim);
        r.checks.push_back(check_le("leray.idempotence" + n, idem, 1e-10));
        r.checks.push_back(check_le("leray.divergence" + n, div, 1e-10));
        r.checks.push_back(check_le("leray.gradient_annihilated" + n, grad, 1e-10));
    }
    return r;
}

// 2 ------------------------------------------------------------------------

RunReport semigroup(const Config& c) {
    RunReport r;
    const std::vector<std::pair<double, double>> pairs{{1e-3, 2e-3}, {0.01, 0.03}, {0.3, 1.1}, {2.0, 5.0}};
    for (int dim : {2, 3}) {
        const Grid g = make_grid(dim, c.size, c.box);
        const SpectrumShape full{c.spectrum_exponent, g.size()};
        double law = 0.0, comm = 0.0;
        timed(r, "semigroup.n" + std::to_string(dim), [&] {
            for (int i = 0; i < c.corpus_size; ++i) {
                const Field u = random_field(g, Rank::vector, c.seed + static_cast<std::uint64_t>(i), full);
                for (const auto& [t, s] : pairs) {
                    law = std::max(law, (heat_evolve(heat_evolve(u, s), t) - heat_evolve(u, t + s)).l2_norm() / u.l2_norm());
                    comm = std::max(comm, (leray_project(heat_evolve(u, t)) - heat_evolve(leray_project(u), t)).l2_norm() / u.l2_norm());
                }
            }
            return 0;
        });
        const std::string n = ".n" + std::to_string(dim);
        r.checks.push_back(check_le("semigroup.heat_law" + n, law, 1e-12));
        r.checks.push_back(check_le("semigroup.leray_commutation" + n, comm, 1e-12));
    }
    return r;
}

// 3 ------------------------------------------------------------------------

RunReport desimon(const Config& c) {
    RunReport r;
    const OperatorNormReport p = timed(r, "maxreg", [&] { return desimon_check(c.probe_setup()); });
    r.checks.push_back(check_le("desimon.max_ratio", p.max_ratio, 2.05));
    r.checks.push_back(check_true("desimon.finite", p.max_ratio, p.finite()));
    r.plots.push_back(per_sample_series("desimon", "|M+f|/|f|", p.per_sample));
    r.details["desimon"] = to_json(p);
    return r;
}

// 4 ------------------------------------------------------------------------

double corpus_defect(const Config& c, const QuadratureScheme& scheme) {
    const Grid g = c.grid();
    const TimeGrid times = c.times();
    double worst = 0.0;
    for (int start = 0; start < c.corpus_size; start += 4) {
        const int count = std::min(4, c.corpus_size - start);
        const auto alphas = spacetime_corpus(g, times, Rank::tensor, c.seed + static_cast<std::uint64_t>(start), count,
                                             SpectrumShape{c.spectrum_exponent, c.band});
        worst = std::max(worst, decomposition_defect(alphas, scheme).max_relative);
    }
    return worst;
}

RunReport decomposition_identity(const Config& c) {
    RunReport r;
    const int K = c.nodes_per_half;
    const double coarse = timed(r, "defect.K", [&] { return corpus_defect(c, {c.split, K}); });
    const double fine = timed(r, "defect.2K", [&] { return corpus_defect(c, {c.split, 2 * K}); });
    r.checks.push_back(check_le("decomposition.max_defect", coarse, 1e-3));
    r.checks.push_back(check_le("decomposition.halving", fine / coarse, 0.5));
    r.plots.push_back({"decomposition_defect", "K", "max relative defect", {{K, coarse}, {2 * K, fine}}});
    r.details["defect"] = {{"K", K}, {"max_relative", coarse}, {"max_relative_2K", fine}};
    return r;
}

// 5 ------------------------------------------------------------------------

Field mode_tensor(const Grid& g, const Index& m) {
    Field f(g, Rank::tensor);
    const std::size_t k = g.flatten(m);
    const std::size_t kc = g.flatten({-m[0], -m[1], -m[2]});
    for (int i = 0; i < f.components(); ++i) {
        const cplx v(0.5 + 0.25 * i, 0.3 - 0.2 * i);
        f.coeffs(i)[k] = v;
        f.coeffs(i)[kc] = std::conj(v);
    }
    return f;
}

double mode_k2(const Grid& g, const Index& m) {
    const double u = 2 * std::numbers::pi / g.box();
    double s = 0.0;
    for (int d = 0; d < g.dim(); ++d) s += u * u * m[d] * m[d];
    return s;
}

/// max_j ‖out(t_j) − c(t_j)·d‖ / max_j |c(t_j)|·‖d‖
double profile_error(const SpaceTimeField& out, const Field& d, const std::function<double(double)>& coef) {
    double err = 0.0, scale = 0.0;
    for (int j = 0; j < out.count(); ++j) {
        const double cj = coef(out.times().at(j));
        err = std::max(err, (out.slice(j) - cj * d).l2_norm());
        scale = std::max(scale, std::abs(cj) * d.l2_norm());
    }
    return err / scale;
}

RunReport quadrature_oracle(const Config& c) {
    RunReport r;
    const Grid g = c.grid();
    const TimeGrid times = c.times();
    const int half = g.size() / 2 - 1;
    std::vector<Index> modes{{1, 0, 0}, {2, -1, 0}, {0, 3, 0}, {5, 4, 0}, {-7, 2, 0}, {half, -half / 2, 0}};
    if (g.dim() == 3)
        for (auto& m : modes) m[2] = (m[0] + 1) % 3;
    double worst = 0.0;
    timed(r, "constant_modes", [&] {
        for (const Index& m : modes) {
            const Field a = mode_tensor(g, m);
            const Field d = leray_divergence(a);
            if (d.l2_norm() == 0.0) continue;
            const double k2 = mode_k2(g, m);
            const SpaceTimeField out = duhamel_A(SpaceTimeField(times, std::vector<Field>(static_cast<std::size_t>(times.count()), a)),
                                                 c.scheme());
            worst = std::max(worst, profile_error(out, d, [k2](double t) { return -std::expm1(-t * k2) / k2; }));
        }
        return 0;
    });
    r.checks.push_back(check_le("quadrature.constant_mode_error", worst, 1e-6));

    // Time-varying source α(s) = e^{−bs}α₀ with b = |k|²/2: error against K.
    const Index m{2, -1, 0};
    const Field a = mode_tensor(g, m);
    const Field d = leray_divergence(a);
    const double k2 = mode_k2(g, m), b = 0.5 * k2;
    const auto exact = [&](double t) { return std::exp(-t * k2) * (-std::expm1(-t * (b - k2))) / (b - k2); };
    PlotSeries curve{"quadrature_error", "K", "max relative error", {}};
    timed(r, "convergence", [&] {
        for (int K = std::max(1, c.nodes_per_half / 8); K <= 2 * c.nodes_per_half; K *= 2) {
            const auto out = duhamel_A([&](double s) { return std::exp(-b * s) * a; }, times, {c.split, K});
            curve.points.emplace_back(K, profile_error(out, d, exact));
        }
        return 0;
    });
    const double at_k = curve.points[curve.points.size() - 2].second, at_2k = curve.points.back().second;
    r.checks.push_back(check_le("quadrature.halving", at_2k / at_k, 0.5));
    r.details["time_varying_error_K"] = at_k;
    r.plots.push_back(std::move(curve));
    return r;
}

// 6 ------------------------------------------------------------------------

RunReport tent_boundedness(const Config& c) {
    RunReport r;
    const ProbeSetup s = c.probe_setup();
    add_probe(r, timed(r, "maxreg", [&] { return maxreg_tent_check(s); }), "maxreg", 2.0);
    add_probe(r, timed(r, "Z", [&] { return z_tent_check(s); }), "Z", 2.0);
    add_probe(r, timed(r, "R", [&] { return r_tent_check(s); }), "R", 2.0);
    add_probe(r, timed(r, "pointwise", [&] { return pointwise_bound_check(s); }), "A.pointwise", 2.0);
    add_probe(r, timed(r, "duhamel_tent", [&] { return duhamel_tent_check(s); }), "A.tent", 2.0);
    return r;
}

// 7 ------------------------------------------------------------------------

RunReport carleson_pairing(const Config& c) {
    RunReport r;
    const ProbeSetup s = c.probe_setup();
    add_probe(r, timed(r, "carleson", [&] { return carleson_probe(s); }), "carleson", 1.2);
    add_probe(r, timed(r, "pairing", [&] { return pairing_probe(s); }), "pairing", 1.2);
    const OperatorNormReport cs = timed(r, "cauchy_schwarz", [&] { return cauchy_schwarz_probe(s); });
    r.checks.push_back(check_le("cauchy_schwarz.max_ratio", std::max(cs.max_ratio, cs.refined_max), 1 + 1e-10));
    r.details["cauchy_schwarz"] = to_json(cs);
    return r;
}

// 8 ------------------------------------------------------------------------

struct AtomStats {
    double reconstruction = 0.0;
    double reconstruction_relative = 0.0;
    int invalid_atoms = 0;
    int atoms = 0;
    int whitney_violations = 0;
    double spread = 1.0;
    double min_ratio = INFINITY, max_ratio = 0.0;
    double set_fraction = 1.0;
    double measure_bound = 1.0;
};

AtomStats atom_corpus(const Config& c, int members) {
    const Grid g = c.grid();
    const TimeGrid times = c.times();
    const BallFamily family = c.family();
    AtomStats st;
    for (int i = 0; i < members; ++i) {
        const auto seed = c.seed + static_cast<std::uint64_t>(i);
        const SpaceTimeField f = random_spacetime(g, times, Rank::vector, seed, SpectrumShape{c.spectrum_exponent, c.band});
        // Even members are restricted to the tent over a ball of radius L/4, odd ones fill the torus.
        Index centre{};
        for (int d = 0; d < g.dim(); ++d) centre[d] = static_cast<int>((seed * (7 + 5 * d)) % static_cast<std::uint64_t>(g.size()));
        const PhysicalSpaceTime G = i % 2 == 0 ? restrict_to_tent(f, Ball{g.position(g.flatten(centre)), g.box() / 4}) : to_physical(f);
        const AtomicDecomposition d = atomic_decompose(G, c.atom_params());
        PhysicalSpaceTime diff = reconstruct(d);
        for (std::size_t j = 0; j < diff.slices.size(); ++j)
            for (std::size_t k = 0; k < diff.slices[j].values.size(); ++k)
                for (std::size_t y = 0; y < g.points(); ++y) diff.slices[j].values[k][y] -= G.slices[j].values[k][y];
        st.reconstruction = std::max(st.reconstruction, l2_norm(diff));
        st.reconstruction_relative = std::max(st.reconstruction_relative, l2_norm(diff) / l2_norm(G));
        for (std::size_t a = 0; a < d.atoms.size(); ++a)
            if (!atom_validate(d, a).pass) ++st.invalid_atoms;
        st.atoms += static_cast<int>(d.atoms.size());
        st.whitney_violations += d.whitney_violations;
        st.min_ratio = std::min(st.min_ratio, d.ratio());
        st.max_ratio = std::max(st.max_ratio, d.ratio());
        st.spread = std::max(st.spread, spread(d.ratio()));
        st.measure_bound = std::min(st.measure_bound, measure_lower_bound(d, 200, seed).min_ratio);
        st.set_fraction = std::min(st.set_fraction, stopping_set_fraction(stopping_height(G.magnitude(), c.stopping_nu(), family), family));
    }
    return st;
}

RunReport atomic_decomposition(const Config& c) {
    RunReport r;
    const int members = std::min(c.corpus_size, 8);
    const AtomStats base = timed(r, "atoms.N", [&] { return atom_corpus(c, members); });
    const AtomStats fine = timed(r, "atoms.2N", [&] { return atom_corpus(at_size(c, 2 * c.size), members); });
    r.checks.push_back(check_le("atoms.reconstruction", std::max(base.reconstruction, fine.reconstruction), 1e-10));
    r.checks.push_back(check_le("atoms.invalid", base.invalid_atoms + fine.invalid_atoms, 0));
    r.checks.push_back(check_le("atoms.whitney_violations", base.whitney_violations + fine.whitney_violations, 0));
    r.checks.push_back(check_le("atoms.ratio_constant", std::max(base.spread, fine.spread), 100.0));
    r.checks.push_back(check_le("atoms.ratio_refinement", spread(fine.spread / base.spread), 2.0));
    r.checks.push_back(check_ge("atoms.stopping_set_fraction", std::min(base.set_fraction, fine.set_fraction), 0.99));
    r.checks.push_back(check_ge("atoms.measure_lower_bound", std::min(base.measure_bound, fine.measure_bound), 1e-12));
    r.plots.push_back({"atoms_ratio_constant", "N", "C", {{c.size, base.spread}, {2 * c.size, fine.spread}}});
    for (const auto& [key, st] : {std::pair{"N", base}, std::pair{"2N", fine}})
        r.details[key] = {{"members", members},
                          {"atoms", st.atoms},
                          {"reconstruction_relative", st.reconstruction_relative},
                          {"min_ratio", st.min_ratio},
                          {"max_ratio", st.max_ratio},
                          {"set_fraction", st.set_fraction},
                          {"measure_bound", st.measure_bound}};
    return r;
}

// 9 ------------------------------------------------------------------------

RunReport molecules(const Config& c) {
    RunReport r;
    const Grid g = c.grid();
    const std::vector<double> radii{g.box() / 8, g.box() / 16, g.box() / 32};
    const MoleculeScaling s = timed(r, "scaling", [&] { return molecule_scaling(g, c.times(), radii, c.q); });
    double mean = 0.0, planch = 0.0;
    PlotSeries weighted{"molecule_weighted", "R", "integral", {}}, plain{"molecule_plain", "R", "integral", {}};
    for (const auto& row : s.rows) {
        mean = std::max(mean, row.mean);
        planch = std::max(planch, row.plancherel);
        weighted.points.emplace_back(row.radius, row.weighted);
        plain.points.emplace_back(row.radius, row.plain);
    }
    r.checks.push_back(check_le("molecules.mean", mean, 1e-10));
    r.checks.push_back(check_le("molecules.plancherel", planch, 1 + 1e-3));
    r.checks.push_back(check_le("molecules.weighted_slope_error", std::abs(s.weighted_slope - s.weighted_predicted), 0.5));
    r.checks.push_back(check_le("molecules.plain_slope_error", std::abs(s.plain_slope - s.plain_predicted), 0.5));
    r.plots.push_back(std::move(weighted));
    r.plots.push_back(std::move(plain));
    r.details["scaling"] = to_json(s);
    return r;
}

// 10 -----------------------------------------------------------------------

RunReport solver(const Config& c) {
    RunReport r;
    const Grid g = c.grid();
    const TimeGrid times = c.times();
    const SolverConfig sc = c.solver();

    const PicardResult zero = timed(r, "zero", [&] { return picard_solve(Field(g, Rank::vector), times, sc); });
    r.checks.push_back(check_true("solver.zero_converges", static_cast<double>(zero.trace.steps.size()),
                                  zero.trace.status == PicardStatus::converged && zero.trace.steps.size() == 1 && zero.u.l2_norm() == 0.0));

    const Field tg = taylor_green(g);
    const PicardResult tgr = timed(r, "taylor_green", [&] { return picard_solve(tg, times, sc); });
    r.checks.push_back(check_true("solver.taylor_green_converges", tgr.trace.final_residual(), tgr.trace.status == PicardStatus::converged));
    r.checks.push_back(check_le("solver.taylor_green_vs_heat", x_norm(tgr.u - caloric_extend(tg, times)), 1e-6));

    const Field dir = generate_field(g, FieldKind::solenoidal, c.seed, SpectrumShape{c.spectrum_exponent, c.band});
    const SmallnessResult eps = timed(r, "smallness", [&] { return smallness_search(dir, times, sc); });
    r.checks.push_back(check_true("solver.threshold_interior", eps.threshold, eps.threshold > 0.0 && !eps.at_top));
    const Field u0 = (0.5 * eps.threshold / bmo_minus1_norm(dir, times, c.family())) * dir;
    const PicardResult small = timed(r, "small_data", [&] { return picard_solve(u0, times, sc); });
    r.checks.push_back(check_true("solver.small_data_converges", static_cast<double>(small.trace.steps.size()),
                                  small.trace.status == PicardStatus::converged));
    r.checks.push_back(check_le("solver.contraction", small.trace.max_contraction().value_or(NAN), 0.5));
    r.checks.push_back(check_le("solver.final_residual", residual(small.u, u0, sc.scheme), 2 * c.tol));

    const DualityReport dual = timed(r, "duality", [&] { return duality_check(g, times, c.seed); });
    r.checks.push_back(check_le("solver.a2_duality", dual.relative, 1e-6));

    PlotSeries trace{"picard_residual", "iteration", "X residual", {}};
    for (const auto& st : small.trace.steps) trace.points.emplace_back(st.iteration, st.residual);
    r.plots.push_back(std::move(trace));
    r.details["smallness"] = to_json(eps);
    r.details["small_data_trace"] = to_json(small.trace);
    r.details["duality"] = to_json(dual);
    return r;
}

// 11 -----------------------------------------------------------------------

RunReport scaling(const Config& c) {
    RunReport r;
    const Grid g = c.grid();
    const TimeGrid times = c.times();
    double worst = 0.0, roundtrip = 0.0;
    bool same_grid = true;
    timed(r, "scaling", [&] {
        for (int i = 0; i < std::min(c.corpus_size, 8); ++i) {
            const Field u0 = generate_field(g, FieldKind::solenoidal, c.seed + static_cast<std::uint64_t>(i),
                                            SpectrumShape{c.spectrum_exponent, c.band});
            const SpaceTimeField u = caloric_extend(u0, times);
            const SpaceTimeField s = scaling_transform(u, c.lambda);
            worst = std::max(worst, std::abs(x_norm(s) / x_norm(u) - 1.0));
            const SpaceTimeField back = scaling_transform(s, 1.0 / c.lambda);
            same_grid = same_grid && back.grid() == u.grid() && back.times() == u.times();
            if (same_grid) roundtrip = std::max(roundtrip, (back - u).l2_norm());
        }
        return 0;
    });
    r.checks.push_back(check_le("scaling.x_norm_deviation", worst, 0.05));
    r.checks.push_back(check_true("scaling.roundtrip_exact", roundtrip, same_grid && roundtrip == 0.0));
    return r;
}

// 12 -----------------------------------------------------------------------

RunReport off_diagonal(const Config& c) {
    RunReport r;
    const Grid g = c.grid();
    const double L = g.box();
    Point pf{}, pe{};
    pf[0] = L / 4;
    pe[0] = L / 4 + 3 * L / 8;
    for (int d = 1; d < g.dim(); ++d) pf[d] = pe[d] = L / 2;
    const SpatialBall f{pf, L / 16}, e{pe, L / 16};
    std::vector<Field> corpus;
    for (int i = 0; i < 4; ++i)
        corpus.push_back(random_field(g, Rank::scalar, c.seed + static_cast<std::uint64_t>(i), SpectrumShape{c.spectrum_exponent, g.size()}));
    const double dist = ball_separation(g, e, f);
    std::vector<double> ts;
    for (int i = 0; i <= 8; ++i) ts.push_back(dist * dist / 4 / std::exp2(0.5 * i));  // d²/t from 4 to 64
    const OffDiagReport od = timed(r, "offdiag", [&] {
        return offdiag_probe([](double t) { return MultiplierOp::heat_derivative(t); }, e, f, ts, corpus);
    });
    r.checks.push_back(check_ge("offdiag.fitted_order", od.fitted_order, 2.0));
    PlotSeries curve{"offdiag", "d^2/t", "ratio", {}};
    for (std::size_t i = 0; i < od.times.size(); ++i) curve.points.emplace_back(dist * dist / od.times[i], od.ratios[i]);
    r.plots.push_back(std::move(curve));
    r.details["offdiag"] = to_json(od);

    const SchurReport base = timed(r, "schur.N", [&] { return schur_check(g, c.times(), c.beta); });
    const Config fine_cfg = at_size(c, 2 * c.size);
    const SchurReport fine = timed(r, "schur.2N", [&] { return schur_check(fine_cfg.grid(), fine_cfg.times(), c.beta); });
    r.checks.push_back(check_true("schur.finite", std::max(base.sup_s, base.sup_t), base.finite() && fine.finite()));
    r.checks.push_back(check_le("schur.sup_s_refinement", spread(fine.sup_s / base.sup_s), 1.25));
    r.checks.push_back(check_le("schur.sup_t_refinement", spread(fine.sup_t / base.sup_t), 1.25));
    // k(t, s)·√s·√(t+s) = √r·e^{−r} at r = (t+s)|k|², whose maximum is (2e)^{−1/2}.
    r.checks.push_back(check_le("schur.pointwise_constant", std::max(base.pointwise_constant, fine.pointwise_constant),
                                (1 + 1e-12) / std::sqrt(2 * std::numbers::e)));
    r.checks.push_back(check_le("schur.probe_excess", std::max(base.probe_excess, fine.probe_excess), 1e-9));
    r.details["schur"] = {{"N", to_json(base)}, {"2N", to_json(fine)}};
    return r;
}

}  // namespace

const std::vector<Experiment>& experiments() {
    static const std::vector<Experiment> registry{
        {"leray-idempotence", "Leray projector idempotence, divergence and gradient residuals", leray_idempotence},
        {"semigroup", "heat semigroup law and commutation with the projector", semigroup},
        {"desimon", "L2 bound of the maximal regularity operator", desimon},
        {"decomposition-identity", "A = A1 + A2 - A3 defect and its decay in K", decomposition_identity},
        {"quadrature-oracle", "Duhamel quadrature against per-mode closed forms", quadrature_oracle},
        {"tent-boundedness", "T^{inf,2} ratios of M+, Z, R and both Duhamel bounds at two resolutions", tent_boundedness},
        {"carleson-pairing", "Carleson embedding, tent pairing and the Cauchy-Schwarz inequality", carleson_pairing},
        {"atomic-decomposition", "T^{1,2} atoms: reconstruction, validity, coefficient ratio, stopping sets", atomic_decomposition},
        {"molecules", "mean, Plancherel bound and scaling slopes of M applied to atoms", molecules},
        {"solver", "Picard iteration: trivial, Taylor-Green and small data; A2 duality", solver},
        {"scaling", "parabolic scaling invariance of the X norm and exact round trip", scaling},
        {"off-diagonal", "off-diagonal decay order and the Schur test for K_{t,s}", off_diagonal},
    };
    return registry;
}

std::vector<std::string> experiment_names() {
    std::vector<std::string> out;
    for (const auto& e : experiments()) out.push_back(e.name);
    return out;
}

RunReport run_experiment(const ExperimentConfig& config) {
    const auto& reg = experiments();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const Experiment& e) { return e.name == config.experiment; });
    if (it == reg.end()) {
        std::string list;
        for (const auto& e : reg) list += (list.empty() ? "" : ", ") + e.name;
        throw std::invalid_argument("unknown experiment '" + config.experiment + "'; available: " + list);
    }
    config.validate();
    RunReport r;
    try {
        r = it->run(config);
    } catch (const std::exception& e) {
        throw std::runtime_error("experiment " + it->name + ": " + e.what());
    }
    r.experiment = it->name;
    r.config = to_json(config);
    r.sort_checks();
    return r;
}

}  // namespace tentlab
