#include "ivo/rivf.hpp"

#include <algorithm>
#include <cmath>

namespace ivo {

namespace {

bool robustly_incomparable(const Interval& a, const Interval& b, double tol) {
    return (a.lo < b.lo - tol && a.hi > b.hi + tol) ||
           (a.lo > b.lo + tol && a.hi < b.hi - tol);
}

void copy_coords(std::vector<double>& out, const Eigen::VectorXd& c) {
    out.insert(out.end(), c.data(), c.data() + c.size());
}

}  // namespace

Interval eval(const Rivf& f, const ManifoldPoint& x) {
    if (!f.in_domain(x)) throw DomainExit("eval: point outside the domain of " + f.key);
    const double lo = f.lower(x);
    const double hi = f.upper(x);
    if (!(lo <= hi))
        throw MalformedRivf("eval: lower > upper for " + f.key);
    return Interval(lo, hi);
}

DerivativeResult dir_deriv(const Rivf& f, const ManifoldPoint& x, const TangentVector& v,
                           const DerivSchedule& schedule) {
    if (!f.in_domain(x)) throw DomainExit("dir_deriv: base point outside the domain");
    const double nv = tangent_norm(x, v);
    DerivativeResult out;
    if (nv < 1e-15) {
        out.value = Interval(0.0, 0.0);
        return out;  // zero direction: the quotient vanishes identically
    }

    const Interval fx = eval(f, x);
    auto quotient = [&](double t, double& ql, double& qu) {
        const ManifoldPoint y = exp_map(x, tangent_scale(t, v));
        if (!f.in_domain(y))
            throw DomainExit("dir_deriv: probe geodesic left the domain at t=" +
                             std::to_string(t));
        const Interval fy = eval(f, y);
        ql = (fy.lo - fx.lo) / t;
        qu = (fy.hi - fx.hi) / t;
    };

    const double t0 = schedule.t0 / nv;
    double ql_prev, qu_prev;
    quotient(t0, ql_prev, qu_prev);
    double rl_prev = 0, ru_prev = 0;
    bool have_prev_extrap = false;

    for (int k = 1; k <= schedule.max_steps; ++k) {
        double ql, qu;
        quotient(t0 * std::pow(0.5, k), ql, qu);
        const double rl = 2.0 * ql - ql_prev;  // first-order Richardson
        const double ru = 2.0 * qu - qu_prev;
        if (have_prev_extrap) {
            const double diff = std::max(std::abs(rl - rl_prev), std::abs(ru - ru_prev));
            if (diff <= schedule.deriv_tol) {
                out.component_lower = rl;
                out.component_upper = ru;
                out.value = Interval::from_unordered(rl, ru);
                out.convergence_residual =
                    std::max(std::abs(ql - rl), std::abs(qu - ru));
                out.steps_used = k + 1;
                return out;
            }
        }
        rl_prev = rl;
        ru_prev = ru;
        have_prev_extrap = true;
        ql_prev = ql;
        qu_prev = qu;
    }
    throw NonConvergence("dir_deriv: extrapolants did not settle within deriv_tol for " +
                         f.key);
}

// --- continuity probes ---------------------------------------------------------

namespace {

// Shared radius sweep; `delta` maps a probe tangent to a deviation magnitude.
CheckReport continuity_sweep(const ManifoldPoint& x, const ContinuityParams& params,
                             const StreamKey& key,
                             const std::function<double(const TangentVector&)>& delta,
                             bool& domain_exited) {
    CheckReport rep;
    rep.tolerance = params.cont_tol;
    domain_exited = false;

    double sup_last = 0.0;
    TangentVector worst = zero_tangent(x);
    for (std::size_t ri = 0; ri < params.radii.size(); ++ri) {
        const double r = params.radii[ri];
        double sup = 0.0;
        for (int i = 0; i < params.samples_per_radius; ++i) {
            CounterRng rng = key.at(ri * static_cast<std::size_t>(params.samples_per_radius) + i);
            const TangentVector v = sample_tangent(x, rng, r);
            double d;
            try {
                d = delta(v);
            } catch (const DomainExit&) {
                domain_exited = true;
                continue;
            }
            if (d > sup) {
                sup = d;
                if (ri + 1 == params.radii.size()) worst = v;
            }
        }
        rep.stats["sup_at_r" + std::to_string(ri)] = sup;
        rep.samples += params.samples_per_radius;
        sup_last = sup;
    }

    rep.max_residual = sup_last;
    if (sup_last > params.cont_tol) {
        Witness w;
        w.what = "deviation did not decay below tolerance at the smallest radius";
        w.residual = sup_last;
        w.sample_index = static_cast<long>(params.radii.size()) - 1;
        copy_coords(w.data, worst.coords);
        rep.fail_with(std::move(w));
    } else {
        rep.verdict = domain_exited ? Verdict::Inconclusive : Verdict::Pass;
        if (domain_exited) rep.notes.push_back("some probes left the domain; sweep incomplete");
    }
    return rep;
}

}  // namespace

CheckReport gh_continuity_probe(const Rivf& f, const ManifoldPoint& x,
                                const ContinuityParams& params, const StreamKey& key) {
    const Interval fx = eval(f, x);
    bool exited = false;
    CheckReport rep = continuity_sweep(
        x, params, key,
        [&](const TangentVector& v) {
            return norm(gh_diff(eval(f, exp_map(x, v)), fx));
        },
        exited);
    rep.name = "rivf/gh_continuity";
    rep.anchor = "f(exp_x(v)) -gH f(x) -> 0 as |v|_x -> 0";
    return rep;
}

CheckReport scalar_continuity_probe(const std::function<double(const ManifoldPoint&)>& g,
                                    const ManifoldPoint& x, const ContinuityParams& params,
                                    const StreamKey& key) {
    const double gx = g(x);
    bool exited = false;
    CheckReport rep = continuity_sweep(
        x, params, key,
        [&](const TangentVector& v) { return std::abs(g(exp_map(x, v)) - gx); }, exited);
    rep.name = "rivf/scalar_continuity";
    rep.anchor = "g(exp_x(v)) -> g(x) as |v|_x -> 0";
    return rep;
}

// --- Gateaux check ---------------------------------------------------------------

CheckReport gateaux_check(const Rivf& f, const ManifoldPoint& x, const GateauxParams& params,
                          const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivf/gateaux";
    rep.anchor = "v -> f'(x, v) is homogeneous, additive-or-nondominated, gH-continuous";
    rep.tolerance = params.gx_tol;

    auto deriv_at = [&](const TangentVector& u) {
        return dir_deriv(f, x, u, params.schedule).value;
    };

    long additive_equal = 0, additive_incomparable = 0, negative_lambda = 0;
    for (int i = 0; i < params.samples; ++i) {
        CounterRng rng = key.at(i);
        const double rv = params.direction_radius * (0.2 + rng.uniform01());
        const double rw = params.direction_radius * (0.2 + rng.uniform01());
        const TangentVector v = sample_tangent(x, rng, rv);
        const TangentVector w = sample_tangent(x, rng, rw);
        const double lam = rng.uniform(-2.0, 2.0);
        if (lam < 0) ++negative_lambda;

        const Interval fv = deriv_at(v);
        const Interval fw = deriv_at(w);

        // homogeneity, including endpoint-swapping negative factors
        const Interval flv = deriv_at(tangent_scale(lam, v));
        const double hres = hausdorff(flv, scale(lam, fv));
        rep.observe_residual(hres);
        if (hres > params.gx_tol) {
            Witness wit;
            wit.what = "homogeneity violated: f'(x, lam*v) != lam*f'(x, v)";
            wit.sample_index = i;
            wit.residual = hres;
            wit.data = {lam};
            copy_coords(wit.data, v.coords);
            rep.fail_with(std::move(wit));
            continue;
        }

        // additivity up to tolerance, or mutual nondominance
        const Interval sum = add(fv, fw);
        const Interval fvw = deriv_at(tangent_add(v, w));
        const double ares = hausdorff(sum, fvw);
        if (ares <= params.gx_tol) {
            ++additive_equal;
        } else if (robustly_incomparable(sum, fvw, params.gx_tol)) {
            ++additive_incomparable;
        } else {
            Witness wit;
            wit.what = "additivity clause violated: F(v)+F(w) dominates or is dominated by F(v+w)";
            wit.sample_index = i;
            wit.residual = ares;
            copy_coords(wit.data, v.coords);
            copy_coords(wit.data, w.coords);
            rep.fail_with(std::move(wit));
        }
    }
    rep.samples = params.samples;
    rep.stats["additivity_equal"] = static_cast<double>(additive_equal);
    rep.stats["additivity_incomparable"] = static_cast<double>(additive_incomparable);
    rep.stats["lambda_negative"] = static_cast<double>(negative_lambda);

    if (rep.verdict == Verdict::Fail) return rep;

    // gH-continuity of the derivative map at a few anchor directions.
    for (int j = 0; j < params.continuity_anchors; ++j) {
        CounterRng rng = key.sub("anchors").at(j);
        const TangentVector v = sample_tangent(x, rng, params.direction_radius);
        const Interval fv = deriv_at(v);
        bool exited = false;
        CheckReport sweep = continuity_sweep(
            x, params.continuity, key.sub("cont" + std::to_string(j)),
            [&](const TangentVector& h) {
                return norm(gh_diff(deriv_at(tangent_add(v, h)), fv));
            },
            exited);
        rep.stats["deriv_map_sup_anchor" + std::to_string(j)] = sweep.max_residual;
        if (sweep.verdict == Verdict::Fail) {
            Witness wit;
            wit.what = "derivative map not gH-continuous at anchor direction";
            wit.sample_index = j;
            wit.residual = sweep.max_residual;
            copy_coords(wit.data, v.coords);
            rep.fail_with(std::move(wit));
            return rep;
        }
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

// --- convexity checks --------------------------------------------------------------

CheckReport convexity_check(const Rivf& f, const ConvexityParams& params, const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivf/convexity";
    rep.anchor = "f(geodesic(x,y,t)) <= (1-t) f(x) + t f(y)";
    rep.tolerance = params.tol;

    for (int i = 0; i < params.pairs; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint x = f.sample(rng);
        const ManifoldPoint y = f.sample(rng);
        const Interval fx = eval(f, x);
        const Interval fy = eval(f, y);
        for (double t : params.t_grid) {
            const Interval lhs = eval(f, geodesic(x, y, t));
            const Interval rhs = add(scale(1.0 - t, fx), scale(t, fy));
            const double res =
                std::max(lhs.lo - rhs.lo, lhs.hi - rhs.hi);  // positive = violation
            rep.observe_residual(std::max(res, 0.0));
            const bool interval_ok = preceq_tol(lhs, rhs, params.tol);
            // componentwise equivalence of the interval inequality
            const bool component_ok =
                lhs.lo <= rhs.lo + params.tol && lhs.hi <= rhs.hi + params.tol;
            if (interval_ok != component_ok) {
                Witness w;
                w.what = "componentwise equivalence broke (internal inconsistency)";
                w.sample_index = i;
                rep.fail_with(std::move(w));
            }
            if (!interval_ok) {
                Witness w;
                w.what = "convexity inequality violated";
                w.sample_index = i;
                w.residual = res;
                w.data = {t};
                copy_coords(w.data, x.coords);
                copy_coords(w.data, y.coords);
                rep.fail_with(std::move(w));
            }
        }
        // composition with geodesics stays convex as a function on [0,1]
        const double t1 = rng.uniform01(), t2 = rng.uniform01(), s = rng.uniform01();
        auto along = [&](double t) { return eval(f, geodesic(x, y, t)); };
        const Interval lhs = along((1.0 - s) * t1 + s * t2);
        const Interval rhs = add(scale(1.0 - s, along(t1)), scale(s, along(t2)));
        if (!preceq_tol(lhs, rhs, params.tol)) {
            Witness w;
            w.what = "composition with the geodesic is not convex on [0,1]";
            w.sample_index = i;
            w.residual = std::max(lhs.lo - rhs.lo, lhs.hi - rhs.hi);
            w.data = {t1, t2, s};
            rep.fail_with(std::move(w));
        }
    }
    rep.samples = params.pairs;
    if (rep.verdict != Verdict::Fail) rep.verdict = Verdict::Pass;
    return rep;
}

CheckReport sublevel_convexity_check(const Rivf& f, const Interval& level,
                                     const ConvexityParams& params, const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivf/sublevel_convexity";
    rep.anchor = "{x : f(x) <= A} is closed under geodesics";
    rep.tolerance = params.tol;

    long found = 0;
    const long max_attempts = 60L * params.pairs;
    long draw = 0;
    while (found < params.pairs && draw < max_attempts) {
        CounterRng rng = key.at(draw++);
        const ManifoldPoint x = f.sample(rng);
        const ManifoldPoint y = f.sample(rng);
        if (!preceq_tol(eval(f, x), level, 0.0) || !preceq_tol(eval(f, y), level, 0.0))
            continue;
        ++found;
        for (double t : params.t_grid) {
            const Interval ft = eval(f, geodesic(x, y, t));
            if (!preceq_tol(ft, level, params.tol)) {
                Witness w;
                w.what = "geodesic left the sublevel set";
                w.sample_index = draw - 1;
                w.residual = std::max(ft.lo - level.lo, ft.hi - level.hi);
                w.data = {t};
                copy_coords(w.data, x.coords);
                copy_coords(w.data, y.coords);
                rep.fail_with(std::move(w));
            }
        }
    }
    rep.samples = found;
    if (rep.verdict != Verdict::Fail) {
        rep.verdict = Verdict::Pass;
        if (found == 0) rep.notes.push_back("vacuous: no sampled points inside the sublevel set");
    }
    return rep;
}

CheckReport diffquot_monotone_check(const Rivf& f, const ManifoldPoint& x,
                                    const TangentVector& v, const std::vector<double>& t_grid,
                                    double tol, const StreamKey& key) {
    (void)key;
    CheckReport rep;
    rep.name = "rivf/diffquot_monotone";
    rep.anchor = "phi(t) = (1/t)(f(exp_x(tv)) -gH f(x)) is nondecreasing and bounded below";
    rep.tolerance = tol;

    if (!f.claimed_geodesically_convex) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: function is not flagged geodesically convex");
        return rep;
    }

    const Interval fx = eval(f, x);
    std::vector<double> grid = t_grid;
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    std::vector<Interval> phi;
    phi.reserve(grid.size());
    for (double t : grid) {
        if (!(t > 0)) throw std::invalid_argument("diffquot grid must be positive");
        phi.push_back(scale(1.0 / t, gh_diff(eval(f, exp_map(x, tangent_scale(t, v))), fx)));
    }
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        // grid[k] > grid[k+1]; smaller t must come out <= larger t
        if (!preceq_tol(phi[k + 1], phi[k], tol)) {
            Witness w;
            w.what = "difference quotient decreased as t grew";
            w.sample_index = static_cast<long>(k);
            w.residual = std::max(phi[k + 1].lo - phi[k].lo, phi[k + 1].hi - phi[k].hi);
            w.data = {grid[k], grid[k + 1]};
            rep.fail_with(std::move(w));
        }
    }
    const Interval& bottom = phi.back();  // smallest t
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (phi[k].lo < bottom.lo - tol || phi[k].hi < bottom.hi - tol) {
            Witness w;
            w.what = "quotient dipped below its smallest-t value";
            w.sample_index = static_cast<long>(k);
            rep.fail_with(std::move(w));
        }
    }
    rep.samples = static_cast<long>(grid.size());
    if (rep.verdict != Verdict::Fail) rep.verdict = Verdict::Pass;
    return rep;
}

CheckReport thm33_inequality_check(const Rivf& f, const Thm33Params& params,
                                   const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivf/convex_gradient_inequality";
    rep.anchor = "f'(x, log_x y) <= f(y) -gH f(x), and f(y) does not dominate f'(x,log_x y)+f(x)";
    rep.tolerance = params.ineq_tol;

    for (int i = 0; i < params.pairs; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint x = f.sample(rng);
        const ManifoldPoint y = f.sample(rng);
        const TangentVector v = log_map(x, y);
        const Interval d = (params.use_closed_form && f.deriv)
                               ? f.deriv(x, v)
                               : dir_deriv(f, x, v).value;
        const Interval fx = eval(f, x);
        const Interval fy = eval(f, y);
        const Interval rhs = gh_diff(fy, fx);
        const double res = std::max(d.lo - rhs.lo, d.hi - rhs.hi);
        rep.observe_residual(std::max(res, 0.0));
        if (!preceq_tol(d, rhs, params.ineq_tol)) {
            Witness w;
            w.what = "derivative bound violated";
            w.sample_index = i;
            w.residual = res;
            copy_coords(w.data, x.coords);
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
        }
        if (prec_tol(fy, add(d, fx), params.ineq_tol)) {
            Witness w;
            w.what = "f(y) strictly dominates f'(x, log_x y) + f(x)";
            w.sample_index = i;
            copy_coords(w.data, x.coords);
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
        }
    }
    rep.samples = params.pairs;
    if (rep.verdict != Verdict::Fail) rep.verdict = Verdict::Pass;
    return rep;
}

}  // namespace ivo
