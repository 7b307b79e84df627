#include "ivo/riop.hpp"

#include <cmath>
#include <stdexcept>

namespace ivo {

namespace {

void copy_coords(std::vector<double>& out, const Eigen::VectorXd& c) {
    out.insert(out.end(), c.data(), c.data() + c.size());
}

// Metric gradient from central differences along an orthonormal frame.
TangentVector fd_gradient(const std::function<double(const ManifoldPoint&)>& h,
                          const Rivf& geometry, const ManifoldPoint& x, double fd_step,
                          double& grad_norm) {
    const double delta = fd_step * (1.0 + x.coords.norm());
    TangentVector g = zero_tangent(x);
    double sq = 0.0;
    for (const TangentVector& e : orthonormal_basis(x)) {
        const ManifoldPoint fwd = exp_map(x, tangent_scale(delta, e));
        const ManifoldPoint bwd = exp_map(x, tangent_scale(-delta, e));
        if (!geometry.in_domain(fwd) || !geometry.in_domain(bwd))
            throw DomainExit("gradient probe left the domain");
        const double gi = (h(fwd) - h(bwd)) / (2.0 * delta);
        g = tangent_add(g, tangent_scale(gi, e));
        sq += gi * gi;
    }
    grad_norm = std::sqrt(sq);
    return g;
}

}  // namespace

void SolverSettings::validate() const {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw std::invalid_argument("solver: scalarization weights must be positive");
    if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
    if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0))
        throw std::invalid_argument("solver: armijo shrink factor must lie in (0,1)");
    if (!(alpha0 > 0.0) || !(fd_step > 0.0) || !(grad_tol > 0.0))
        throw std::invalid_argument("solver: steps and tolerances must be positive");
}

SolveResult minimize_scalar(const std::function<double(const ManifoldPoint&)>& h,
                            const Rivf& geometry, const SolverSettings& settings,
                            const ManifoldPoint& x_init) {
    settings.validate();
    if (!geometry.in_domain(x_init))
        throw DomainExit("solver: initial point outside the domain");

    SolveResult out;
    ManifoldPoint x = x_init;
    double hx = h(x);

    for (int it = 0; it < settings.max_iters; ++it) {
        double gnorm = 0.0;
        const TangentVector g = fd_gradient(h, geometry, x, settings.fd_step, gnorm);
        if (gnorm <= settings.grad_tol) {
            out.point = x;
            out.h_value = hx;
            out.grad_norm = gnorm;
            out.iters = it;
            out.status = SolveStatus::Converged;
            return out;
        }

        // Armijo backtracking on h(exp_x(-alpha g)); domain exits shrink alpha.
        double alpha = settings.alpha0;
        bool accepted = false;
        for (int s = 0; s < settings.max_shrinks; ++s) {
            const ManifoldPoint cand = exp_map(x, tangent_scale(-alpha, g));
            if (geometry.in_domain(cand)) {
                const double hc = h(cand);
                if (hc <= hx - settings.armijo_c * alpha * gnorm * gnorm) {
                    x = cand;
                    hx = hc;
                    accepted = true;
                    break;
                }
            }
            alpha *= settings.armijo_shrink;
        }
        out.trace.push_back({it, hx, gnorm, accepted ? alpha : 0.0});
        if (!accepted) {
            out.point = x;
            out.h_value = hx;
            out.grad_norm = gnorm;
            out.iters = it + 1;
            out.status = SolveStatus::LineSearchFailed;
            return out;
        }
    }

    double gnorm = 0.0;
    fd_gradient(h, geometry, x, settings.fd_step, gnorm);
    out.point = x;
    out.h_value = hx;
    out.grad_norm = gnorm;
    out.iters = settings.max_iters;
    out.status = SolveStatus::MaxItersExceeded;
    return out;
}

SolveResult solve_scalarized(const RioProblem& p, const SolverSettings& settings,
                             const ManifoldPoint& x_init) {
    settings.validate();
    const double l1 = settings.lambda1, l2 = settings.lambda2;
    auto h = [&](const ManifoldPoint& x) { return l1 * p.f.lower(x) + l2 * p.f.upper(x); };
    SolveResult res = minimize_scalar(h, p.f, settings, x_init);
    res.f_interval = eval(p.f, res.point);
    return res;
}

// --- certificates ------------------------------------------------------------

Certificate is_efficient_sampled(const RioProblem& p, const ManifoldPoint& x0,
                                 const CertifyParams& params, const StreamKey& key) {
    Certificate cert;
    cert.kind = "sampled_efficiency";
    CheckReport& rep = cert.report;
    rep.name = "riop/sampled_efficiency";
    rep.anchor = "no sampled feasible point strictly dominates f(x0)";
    rep.samples = params.samples;

    const Interval fx0 = eval(p.f, x0);
    for (int i = 0; i < params.samples; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint y = p.f.sample(rng);
        if (compare(eval(p.f, y), fx0) == OrderRelation::Less) {
            Witness w;
            w.what = "sampled point dominates the candidate";
            w.sample_index = i;
            w.residual = hausdorff(eval(p.f, y), fx0);
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
            return cert;
        }
    }
    rep.verdict = Verdict::Pass;
    return cert;
}

namespace {

// Derivative of f at x0 toward y, through the finite-difference pipeline or
// the catalog closed form.
Interval derivative_toward(const RioProblem& p, const ManifoldPoint& x0, const ManifoldPoint& y,
                           const CertifyParams& params) {
    const TangentVector v = log_map(x0, y);
    if (params.use_closed_form && p.f.deriv) return p.f.deriv(x0, v);
    return dir_deriv(p.f, x0, v, params.schedule).value;
}

}  // namespace

Certificate certify_directional_necessary(const RioProblem& p, const ManifoldPoint& x0,
                                          const CertifyParams& params, const StreamKey& key) {
    Certificate cert;
    cert.kind = "directional_necessary";
    CheckReport& rep = cert.report;
    rep.name = "riop/directional_necessary";
    rep.anchor = "f'(x0, log_x0 y) is never dominated by 0, or equals [a, 0] with a < 0";
    rep.tolerance = params.eq_tol;
    rep.samples = params.samples;

    long not_dominated = 0, upper_zero = 0;
    for (int i = 0; i < params.samples; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint y = p.f.sample(rng);
        const Interval d = derivative_toward(p, x0, y, params);
        if (d.hi > params.eq_tol) {
            ++not_dominated;
        } else if (std::abs(d.hi) <= params.eq_tol && d.lo < -params.eq_tol) {
            ++upper_zero;  // the [a, 0] form: efficiency cannot be refuted here
        } else if (std::abs(d.hi) <= params.eq_tol && std::abs(d.lo) <= params.eq_tol) {
            ++not_dominated;  // the zero interval does not dominate itself
        } else {
            Witness w;
            w.what = "derivative interval dominated by zero; x0 is not efficient";
            w.sample_index = i;
            w.residual = -d.hi;
            w.data = {d.lo, d.hi};
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
            rep.stats["branch_not_dominated"] = static_cast<double>(not_dominated);
            rep.stats["branch_upper_zero"] = static_cast<double>(upper_zero);
            return cert;
        }
    }
    rep.stats["branch_not_dominated"] = static_cast<double>(not_dominated);
    rep.stats["branch_upper_zero"] = static_cast<double>(upper_zero);
    rep.verdict = Verdict::Pass;
    if (upper_zero > 0)
        rep.notes.push_back("the [a,0] form occurred; necessary condition holds but no "
                            "efficiency conclusion follows from it");
    return cert;
}

Certificate certify_directional_sufficient(const RioProblem& p, const ManifoldPoint& x0,
                                           const CertifyParams& params, const StreamKey& key) {
    Certificate cert;
    cert.kind = "directional_sufficient";
    CheckReport& rep = cert.report;
    rep.name = "riop/directional_sufficient";
    rep.anchor = "under convexity: f'(x0, log_x0 y) not dominated by 0 for all y implies "
                 "x0 is efficient";
    rep.tolerance = params.eq_tol;
    rep.samples = params.samples;

    if (!p.convexity_verified) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: convexity not verified for this problem");
        return cert;
    }

    bool blocked = false;
    for (int i = 0; i < params.samples; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint y = p.f.sample(rng);
        const Interval d = derivative_toward(p, x0, y, params);
        if (d.hi < -params.eq_tol) {
            Witness w;
            w.what = "derivative interval dominated by zero";
            w.sample_index = i;
            w.residual = -d.hi;
            w.data = {d.lo, d.hi};
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
            return cert;
        }
        if (std::abs(d.hi) <= params.eq_tol && d.lo < -params.eq_tol) blocked = true;
    }
    if (blocked) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("the [a,0] form occurred in some direction; the sufficient "
                            "condition cannot conclude efficiency");
    } else {
        rep.verdict = Verdict::Pass;
        rep.notes.push_back("efficiency asserted: strict nondominance held in every "
                            "sampled direction under verified convexity");
    }
    return cert;
}

Certificate certify_membership(const RioProblem& p, const ManifoldPoint& x0,
                               MembershipVariant variant, const CertifyParams& params,
                               const StreamKey& key) {
    Certificate cert;
    cert.kind = variant == MembershipVariant::Necessary ? "membership_necessary"
                                                        : "membership_sufficient";
    CheckReport& rep = cert.report;
    rep.name = std::string("riop/") + cert.kind;
    rep.anchor = variant == MembershipVariant::Necessary
                     ? "0 lies in the derivative interval toward every sampled point"
                     : "0 lies in [lo, hi) of the derivative interval toward every sampled "
                       "point (half-open, literal)";
    rep.tolerance = params.eq_tol;

    if (!params.gateaux_verified) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: derivative map not verified linear at x0");
        return cert;
    }
    if (variant == MembershipVariant::Sufficient && !p.convexity_verified) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: convexity not verified for this problem");
        return cert;
    }

    bool excluded_endpoint = false;
    long n = 0;
    for (int i = params.include_base_point ? -1 : 0; i < params.samples; ++i, ++n) {
        CounterRng rng = key.at(static_cast<std::uint64_t>(i + 1));
        const ManifoldPoint y = i < 0 ? x0 : p.f.sample(rng);
        const Interval d = derivative_toward(p, x0, y, params);
        const bool lo_ok = d.lo <= params.eq_tol;
        if (variant == MembershipVariant::Necessary) {
            if (!(lo_ok && d.hi >= -params.eq_tol)) {
                Witness w;
                w.what = "0 falls outside the derivative interval";
                w.sample_index = i;
                w.residual = std::max(d.lo, -d.hi);
                w.data = {d.lo, d.hi};
                copy_coords(w.data, y.coords);
                rep.fail_with(std::move(w));
                return cert;
            }
        } else {
            if (lo_ok && d.hi > params.eq_tol) {
                // strict membership: fine
            } else if (lo_ok && std::abs(d.hi) <= params.eq_tol) {
                excluded_endpoint = true;  // blocked only by the open right end
            } else {
                Witness w;
                w.what = "0 falls outside the half-open derivative interval";
                w.sample_index = i;
                w.residual = std::max(d.lo, -d.hi);
                w.data = {d.lo, d.hi};
                copy_coords(w.data, y.coords);
                rep.fail_with(std::move(w));
                return cert;
            }
        }
    }
    rep.samples = n;
    if (variant == MembershipVariant::Sufficient && excluded_endpoint) {
        rep.verdict = Verdict::Inconclusive;
        rep.stats["excluded_endpoint_blocker"] = 1.0;
        rep.notes.push_back("blocked solely by the excluded right endpoint (derivative "
                            "interval [lo, 0] with lo <= 0)");
    } else {
        rep.verdict = Verdict::Pass;
        if (variant == MembershipVariant::Sufficient)
            rep.notes.push_back("efficiency asserted under verified convexity");
    }
    return cert;
}

Certificate check_component_minima(const RioProblem& p, const ManifoldPoint& x_init,
                                   const Prop41Params& params, const StreamKey& key) {
    Certificate cert;
    cert.kind = "component_minima";
    CheckReport& rep = cert.report;
    rep.name = "riop/component_minima";
    rep.anchor = "a simultaneous (or unique) minimizer of the component problems is an "
                 "efficient point";
    rep.tolerance = params.x_tol;

    const SolveResult lo = minimize_scalar(p.f.lower, p.f, params.solver, x_init);
    const SolveResult hi = minimize_scalar(p.f.upper, p.f, params.solver, x_init);
    rep.stats["lower_status"] = static_cast<double>(lo.status);
    rep.stats["upper_status"] = static_cast<double>(hi.status);
    rep.stats["lower_iters"] = lo.iters;
    rep.stats["upper_iters"] = hi.iters;

    // Uniqueness proxy: positive second differences along every basis
    // direction plus a global sweep finding no distant near-optimum. This is
    // a desk-scale stand-in for true uniqueness and is labeled as such.
    auto unique_minimum = [&](const SolveResult& res,
                              const std::function<double(const ManifoldPoint&)>& h) {
        const double delta = 1e-4 * (1.0 + res.point.coords.norm());
        for (const TangentVector& e : orthonormal_basis(res.point)) {
            const ManifoldPoint fwd = exp_map(res.point, tangent_scale(delta, e));
            const ManifoldPoint bwd = exp_map(res.point, tangent_scale(-delta, e));
            if (!p.f.in_domain(fwd) || !p.f.in_domain(bwd)) return false;
            const double second = (h(fwd) - 2.0 * h(res.point) + h(bwd)) / (delta * delta);
            if (!(second > 0.0)) return false;
        }
        for (int i = 0; i < params.uniqueness_sweep; ++i) {
            CounterRng rng = key.sub("sweep").at(i);
            const ManifoldPoint y = p.f.sample(rng);
            if (h(y) < res.h_value + params.h_tol && dist(y, res.point) > params.separation)
                return false;
        }
        return true;
    };

    const bool lo_conv = lo.status == SolveStatus::Converged;
    const bool hi_conv = hi.status == SolveStatus::Converged;

    ManifoldPoint candidate;
    std::string route;
    if (lo_conv && hi_conv && dist(lo.point, hi.point) <= params.x_tol) {
        candidate = hi.point;
        route = "simultaneous minimizer";
    } else if (hi_conv && unique_minimum(hi, p.f.upper)) {
        candidate = hi.point;
        route = "unique upper-component minimizer (uniqueness proxy)";
    } else if (lo_conv && unique_minimum(lo, p.f.lower)) {
        candidate = lo.point;
        route = "unique lower-component minimizer (uniqueness proxy)";
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("component argmins neither coincide nor verify unique; no "
                            "assertion made");
        if (!lo_conv)
            rep.notes.push_back(std::string("lower component solve: ") + to_string(lo.status));
        if (!hi_conv)
            rep.notes.push_back(std::string("upper component solve: ") + to_string(hi.status));
        return cert;
    }

    rep.notes.push_back("route: " + route);
    const Certificate eff =
        is_efficient_sampled(p, candidate, params.certify, key.sub("efficiency"));
    rep.samples = eff.report.samples;
    if (eff.report.verdict == Verdict::Pass) {
        rep.verdict = Verdict::Pass;
        copy_coords(rep.witnesses.emplace_back().data, candidate.coords);
        rep.witnesses.back().what = "efficient point candidate";
        rep.witnesses.back().residual = 0.0;
    } else {
        rep.verdict = Verdict::Fail;
        rep.notes.push_back("component-route candidate was dominated in sampling");
        for (const auto& w : eff.report.witnesses) rep.witnesses.push_back(w);
    }
    return cert;
}

}  // namespace ivo
