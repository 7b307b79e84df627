#include "ivo/rivi.hpp"

#include <cmath>
#include <stdexcept>

namespace ivo {

namespace {

void copy_coords(std::vector<double>& out, const Eigen::VectorXd& c) {
    out.insert(out.end(), c.data(), c.data() + c.size());
}

bool dominated_by_zero(const Interval& d, double tol) {
    // d < [0,0] robustly: both endpoints at or below zero, at least one
    // strictly below tolerance. Covers both [-b,-a] and the [a,0] form.
    return d.lo <= tol && d.hi <= tol && (d.lo < -tol || d.hi < -tol);
}

}  // namespace

Interval LinearIntervalMap::apply(const TangentVector& v) const {
    if (v.base.model != base.model ||
        (v.base.coords - base.coords).lpNorm<Eigen::Infinity>() > 1e-9)
        throw std::invalid_argument("linear interval map: tangent based at a different point");
    return Interval::from_unordered(inner(base, p, v), inner(base, q, v));
}

IntervalField gateaux_field(const Rivf& f) {
    if (!f.grad_pair)
        throw std::invalid_argument("gateaux_field: function carries no gradient pair");
    IntervalField T;
    T.model = f.model;
    T.key = "gateaux_of(" + f.key + ")";
    T.domain = f.domain;
    T.sample_domain = f.sample_domain;
    const auto grads = f.grad_pair;
    T.at = [grads](const ManifoldPoint& x) {
        auto pq = grads(x);
        return LinearIntervalMap{x, std::move(pq.first), std::move(pq.second)};
    };
    return T;
}

Interval apply(const IntervalField& T, const ManifoldPoint& x, const TangentVector& v) {
    return T.at(x).apply(v);
}

Certificate stampacchia_residual(const IntervalField& T, const ManifoldPoint& x0,
                                 const ViParams& params, const StreamKey& key) {
    Certificate cert;
    cert.kind = "stampacchia";
    CheckReport& rep = cert.report;
    rep.name = "rivi/stampacchia";
    rep.anchor = "T(x0)(log_x0 y) not dominated by 0 for all sampled y";
    rep.tolerance = params.eq_tol;
    rep.samples = params.samples;

    const LinearIntervalMap tx0 = T.at(x0);
    for (int i = 0; i < params.samples; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint y = T.sample(rng);
        const Interval d = tx0.apply(log_map(x0, y));
        if (dominated_by_zero(d, params.eq_tol)) {
            Witness w;
            w.what = "operator value dominated by zero";
            w.sample_index = i;
            w.residual = -d.hi <= params.eq_tol ? -d.lo : -d.hi;
            w.data = {d.lo, d.hi};
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
            if (std::abs(d.hi) <= params.eq_tol)
                rep.notes.push_back("failure has the [a,0] form: the obstruction that blocks "
                                    "efficiency bridges");
            return cert;
        }
    }
    rep.verdict = Verdict::Pass;
    return cert;
}

Certificate minty_residual(const IntervalField& T, const ManifoldPoint& x0,
                           const ViParams& params, const StreamKey& key) {
    Certificate cert;
    cert.kind = "minty";
    CheckReport& rep = cert.report;
    rep.name = "rivi/minty";
    rep.anchor = "T(y)(-log_y x0) not dominated by 0 for all sampled y";
    rep.tolerance = params.eq_tol;
    rep.samples = params.samples;

    for (int i = 0; i < params.samples; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint y = T.sample(rng);
        // The geodesic from x0 to y, with its velocity read at y.
        const TangentVector v_y = tangent_scale(-1.0, log_map(y, x0));
        const Interval d = T.at(y).apply(v_y);
        if (dominated_by_zero(d, params.eq_tol)) {
            Witness w;
            w.what = "operator value at the sampled point dominated by zero";
            w.sample_index = i;
            w.residual = -d.hi;
            w.data = {d.lo, d.hi};
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
            return cert;
        }
    }
    rep.verdict = Verdict::Pass;
    return cert;
}

CheckReport pseudomonotone_check(const IntervalField& T, int n_pairs, double tol,
                                 const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivi/pseudomonotone";
    rep.anchor = "T(x)(log_x y) not dominated by 0 implies T(y)(velocity at y) not dominated";
    rep.tolerance = tol;
    rep.samples = n_pairs;

    long antecedent_held = 0;
    for (int i = 0; i < n_pairs; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint x = T.sample(rng);
        const ManifoldPoint y = T.sample(rng);
        if ((x.coords - y.coords).lpNorm<Eigen::Infinity>() < 1e-12) continue;
        const Interval at_x = T.at(x).apply(log_map(x, y));
        if (dominated_by_zero(at_x, tol)) continue;  // antecedent false
        ++antecedent_held;
        const TangentVector v_y = tangent_scale(-1.0, log_map(y, x));
        const Interval at_y = T.at(y).apply(v_y);
        if (dominated_by_zero(at_y, tol)) {
            Witness w;
            w.what = "antecedent held at x but the value at y is dominated by zero";
            w.sample_index = i;
            w.residual = -at_y.hi;
            w.data = {at_x.lo, at_x.hi, at_y.lo, at_y.hi};
            copy_coords(w.data, x.coords);
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
        }
    }
    rep.stats["antecedent_held"] = static_cast<double>(antecedent_held);
    if (rep.verdict != Verdict::Fail) rep.verdict = Verdict::Pass;
    return rep;
}

CheckReport pseudoconvex_check(const Rivf& f, const PseudoconvexParams& params,
                               const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivi/pseudoconvex";
    rep.anchor = "f'(x, log_x y) not dominated by 0 implies f(y) does not dominate f(x)";
    rep.tolerance = params.tol;
    rep.samples = params.pairs;

    if (!params.gateaux_verified) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: derivative map not verified linear on this domain");
        return rep;
    }

    long antecedent_held = 0;
    for (int i = 0; i < params.pairs; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint x = f.sample(rng);
        const ManifoldPoint y = f.sample(rng);
        const TangentVector v = log_map(x, y);
        const Interval d = (params.use_closed_form && f.deriv)
                               ? f.deriv(x, v)
                               : dir_deriv(f, x, v, params.schedule).value;
        if (dominated_by_zero(d, params.tol)) continue;
        ++antecedent_held;
        if (prec_tol(eval(f, y), eval(f, x), params.tol)) {
            Witness w;
            w.what = "derivative not dominated by zero, yet f(y) dominates f(x)";
            w.sample_index = i;
            w.residual = hausdorff(eval(f, y), eval(f, x));
            w.data = {d.lo, d.hi};
            copy_coords(w.data, x.coords);
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
        }
    }
    rep.stats["antecedent_held"] = static_cast<double>(antecedent_held);
    if (rep.verdict != Verdict::Fail) rep.verdict = Verdict::Pass;
    return rep;
}

CheckReport bridge_stampacchia_to_minty(const IntervalField& T, const BridgeParams& params,
                                        const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivi/bridge_stampacchia_to_minty";
    rep.anchor = "pseudomonotone T: strong-form solutions solve the dual form on the same "
                 "samples";
    rep.tolerance = params.eq_tol;

    if (!params.pseudomonotone_verified) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: operator not verified pseudomonotone");
        return rep;
    }

    ViParams vi;
    vi.samples = params.samples;
    vi.eq_tol = params.eq_tol;
    long solutions = 0;
    for (int t = 0; t < params.trials; ++t) {
        CounterRng rng = key.at(t);
        const ManifoldPoint x0 = T.sample(rng);
        const StreamKey shared = key.sub("residuals" + std::to_string(t));
        if (stampacchia_residual(T, x0, vi, shared).report.verdict != Verdict::Pass)
            continue;  // not a strong-form solution; the implication says nothing
        ++solutions;
        const Certificate m = minty_residual(T, x0, vi, shared);
        if (m.report.verdict != Verdict::Pass) {
            Witness w;
            w.what = "strong-form solution failed the dual form";
            w.sample_index = t;
            copy_coords(w.data, x0.coords);
            if (!m.report.witnesses.empty()) w.residual = m.report.witnesses.front().residual;
            rep.fail_with(std::move(w));
        }
    }
    rep.samples = params.trials;
    rep.stats["strong_form_solutions"] = static_cast<double>(solutions);
    if (rep.verdict != Verdict::Fail) rep.verdict = Verdict::Pass;
    return rep;
}

CheckReport bridge_efficiency_to_stampacchia(const RioProblem& p, const ManifoldPoint& x0,
                                             const BridgeParams& params, const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivi/bridge_efficiency_to_stampacchia";
    rep.anchor = "an efficient x0 whose derivative field avoids the [a,0] form solves the "
                 "strong-form inequality";
    rep.tolerance = params.eq_tol;
    rep.samples = params.samples;

    const IntervalField T = gateaux_field(p.f);
    const LinearIntervalMap tx0 = T.at(x0);
    const Interval fx0 = eval(p.f, x0);

    // One shared sample set drives the hypothesis, the gate and the claim.
    bool hypothesis_failed = false, gate_blocked = false;
    for (int i = 0; i < params.samples; ++i) {
        CounterRng rng = key.at(i);
        const ManifoldPoint y = p.f.sample(rng);
        if (compare(eval(p.f, y), fx0) == OrderRelation::Less) {
            hypothesis_failed = true;
            break;
        }
        const Interval d = tx0.apply(log_map(x0, y));
        if (std::abs(d.hi) <= params.eq_tol && d.lo < -params.eq_tol) {
            gate_blocked = true;
            continue;
        }
        if (dominated_by_zero(d, params.eq_tol)) {
            Witness w;
            w.what = "efficient point failed the strong-form inequality (theorem violation)";
            w.sample_index = i;
            w.data = {d.lo, d.hi};
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
            return rep;
        }
    }
    if (hypothesis_failed) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: x0 is not sampled-efficient; hypothesis unmet");
    } else if (gate_blocked) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: derivative takes the [a,0] form toward some sample; "
                            "the bridge does not apply");
    } else {
        rep.verdict = Verdict::Pass;
    }
    return rep;
}

CheckReport bridge_stampacchia_to_efficiency(const RioProblem& p, const ManifoldPoint& x0,
                                             const BridgeParams& params, const StreamKey& key) {
    CheckReport rep;
    rep.name = "rivi/bridge_stampacchia_to_efficiency";
    rep.anchor = "pseudoconvex f: strong-form solutions of the derivative field are efficient";
    rep.tolerance = params.eq_tol;
    rep.samples = params.samples;

    if (!params.pseudoconvex_verified) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: function not verified pseudoconvex");
        return rep;
    }

    const IntervalField T = gateaux_field(p.f);
    ViParams vi;
    vi.samples = params.samples;
    vi.eq_tol = params.eq_tol;
    const StreamKey shared = key.sub("residuals");
    if (stampacchia_residual(T, x0, vi, shared).report.verdict != Verdict::Pass) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("gate: x0 does not solve the strong-form inequality");
        return rep;
    }

    const Interval fx0 = eval(p.f, x0);
    for (int i = 0; i < params.samples; ++i) {
        CounterRng rng = shared.at(i);
        const ManifoldPoint y = p.f.sample(rng);
        if (compare(eval(p.f, y), fx0) == OrderRelation::Less) {
            Witness w;
            w.what = "strong-form solution dominated in sampling (theorem violation)";
            w.sample_index = i;
            copy_coords(w.data, y.coords);
            rep.fail_with(std::move(w));
            return rep;
        }
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

}  // namespace ivo
