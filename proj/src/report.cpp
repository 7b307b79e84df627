#include "ivo/report.hpp"

namespace ivo {

using nlohmann::ordered_json;

ordered_json interval_to_json(const Interval& a) { return ordered_json::array({a.lo, a.hi}); }

ordered_json point_to_json(const ManifoldPoint& x) {
    ordered_json j;
    switch (x.model.kind) {
        case ModelKind::Euclidean: j["model"] = "euclidean"; break;
        case ModelKind::PositiveReals: j["model"] = "posreals"; break;
        case ModelKind::Spd: j["model"] = "spd"; break;
        default: j["model"] = "hyperbolic"; break;
    }
    j["params"] = ordered_json{{"n", x.model.n}};
    // SPD coordinates are already stored row-major.
    j["coords"] = std::vector<double>(x.coords.data(), x.coords.data() + x.coords.size());
    return j;
}

ordered_json config_to_json(const RunConfig& c) {
    ordered_json j;
    j["schema"] = c.schema;
    j["seed"] = c.seed;
    j["spd_tol"] = c.spd_tol;
    j["sym_tol"] = c.sym_tol;
    j["hyp_tol"] = c.hyp_tol;
    j["deriv_tol"] = c.deriv_tol;
    j["cont_tol"] = c.cont_tol;
    j["gx_tol"] = c.gx_tol;
    j["ineq_tol"] = c.ineq_tol;
    j["eq_tol"] = c.eq_tol;
    j["x_tol"] = c.x_tol;
    j["h_tol"] = c.h_tol;
    j["law_samples"] = c.law_samples;
    j["manifold_pairs"] = c.manifold_pairs;
    j["deriv_pairs"] = c.deriv_pairs;
    j["convexity_pairs"] = c.convexity_pairs;
    j["continuity_samples"] = c.continuity_samples;
    j["gateaux_samples"] = c.gateaux_samples;
    j["efficiency_samples"] = c.efficiency_samples;
    j["certificate_samples"] = c.certificate_samples;
    j["vi_samples"] = c.vi_samples;
    j["bridge_trials"] = c.bridge_trials;
    j["diffquot_grid"] = c.diffquot_grid;
    j["continuity_radii"] = c.continuity_radii;
    j["problem"] = c.problem;
    j["lambda1"] = c.lambda1;
    j["lambda2"] = c.lambda2;
    if (c.x_init) j["x_init"] = *c.x_init;
    j["multistart"] = c.multistart;
    j["max_iters"] = c.max_iters;
    j["grad_tol"] = c.grad_tol;
    if (!c.out.empty()) j["out"] = c.out;
    if (!c.fault.empty()) j["fault"] = c.fault;
    return j;
}

namespace {

ordered_json witness_to_json(const Witness& w) {
    ordered_json j;
    j["what"] = w.what;
    j["sample"] = w.sample_index;
    j["residual"] = w.residual;
    j["data"] = w.data;
    return j;
}

ordered_json report_body_to_json(const CheckReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["anchor"] = r.anchor;
    j["verdict"] = to_string(r.verdict);
    j["samples"] = r.samples;
    j["tolerance"] = r.tolerance;
    j["max_residual"] = r.max_residual;
    j["witnesses"] = ordered_json::array();
    for (const auto& w : r.witnesses) j["witnesses"].push_back(witness_to_json(w));
    j["stats"] = ordered_json::object();
    for (const auto& [k, v] : r.stats) j["stats"][k] = v;
    j["notes"] = r.notes;
    return j;
}

ordered_json check_to_json(const CheckOutcome& o) {
    ordered_json j = report_body_to_json(o.report);
    j["module"] = o.module_name;
    j["expected"] = to_string(o.expected);
    j["ok"] = o.ok;
    j["wall_ms"] = o.wall_ms;
    return j;
}

}  // namespace

ordered_json report_to_json(const SuiteReport& rep) {
    ordered_json j;
    j["schema"] = "ivo-report/1";
    j["config"] = config_to_json(rep.config);
    j["checks"] = ordered_json::array();
    long pass = 0, fail = 0, inconclusive = 0;
    for (const auto& o : rep.outcomes) {
        j["checks"].push_back(check_to_json(o));
        switch (o.report.verdict) {
            case Verdict::Pass: ++pass; break;
            case Verdict::Fail: ++fail; break;
            default: ++inconclusive; break;
        }
    }
    j["summary"] = ordered_json{{"total", rep.outcomes.size()},
                                {"pass", pass},
                                {"fail", fail},
                                {"inconclusive", inconclusive},
                                {"mismatches", rep.mismatches()}};
    j["wall_ms_total"] = rep.wall_ms_total;
    return j;
}

ordered_json solve_result_to_json(const SolveResult& res) {
    ordered_json j;
    j["point"] = point_to_json(res.point);
    j["h_value"] = res.h_value;
    j["f_interval"] = interval_to_json(res.f_interval);
    j["grad_norm"] = res.grad_norm;
    j["iters"] = res.iters;
    j["status"] = to_string(res.status);
    ordered_json trace = ordered_json::array();
    const std::size_t stride = res.trace.size() > 20 ? res.trace.size() / 20 + 1 : 1;
    for (std::size_t i = 0; i < res.trace.size(); i += stride) {
        const auto& t = res.trace[i];
        trace.push_back(ordered_json{{"iter", t.iter},
                                     {"value", t.value},
                                     {"grad_norm", t.grad_norm},
                                     {"step", t.step}});
    }
    j["trace"] = trace;
    return j;
}

ordered_json certificate_to_json(const Certificate& cert) {
    ordered_json j;
    j["kind"] = cert.kind;
    j["report"] = report_body_to_json(cert.report);
    return j;
}

}  // namespace ivo
