#include "ivo/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ivo {

namespace {

using nlohmann::json;

template <typename T>
void read_into(const json& j, const char* name, T& out) {
    if (!j.contains(name)) return;
    try {
        out = j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad value for '") + name + "': " + e.what());
    }
}

}  // namespace

void RunConfig::validate() const {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw ConfigError("config: scalarization weights must be positive");
    for (double tol : {spd_tol, sym_tol, hyp_tol, deriv_tol, cont_tol, gx_tol, ineq_tol,
                       eq_tol, x_tol, h_tol, grad_tol})
        if (!(tol > 0.0)) throw ConfigError("config: tolerances must be positive");
    for (int n : {law_samples, manifold_pairs, deriv_pairs, convexity_pairs,
                  continuity_samples, gateaux_samples, efficiency_samples,
                  certificate_samples, vi_samples, bridge_trials, max_iters})
        if (n < 1) throw ConfigError("config: sample counts must be >= 1");
    if (diffquot_grid.empty() || continuity_radii.empty())
        throw ConfigError("config: grids must be nonempty");
    for (double t : diffquot_grid)
        if (!(t > 0.0)) throw ConfigError("config: diffquot grid entries must be positive");
    if (!fault.empty() && fault != "gh_diff")
        throw ConfigError("config: unknown fault '" + fault + "'");
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    static const std::vector<std::string> known = {
        "schema", "seed", "spd_tol", "sym_tol", "hyp_tol", "deriv_tol", "cont_tol",
        "gx_tol", "ineq_tol", "eq_tol", "x_tol", "h_tol", "law_samples",
        "manifold_pairs", "deriv_pairs", "convexity_pairs", "continuity_samples",
        "gateaux_samples", "efficiency_samples", "certificate_samples", "vi_samples",
        "bridge_trials", "diffquot_grid", "continuity_radii", "problem", "lambda1",
        "lambda2", "x_init", "multistart", "max_iters", "grad_tol", "out", "fault"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ConfigError("config: unknown key '" + it.key() + "'");
    }

    RunConfig c;
    read_into(j, "schema", c.schema);
    if (c.schema != "ivo-config/1")
        throw ConfigError("config: unsupported schema '" + c.schema + "'");
    read_into(j, "seed", c.seed);
    read_into(j, "spd_tol", c.spd_tol);
    read_into(j, "sym_tol", c.sym_tol);
    read_into(j, "hyp_tol", c.hyp_tol);
    read_into(j, "deriv_tol", c.deriv_tol);
    read_into(j, "cont_tol", c.cont_tol);
    read_into(j, "gx_tol", c.gx_tol);
    read_into(j, "ineq_tol", c.ineq_tol);
    read_into(j, "eq_tol", c.eq_tol);
    read_into(j, "x_tol", c.x_tol);
    read_into(j, "h_tol", c.h_tol);
    read_into(j, "law_samples", c.law_samples);
    read_into(j, "manifold_pairs", c.manifold_pairs);
    read_into(j, "deriv_pairs", c.deriv_pairs);
    read_into(j, "convexity_pairs", c.convexity_pairs);
    read_into(j, "continuity_samples", c.continuity_samples);
    read_into(j, "gateaux_samples", c.gateaux_samples);
    read_into(j, "efficiency_samples", c.efficiency_samples);
    read_into(j, "certificate_samples", c.certificate_samples);
    read_into(j, "vi_samples", c.vi_samples);
    read_into(j, "bridge_trials", c.bridge_trials);
    read_into(j, "diffquot_grid", c.diffquot_grid);
    read_into(j, "continuity_radii", c.continuity_radii);
    read_into(j, "problem", c.problem);
    read_into(j, "lambda1", c.lambda1);
    read_into(j, "lambda2", c.lambda2);
    if (j.contains("x_init")) {
        std::vector<double> init;
        read_into(j, "x_init", init);
        c.x_init = std::move(init);
    }
    read_into(j, "multistart", c.multistart);
    read_into(j, "max_iters", c.max_iters);
    read_into(j, "grad_tol", c.grad_tol);
    read_into(j, "out", c.out);
    read_into(j, "fault", c.fault);
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace ivo
