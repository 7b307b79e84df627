#ifndef IVO_CONFIG_HPP
#define IVO_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ivo {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// One flat block of knobs: identical RunConfig must yield byte-identical
// reports (timing aside), so everything a check reads lives here.
struct RunConfig {
    std::string schema = "ivo-config/1";
    std::uint64_t seed = 42;

    // tolerances
    double spd_tol = 1e-10;
    double sym_tol = 1e-10;
    double hyp_tol = 1e-10;
    double deriv_tol = 1e-7;
    double cont_tol = 1e-2;
    double gx_tol = 1e-5;
    double ineq_tol = 1e-8;
    double eq_tol = 1e-9;
    double x_tol = 1e-4;
    double h_tol = 1e-6;

    // sample counts
    int law_samples = 10000;
    int manifold_pairs = 1000;
    int deriv_pairs = 1000;
    int convexity_pairs = 300;
    int continuity_samples = 10000;
    int gateaux_samples = 200;
    int efficiency_samples = 10000;
    int certificate_samples = 1000;
    int vi_samples = 400;
    int bridge_trials = 1000;

    // grids
    std::vector<double> diffquot_grid = {1.0, 0.5, 0.25, 0.1, 0.05};
    std::vector<double> continuity_radii = {0.1, 0.03, 0.01, 0.003, 0.001};

    // problem selection for the solve/certify/vi commands
    std::string problem = "posreals_x_plus_inv";
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    std::optional<std::vector<double>> x_init;
    int multistart = 0;
    int max_iters = 200;
    double grad_tol = 1e-6;

    std::string out;    // report path; empty writes to stdout only
    std::string fault;  // test-only fault injection, e.g. "gh_diff"

    void validate() const;
};

// Parses a JSON config file; unknown keys and malformed values raise
// ConfigError (CLI exit code 2).
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace ivo

#endif
