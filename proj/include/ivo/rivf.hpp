#ifndef IVO_RIVF_HPP
#define IVO_RIVF_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ivo/check.hpp"
#include "ivo/interval.hpp"
#include "ivo/manifold.hpp"
#include "ivo/rng.hpp"

namespace ivo {

// Interval-valued function on a manifold domain: a pair of scalar component
// functions with lower <= upper everywhere, plus optional closed forms used
// as high-precision cross-checks of the finite-difference pipeline.
struct Rivf {
    ManifoldModel model;
    std::string key;
    std::function<double(const ManifoldPoint&)> lower;
    std::function<double(const ManifoldPoint&)> upper;
    std::function<bool(const ManifoldPoint&)> domain;  // empty => whole model
    std::function<ManifoldPoint(CounterRng&)> sample_domain;  // empty => sample_point(spread=1)

    bool claimed_geodesically_convex = false;
    bool claimed_gateaux = false;

    // Closed-form directional derivative, when one is known.
    std::function<Interval(const ManifoldPoint&, const TangentVector&)> deriv;
    // Riemannian gradients of the two smooth component branches, when known;
    // used to build the linear interval map of the derivative.
    std::function<std::pair<TangentVector, TangentVector>(const ManifoldPoint&)> grad_pair;

    bool in_domain(const ManifoldPoint& x) const { return !domain || domain(x); }
    ManifoldPoint sample(CounterRng& rng) const {
        return sample_domain ? sample_domain(rng) : sample_point(model, rng, 1.0);
    }
};

struct DomainExit : std::runtime_error {
    explicit DomainExit(const std::string& what) : std::runtime_error(what) {}
};
struct MalformedRivf : std::runtime_error {
    explicit MalformedRivf(const std::string& what) : std::runtime_error(what) {}
};
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// [lower(x), upper(x)]; rejects domain violations and component inversion.
Interval eval(const Rivf& f, const ManifoldPoint& x);

// One-sided difference-quotient schedule: t in {t0 * 2^-k}, t0 scaled by
// 1/|v|_x, with one Richardson extrapolation level. Central differences are
// deliberately not used: the limit is one-sided and kinks are expected.
struct DerivSchedule {
    double t0 = 1e-2;
    int max_steps = 20;
    double deriv_tol = 1e-7;
};

struct DerivativeResult {
    Interval value;               // [min, max] of the component derivatives
    double component_lower = 0;   // one-sided derivative of the lower component
    double component_upper = 0;   // one-sided derivative of the upper component
    double convergence_residual = 0;
    int steps_used = 0;
};

// gH-directional derivative by extrapolated one-sided difference quotients.
// Throws NonConvergence if successive extrapolants fail to settle within
// deriv_tol, DomainExit if the probe geodesic leaves the domain.
DerivativeResult dir_deriv(const Rivf& f, const ManifoldPoint& x, const TangentVector& v,
                           const DerivSchedule& schedule = {});

// --- sampled probes -----------------------------------------------------------

// Limit probes cannot certify a limit; they report a witness when the scale
// sweep stalls above tolerance, and pass when it decays below it.
struct ContinuityParams {
    std::vector<double> radii = {0.1, 0.03, 0.01, 0.003, 0.001};
    int samples_per_radius = 10000;
    double cont_tol = 0.01;
};

CheckReport gh_continuity_probe(const Rivf& f, const ManifoldPoint& x,
                                const ContinuityParams& params, const StreamKey& key);

// Same sweep for a scalar function; used to compare interval-level and
// componentwise continuity verdicts.
CheckReport scalar_continuity_probe(const std::function<double(const ManifoldPoint&)>& g,
                                    const ManifoldPoint& x, const ContinuityParams& params,
                                    const StreamKey& key);

struct GateauxParams {
    int samples = 200;
    double gx_tol = 1e-5;
    double direction_radius = 1.0;
    ContinuityParams continuity{{0.1, 0.01, 0.001}, 400, 0.01};
    int continuity_anchors = 4;
    DerivSchedule schedule{};
};

// Homogeneity (including negative factors), additivity-or-nondominance, and
// gH-continuity of the derivative map v -> f'(x, v). Branch frequencies of
// the additivity clause are reported in stats.
CheckReport gateaux_check(const Rivf& f, const ManifoldPoint& x, const GateauxParams& params,
                          const StreamKey& key);

struct ConvexityParams {
    int pairs = 300;
    std::vector<double> t_grid = {0.1, 0.25, 0.5, 0.75, 0.9};
    double tol = 1e-9;
};

// f(geodesic(x,y,t)) <= (1-t) f(x) + t f(y) on sampled pairs, plus the
// componentwise equivalence and the convexity of f o gamma as a function on
// [0,1] over the same samples.
CheckReport convexity_check(const Rivf& f, const ConvexityParams& params, const StreamKey& key);

// Sublevel sets {x : f(x) <= level} stay geodesically convex.
CheckReport sublevel_convexity_check(const Rivf& f, const Interval& level,
                                     const ConvexityParams& params, const StreamKey& key);

// phi(t) = (1/t)(f(exp_x(tv)) -gH f(x)) is componentwise nondecreasing on a
// decreasing grid and bounded below by its smallest-t value. Gated on the
// convexity claim.
CheckReport diffquot_monotone_check(const Rivf& f, const ManifoldPoint& x,
                                    const TangentVector& v, const std::vector<double>& t_grid,
                                    double tol, const StreamKey& key);

struct Thm33Params {
    int pairs = 1000;
    double ineq_tol = 1e-8;
    bool use_closed_form = true;  // fall back to finite differences when absent
};

// f'(x, log_x y) <= f(y) -gH f(x), and f(y) does not strictly dominate
// f'(x, log_x y) + f(x), over sampled pairs.
CheckReport thm33_inequality_check(const Rivf& f, const Thm33Params& params,
                                   const StreamKey& key);

}  // namespace ivo

#endif
