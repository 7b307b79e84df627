#ifndef IVO_RIVI_HPP
#define IVO_RIVI_HPP

#include <functional>
#include <string>

#include "ivo/riop.hpp"
#include "ivo/rivf.hpp"

namespace ivo {

// Linear interval-valued functional on a tangent space, represented by two
// cotangent vectors: v maps to [min(<p,v>, <q,v>), max(<p,v>, <q,v>)].
// Every derivative map of the min/max component form has this shape.
struct LinearIntervalMap {
    ManifoldPoint base;
    TangentVector p;
    TangentVector q;

    Interval apply(const TangentVector& v) const;
};

// x -> linear interval map at x; the operator of a variational inequality.
struct IntervalField {
    ManifoldModel model;
    std::string key;
    std::function<LinearIntervalMap(const ManifoldPoint&)> at;
    std::function<bool(const ManifoldPoint&)> domain;
    std::function<ManifoldPoint(CounterRng&)> sample_domain;

    bool in_domain(const ManifoldPoint& x) const { return !domain || domain(x); }
    ManifoldPoint sample(CounterRng& rng) const {
        return sample_domain ? sample_domain(rng) : sample_point(model, rng, 1.0);
    }
};

// The derivative field of an interval-valued function; requires the
// function to carry its component gradient pair.
IntervalField gateaux_field(const Rivf& f);

Interval apply(const IntervalField& T, const ManifoldPoint& x, const TangentVector& v);

struct ViParams {
    int samples = 400;
    double eq_tol = 1e-9;
};

// Strong-form residual at x0: T(x0) applied toward every sampled point must
// not be dominated by zero. An [a,0] value with a < 0 IS dominated and
// fails, which is exactly the obstruction blocking efficiency bridges.
Certificate stampacchia_residual(const IntervalField& T, const ManifoldPoint& x0,
                                 const ViParams& params, const StreamKey& key);

// Dual-form residual: T evaluated at the sampled point y, applied to the
// same geodesic's velocity read at y (i.e. -log_y(x0)).
Certificate minty_residual(const IntervalField& T, const ManifoldPoint& x0,
                           const ViParams& params, const StreamKey& key);

// T(x)(log_x y) not dominated by 0 implies T(y)(that geodesic's velocity at
// y) not dominated by 0, over sampled pairs.
CheckReport pseudomonotone_check(const IntervalField& T, int n_pairs, double tol,
                                 const StreamKey& key);

struct PseudoconvexParams {
    int pairs = 400;
    double tol = 1e-9;
    bool use_closed_form = true;
    DerivSchedule schedule{};
    bool gateaux_verified = false;  // gate: the derivative map must be linear
};

// f'(x, log_x y) not dominated by 0 implies f(y) does not dominate f(x).
CheckReport pseudoconvex_check(const Rivf& f, const PseudoconvexParams& params,
                               const StreamKey& key);

struct BridgeParams {
    int trials = 100;        // candidate base points
    int samples = 200;       // residual samples per candidate
    double eq_tol = 1e-9;
    bool pseudomonotone_verified = false;
    bool pseudoconvex_verified = false;
    CertifyParams certify{};
};

// Every sampled strong-form solution also solves the dual form, given a
// pseudomonotone operator. Candidates failing the strong form are skipped.
CheckReport bridge_stampacchia_to_minty(const IntervalField& T, const BridgeParams& params,
                                        const StreamKey& key);

// A sampled-efficient x0 whose derivative field never takes the [a,0] form
// (a < 0) toward the samples must solve the strong-form inequality there.
CheckReport bridge_efficiency_to_stampacchia(const RioProblem& p, const ManifoldPoint& x0,
                                             const BridgeParams& params, const StreamKey& key);

// A strong-form solution of the derivative field of a pseudoconvex function
// must be sampled-efficient.
CheckReport bridge_stampacchia_to_efficiency(const RioProblem& p, const ManifoldPoint& x0,
                                             const BridgeParams& params, const StreamKey& key);

}  // namespace ivo

#endif
