#include "doctest.h"
#include "ivo/catalog.hpp"
#include "ivo/rivf.hpp"

#include <cmath>

using namespace ivo;

namespace {

ManifoldPoint r2(double a, double b) {
    Eigen::VectorXd c(2);
    c << a, b;
    return ManifoldPoint::euclidean(c);
}

TangentVector tangent_r2(const ManifoldPoint& x, double a, double b) {
    Eigen::VectorXd c(2);
    c << a, b;
    return {x, c};
}

TangentVector tangent_pos(const ManifoldPoint& x, double v) {
    Eigen::VectorXd c(1);
    c << v;
    return {x, c};
}

StreamKey key(const std::string& check) { return StreamKey{99, "test_rivf", check}; }

}  // namespace

TEST_CASE("eval reproduces the worked values") {
    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    const Interval at2 = eval(pos, ManifoldPoint::positive_real(2.0));
    CHECK(at2.lo == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(at2.hi == doctest::Approx(2.5).epsilon(1e-14));

    const Rivf logdet = catalog_fn("spd_logdet");
    const Interval at_e =
        eval(logdet, ManifoldPoint::spd(std::exp(1.0) * Eigen::MatrixXd::Identity(2, 2)));
    CHECK(at_e.lo == 0.0);
    CHECK(at_e.hi == doctest::Approx(2.0).epsilon(1e-12));

    const Rivf flat = catalog_fn("flat_r2_frac");
    CHECK(eval(flat, r2(0, 0)) == Interval(0, 0));
}

TEST_CASE("eval rejects domain violations and component inversion") {
    const Rivf logdet = catalog_fn("spd_logdet");
    CHECK_THROWS_AS(eval(logdet, ManifoldPoint::spd(0.5 * Eigen::MatrixXd::Identity(2, 2))),
                    DomainExit);

    Rivf bad;
    bad.model = ManifoldModel::euclidean(1);
    bad.key = "inverted";
    bad.lower = [](const ManifoldPoint&) { return 1.0; };
    bad.upper = [](const ManifoldPoint&) { return 0.0; };
    CHECK_THROWS_AS(eval(bad, ManifoldPoint::euclidean(Eigen::VectorXd::Zero(1))), MalformedRivf);
}

TEST_CASE("directional derivative matches the closed forms") {
    const Rivf flat = catalog_fn("flat_r2_frac");
    const ManifoldPoint origin = r2(0, 0);
    const DerivativeResult d = dir_deriv(flat, origin, tangent_r2(origin, 1, 1));
    CHECK(std::abs(d.value.lo - 1.0) <= 1e-6);
    CHECK(std::abs(d.value.hi - 2.0) <= 1e-6);
    // the min/max combination is structural
    CHECK(d.value == Interval::from_unordered(d.component_lower, d.component_upper));

    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    const ManifoldPoint two = ManifoldPoint::positive_real(2.0);
    const DerivativeResult d2 = dir_deriv(pos, two, tangent_pos(two, 1.0));
    CHECK(std::abs(d2.value.lo - 0.75) <= 1e-6);
    CHECK(std::abs(d2.value.hi - 1.0) <= 1e-6);

    const ManifoldPoint one = ManifoldPoint::positive_real(1.0);
    const DerivativeResult d3 = dir_deriv(pos, one, tangent_pos(one, -1.0));
    CHECK(std::abs(d3.value.lo - (-1.0)) <= 1e-6);
    CHECK(std::abs(d3.value.hi - 0.0) <= 1e-6);

    // v * [1 - 1/x^2, 1] across a grid of points and directions
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
        for (double v : {-2.0, -1.0, 1.0, 2.0}) {
            const ManifoldPoint px = ManifoldPoint::positive_real(x);
            const Interval got = dir_deriv(pos, px, tangent_pos(px, v)).value;
            const Interval want = scale(v, Interval(1.0 - 1.0 / (x * x), 1.0));
            CHECK(hausdorff(got, want) <= 1e-6);
            CHECK(hausdorff(got, pos.deriv(px, tangent_pos(px, v))) <= 1e-6);
        }
    }
}

TEST_CASE("zero direction differentiates to the zero interval") {
    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    const ManifoldPoint x = ManifoldPoint::positive_real(3.0);
    const DerivativeResult d = dir_deriv(pos, x, tangent_pos(x, 0.0));
    CHECK(d.value == Interval(0, 0));
    CHECK(d.steps_used == 0);
}

TEST_CASE("derivative exists on convex fixtures at sampled points") {
    for (const char* k : {"posreals_x_plus_inv", "spd_logdet", "euclid_quad"}) {
        const Rivf f = catalog_fn(k);
        for (int i = 0; i < 60; ++i) {
            CounterRng rng = key(std::string("exists/") + k).at(i);
            const ManifoldPoint x = f.sample(rng);
            const TangentVector v = sample_tangent(x, rng, 0.5);
            Interval via_fd;
            try {
                via_fd = dir_deriv(f, x, v).value;
            } catch (const DomainExit&) {
                continue;  // probe left {det > 1}; existence is interior-only
            }
            CHECK(hausdorff(via_fd, f.deriv(x, v)) <= 1e-6);
        }
    }
}

TEST_CASE("infinite steepness is reported as non-convergence") {
    Rivf f;
    f.model = ManifoldModel::euclidean(1);
    f.key = "sqrt_cusp";
    f.lower = [](const ManifoldPoint& p) { return -std::sqrt(std::abs(p.coords(0))); };
    f.upper = [](const ManifoldPoint&) { return 1.0; };
    const ManifoldPoint zero = ManifoldPoint::euclidean(Eigen::VectorXd::Zero(1));
    Eigen::VectorXd dir(1);
    dir << 1.0;
    CHECK_THROWS_AS(dir_deriv(f, zero, TangentVector{zero, dir}), NonConvergence);
}

TEST_CASE("probe geodesics leaving the domain raise DomainExit") {
    const Rivf logdet = catalog_fn("spd_logdet");
    const ManifoldPoint x = ManifoldPoint::spd(1.001 * Eigen::MatrixXd::Identity(2, 2));
    const TangentVector v{x, -x.coords};  // det shrinks along this direction
    CHECK_THROWS_AS(dir_deriv(logdet, x, v), DomainExit);
}

TEST_CASE("continuity probe verdicts per fixture") {
    ContinuityParams params;
    params.samples_per_radius = 4000;

    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    CHECK(gh_continuity_probe(pos, ManifoldPoint::positive_real(1.0), params, key("cont_pos"))
              .verdict == Verdict::Pass);

    const Rivf logdet2 = catalog_fn("spd_logdet2");
    CHECK(gh_continuity_probe(logdet2, ManifoldPoint::spd(Eigen::MatrixXd::Identity(2, 2)),
                              params, key("cont_logdet2"))
              .verdict == Verdict::Pass);

    const Rivf flat = catalog_fn("flat_r2_frac");
    const CheckReport rep = gh_continuity_probe(flat, r2(0, 0), params, key("cont_flat"));
    CHECK(rep.verdict == Verdict::Fail);
    REQUIRE(!rep.witnesses.empty());
    CHECK(rep.max_residual > 0.3);  // the ridge keeps a unit-order deviation
    // witness family hugs x2 ~ x1^2: the recorded tangent has |v2| << |v1|
    const auto& w = rep.witnesses.front().data;
    REQUIRE(w.size() == 2);
    CHECK(std::abs(w[1]) < 0.2 * std::abs(w[0]));
}

TEST_CASE("interval continuity verdict agrees with the componentwise probes") {
    ContinuityParams params;
    params.samples_per_radius = 3000;
    struct Case {
        const char* fn;
        ManifoldPoint at;
    };
    const std::vector<Case> cases = {
        {"posreals_x_plus_inv", ManifoldPoint::positive_real(1.3)},
        {"euclid_quad", r2(0.4, -0.2)},
        {"spd_logdet2", ManifoldPoint::spd(Eigen::MatrixXd::Identity(2, 2))},
        {"flat_r2_frac", r2(0, 0)},
    };
    for (const auto& c : cases) {
        const Rivf f = catalog_fn(c.fn);
        const bool gh_pass =
            gh_continuity_probe(f, c.at, params, key(std::string("agree/") + c.fn)).verdict ==
            Verdict::Pass;
        const bool lo_pass =
            scalar_continuity_probe(f.lower, c.at, params,
                                    key(std::string("agree_lo/") + c.fn))
                .verdict == Verdict::Pass;
        const bool hi_pass =
            scalar_continuity_probe(f.upper, c.at, params,
                                    key(std::string("agree_hi/") + c.fn))
                .verdict == Verdict::Pass;
        CHECK(gh_pass == (lo_pass && hi_pass));
    }
}

TEST_CASE("gateaux check passes where the derivative map is linear") {
    GateauxParams params;
    params.samples = 80;

    const Rivf flat = catalog_fn("flat_r2_frac");
    const CheckReport at_origin = gateaux_check(flat, r2(0, 0), params, key("gx_flat"));
    CHECK(at_origin.verdict == Verdict::Pass);
    CHECK(at_origin.stats.at("lambda_negative") > 0);

    const Rivf logdet2 = catalog_fn("spd_logdet2");
    CHECK(gateaux_check(logdet2, ManifoldPoint::spd(Eigen::MatrixXd::Identity(2, 2)), params,
                        key("gx_logdet2"))
              .verdict == Verdict::Pass);

    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    CHECK(gateaux_check(pos, ManifoldPoint::positive_real(1.0), params, key("gx_pos")).verdict ==
          Verdict::Pass);
}

TEST_CASE("gateaux linearity clauses on the explicit one-dimensional kink") {
    // f(x) = [min(x,2x), max(x,2x)] at 0: F(v) = [min(v,2v), max(v,2v)].
    Rivf f;
    f.model = ManifoldModel::euclidean(1);
    f.key = "kink1d";
    f.lower = [](const ManifoldPoint& p) { return std::min(p.coords(0), 2.0 * p.coords(0)); };
    f.upper = [](const ManifoldPoint& p) { return std::max(p.coords(0), 2.0 * p.coords(0)); };
    const ManifoldPoint zero = ManifoldPoint::euclidean(Eigen::VectorXd::Zero(1));
    auto F = [&](double v) {
        Eigen::VectorXd c(1);
        c << v;
        return dir_deriv(f, zero, TangentVector{zero, c}).value;
    };

    // grid oracle: direct evaluation of both sides
    for (double v : {-2.0, -1.0, 1.0, 2.0}) {
        const Interval fv = F(v);
        CHECK(hausdorff(fv, Interval::from_unordered(v, 2.0 * v)) <= 1e-7);
        for (double lam : {-2.0, -1.0, 0.5}) {
            CHECK(hausdorff(F(lam * v), scale(lam, fv)) <= 1e-7);
        }
        // opposite directions trigger the nondominance branch:
        // F(v) + F(-v) = [-|v|, |v|] vs F(0) = [0,0]
        const Interval sum = add(fv, F(-v));
        CHECK(hausdorff(sum, Interval(-std::abs(v), std::abs(v))) <= 1e-7);
        CHECK(compare(sum, Interval(0, 0)) == OrderRelation::Incomparable);
    }

    GateauxParams params;
    params.samples = 60;
    const CheckReport rep = gateaux_check(f, zero, params, key("gx_kink"));
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.stats.at("additivity_incomparable") > 0);  // both clauses exercised
    CHECK(rep.stats.at("additivity_equal") > 0);
}

TEST_CASE("convexity check verdicts") {
    ConvexityParams params;
    params.pairs = 150;

    CHECK(convexity_check(catalog_fn("spd_logdet"), params, key("cvx_logdet")).verdict ==
          Verdict::Pass);
    CHECK(convexity_check(catalog_fn("posreals_x_plus_inv"), params, key("cvx_pos")).verdict ==
          Verdict::Pass);
    CHECK(convexity_check(catalog_fn("euclid_quad"), params, key("cvx_quad")).verdict ==
          Verdict::Pass);

    // f(x) = [0, -ln x] is linear along posreals geodesics: equality case.
    Rivf lin;
    lin.model = ManifoldModel::positive_reals();
    lin.key = "neg_log";
    lin.lower = [](const ManifoldPoint&) { return 0.0; };
    lin.upper = [](const ManifoldPoint& p) { return -std::log(p.scalar()); };
    lin.domain = [](const ManifoldPoint& p) { return p.scalar() < 1.0; };  // keep upper >= 0
    lin.sample_domain = [](CounterRng& rng) {
        return ManifoldPoint::positive_real(std::exp(-0.1 - rng.uniform01()));
    };
    lin.claimed_geodesically_convex = true;
    const CheckReport linear_rep = convexity_check(lin, params, key("cvx_lin"));
    CHECK(linear_rep.verdict == Verdict::Pass);
    CHECK(linear_rep.max_residual <= 1e-12);  // equality along geodesics

    // the ridge fixture is genuinely nonconvex
    CHECK(convexity_check(catalog_fn("flat_r2_frac"), params, key("cvx_flat")).verdict ==
          Verdict::Fail);
}

TEST_CASE("dense-grid convexity oracle backs the sampled check for posreals") {
    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    CounterRng rng = key("cvx_dense").at(0);
    for (int i = 0; i < 100; ++i) {
        const double x = std::exp(rng.uniform(-1.5, 1.5));
        const double y = std::exp(rng.uniform(-1.5, 1.5));
        for (int j = 0; j <= 40; ++j) {
            const double t = j / 40.0;
            const double gt = x * std::pow(y / x, t);  // posreals geodesic
            const double lhs_lo = gt;
            const double lhs_hi = gt + 1.0 / gt;
            const double rhs_lo = (1 - t) * x + t * y;
            const double rhs_hi = (1 - t) * (x + 1.0 / x) + t * (y + 1.0 / y);
            CHECK(lhs_lo <= rhs_lo + 1e-10);
            CHECK(lhs_hi <= rhs_hi + 1e-10);
        }
    }
}

TEST_CASE("sublevel sets of convex fixtures stay geodesically convex") {
    ConvexityParams params;
    params.pairs = 120;

    CHECK(sublevel_convexity_check(catalog_fn("spd_logdet"), Interval(0, 5), params,
                                   key("sub_logdet"))
              .verdict == Verdict::Pass);

    // A = [3, 3.5]: the feasible x solve x <= 3 and x + 1/x <= 3.5.
    // Bisection oracle for the endpoints of that window:
    auto root = [](double lo, double hi) {
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (lo + hi);
            ((m + 1.0 / m - 3.5 > 0) == (lo + 1.0 / lo - 3.5 > 0) ? lo : hi) = m;
        }
        return 0.5 * (lo + hi);
    };
    const double left = root(0.2, 1.0);
    const double right = root(1.0, 3.4);
    CHECK(left == doctest::Approx(0.5 * (3.5 - std::sqrt(8.25))).epsilon(1e-9));
    CHECK(right == doctest::Approx(0.5 * (3.5 + std::sqrt(8.25))).epsilon(1e-9));

    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    const Interval level(3.0, 3.5);
    const CheckReport rep = sublevel_convexity_check(pos, level, params, key("sub_pos"));
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.samples > 0);

    // sanity: every accepted point must lie inside the oracle window
    CounterRng rng = key("sub_pos_oracle").at(0);
    for (int i = 0; i < 2000; ++i) {
        const ManifoldPoint x = pos.sample(rng);
        if (preceq(eval(pos, x), level)) {
            CHECK(x.scalar() >= left - 1e-9);
            CHECK(x.scalar() <= std::min(right, 3.0) + 1e-9);
        }
    }

    // level below the attainable minimum: vacuous pass
    const CheckReport vac =
        sublevel_convexity_check(pos, Interval(0.0, 1.9), params, key("sub_vac"));
    CHECK(vac.verdict == Verdict::Pass);
    CHECK(vac.samples == 0);
    REQUIRE(!vac.notes.empty());
}

TEST_CASE("difference quotients are monotone for convex fixtures") {
    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    const ManifoldPoint two = ManifoldPoint::positive_real(2.0);
    const std::vector<double> grid = {1.0, 0.5, 0.25, 0.1};
    CHECK(diffquot_monotone_check(pos, two, tangent_pos(two, 1.0), grid, 1e-10,
                                  key("mono_pos"))
              .verdict == Verdict::Pass);

    // linear-along-geodesic: the quotient is constant, the monotone boundary case
    Rivf lin;
    lin.model = ManifoldModel::positive_reals();
    lin.key = "log_linear";
    lin.lower = [](const ManifoldPoint& p) { return std::log(p.scalar()); };
    lin.upper = [](const ManifoldPoint& p) { return std::log(p.scalar()) + 1.0; };
    lin.claimed_geodesically_convex = true;
    const ManifoldPoint x0 = ManifoldPoint::positive_real(1.0);
    const CheckReport const_rep =
        diffquot_monotone_check(lin, x0, tangent_pos(x0, 0.7), grid, 1e-10, key("mono_lin"));
    CHECK(const_rep.verdict == Verdict::Pass);

    // the non-convex fixture is gated out
    const Rivf flat = catalog_fn("flat_r2_frac");
    const ManifoldPoint origin = r2(0, 0);
    const CheckReport gated = diffquot_monotone_check(flat, origin, tangent_r2(origin, 1, 1),
                                                      grid, 1e-10, key("mono_flat"));
    CHECK(gated.verdict == Verdict::Inconclusive);
}

TEST_CASE("convex derivative bound holds with tight slack") {
    Thm33Params params;
    params.pairs = 400;
    for (const char* k : {"posreals_x_plus_inv", "spd_logdet", "euclid_quad"}) {
        const CheckReport rep =
            thm33_inequality_check(catalog_fn(k), params, key(std::string("thm33/") + k));
        CHECK(rep.verdict == Verdict::Pass);
        CHECK(rep.max_residual <= 1e-8);
    }

    // x = y: both sides are the zero interval
    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    const ManifoldPoint x = ManifoldPoint::positive_real(1.7);
    const Interval d = pos.deriv(x, log_map(x, x));
    CHECK(d == Interval(0, 0));
    CHECK(gh_diff(eval(pos, x), eval(pos, x)) == Interval(0, 0));
}
