#include "doctest.h"
#include "ivo/catalog.hpp"
#include "ivo/riop.hpp"

#include <cmath>

using namespace ivo;

namespace {

StreamKey key(const std::string& check) { return StreamKey{77, "test_riop", check}; }

RioProblem posreals_problem() {
    RioProblem p;
    p.f = catalog_fn("posreals_x_plus_inv");
    p.convexity_verified = true;
    return p;
}

RioProblem euclid_problem() {
    RioProblem p;
    p.f = catalog_fn("euclid_quad");
    p.convexity_verified = true;
    return p;
}

// Disjoint, flat-bottomed component argmin sets: the lower component is
// minimized on [-1,1], the upper on [2,4]. Neither minimizer is unique and
// they never coincide, so no component route can assert efficiency.
RioProblem split_argmin_problem() {
    RioProblem p;
    p.f.model = ManifoldModel::euclidean(1);
    p.f.key = "split_argmin";
    auto hinge = [](double t) {
        const double s = std::max(0.0, std::abs(t) - 1.0);
        return s * s;
    };
    p.f.lower = [hinge](const ManifoldPoint& q) { return hinge(q.coords(0)); };
    p.f.upper = [hinge](const ManifoldPoint& q) { return hinge(q.coords(0) - 3.0) + 4.0; };
    p.f.domain = [](const ManifoldPoint& q) {
        return q.coords(0) > -4.5 && q.coords(0) <= 3.0;  // keeps lower <= upper
    };
    p.f.sample_domain = [](CounterRng& rng) {
        Eigen::VectorXd c(1);
        c << rng.uniform(-4.0, 3.0);
        return ManifoldPoint::euclidean(c);
    };
    return p;
}

ManifoldPoint e1(double x) {
    Eigen::VectorXd c(1);
    c << x;
    return ManifoldPoint::euclidean(c);
}

}  // namespace

TEST_CASE("settings validation") {
    SolverSettings s;
    s.lambda1 = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.lambda1 = 1.0;
    s.lambda2 = -1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.lambda2 = 1.0;
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("scalarized solve recovers the known minimizers") {
    const RioProblem p = posreals_problem();

    SolverSettings near_upper;
    near_upper.lambda1 = 1e-9;
    near_upper.lambda2 = 1.0;
    const SolveResult r1 = solve_scalarized(p, near_upper, ManifoldPoint::positive_real(2.0));
    CHECK(r1.status == SolveStatus::Converged);
    CHECK(r1.iters < 200);
    CHECK(std::abs(r1.point.scalar() - 1.0) <= 1e-4);

    SolverSettings even;
    const SolveResult r2 = solve_scalarized(p, even, ManifoldPoint::positive_real(2.0));
    CHECK(r2.status == SolveStatus::Converged);
    CHECK(r2.iters < 200);
    CHECK(std::abs(r2.point.scalar() - 1.0 / std::sqrt(2.0)) <= 1e-4);

    const RioProblem q = euclid_problem();
    SolverSettings any;
    any.lambda1 = 0.3;
    any.lambda2 = 2.0;
    Eigen::VectorXd init(2);
    init << 1.5, -0.7;
    const SolveResult r3 = solve_scalarized(q, any, ManifoldPoint::euclidean(init));
    CHECK(r3.status == SolveStatus::Converged);
    CHECK(r3.point.coords.norm() <= 1e-4);
}

TEST_CASE("adding a constant to both components leaves the argmin unchanged") {
    RioProblem p = posreals_problem();
    SolverSettings s;
    const SolveResult base = solve_scalarized(p, s, ManifoldPoint::positive_real(2.0));

    RioProblem shifted = p;
    const auto lo = p.f.lower;
    const auto hi = p.f.upper;
    shifted.f.lower = [lo](const ManifoldPoint& x) { return lo(x) + 17.5; };
    shifted.f.upper = [hi](const ManifoldPoint& x) { return hi(x) + 17.5; };
    const SolveResult moved = solve_scalarized(shifted, s, ManifoldPoint::positive_real(2.0));
    CHECK(std::abs(base.point.scalar() - moved.point.scalar()) <= 1e-4);
}

TEST_CASE("minimizing the lower component drifts to the boundary without converging") {
    const RioProblem p = posreals_problem();
    SolverSettings s;
    const SolveResult r = minimize_scalar(p.f.lower, p.f, s, ManifoldPoint::positive_real(2.0));
    CHECK(r.status == SolveStatus::MaxItersExceeded);
    CHECK(r.point.scalar() < 0.1);  // heading toward 0
    REQUIRE(r.trace.size() >= 2);
    CHECK(r.trace.back().value < r.trace.front().value);
}

TEST_CASE("component-minima certificate routes") {
    // posreals: lower has no argmin, upper is uniquely minimized at 1
    const Certificate pos = check_component_minima(posreals_problem(),
                                                   ManifoldPoint::positive_real(2.0),
                                                   Prop41Params{}, key("prop41_pos"));
    CHECK(pos.report.verdict == Verdict::Pass);
    REQUIRE(!pos.report.witnesses.empty());
    CHECK(std::abs(pos.report.witnesses.front().data.at(0) - 1.0) <= 1e-3);
    bool unique_route = false;
    for (const auto& n : pos.report.notes) unique_route |= n.find("unique") != std::string::npos;
    CHECK(unique_route);

    // euclid: both components minimized at the origin simultaneously
    Eigen::VectorXd init(2);
    init << 0.8, 0.6;
    const Certificate eu = check_component_minima(euclid_problem(),
                                                  ManifoldPoint::euclidean(init), Prop41Params{},
                                                  key("prop41_euclid"));
    CHECK(eu.report.verdict == Verdict::Pass);
    bool simultaneous = false;
    for (const auto& n : eu.report.notes)
        simultaneous |= n.find("simultaneous") != std::string::npos;
    CHECK(simultaneous);

    // split argmins: no assertion possible
    const Certificate split =
        check_component_minima(split_argmin_problem(), e1(0.5), Prop41Params{}, key("prop41_split"));
    CHECK(split.report.verdict == Verdict::Inconclusive);
}

TEST_CASE("sampled efficiency verdicts on the worked problems") {
    CertifyParams params;
    params.samples = 4000;

    const RioProblem pos = posreals_problem();
    CHECK(is_efficient_sampled(pos, ManifoldPoint::positive_real(1.0), params, key("eff1"))
              .report.verdict == Verdict::Pass);

    const Certificate at2 =
        is_efficient_sampled(pos, ManifoldPoint::positive_real(2.0), params, key("eff2"));
    CHECK(at2.report.verdict == Verdict::Fail);
    REQUIRE(!at2.report.witnesses.empty());
    const double wy = at2.report.witnesses.front().data.at(0);
    CHECK(wy <= 2.0);
    CHECK(wy + 1.0 / wy <= 2.5);

    // the log-det problem admits no efficient point: every candidate is beaten
    RioProblem spd;
    spd.f = catalog_fn("spd_logdet_riop");
    CertifyParams spd_params;
    spd_params.samples = 3000;
    for (int k = 0; k < 20; ++k) {
        CounterRng rng = key("eff_spd").at(k);
        const ManifoldPoint x0 = spd.f.sample(rng);
        const Certificate c = is_efficient_sampled(spd, x0, spd_params,
                                                   key("eff_spd_run" + std::to_string(k)));
        CHECK(c.report.verdict == Verdict::Fail);
        if (!c.report.witnesses.empty()) {
            // witness really dominates: smaller determinant, still feasible
            const auto& d = c.report.witnesses.front().data;
            Eigen::MatrixXd m(2, 2);
            m << d[0], d[1], d[2], d[3];
            CHECK(m.determinant() > 1.0);
            CHECK(m.determinant() < x0.matrix().determinant());
        }
    }
}

TEST_CASE("first-order directional certificates at the worked points") {
    const RioProblem pos = posreals_problem();
    CertifyParams params;
    params.samples = 400;

    const Certificate nec1 = certify_directional_necessary(
        pos, ManifoldPoint::positive_real(1.0), params, key("nec1"));
    CHECK(nec1.report.verdict == Verdict::Pass);
    CHECK(nec1.report.stats.at("branch_upper_zero") > 0);  // [a,0] occurred and was logged
    CHECK(nec1.report.stats.at("branch_not_dominated") > 0);

    const Certificate nec2 = certify_directional_necessary(
        pos, ManifoldPoint::positive_real(2.0), params, key("nec2"));
    CHECK(nec2.report.verdict == Verdict::Fail);
    REQUIRE(!nec2.report.witnesses.empty());

    const Certificate suf1 = certify_directional_sufficient(
        pos, ManifoldPoint::positive_real(1.0), params, key("suf1"));
    CHECK(suf1.report.verdict == Verdict::Inconclusive);  // the [a,0] gap

    const Certificate suf2 = certify_directional_sufficient(
        pos, ManifoldPoint::positive_real(2.0), params, key("suf2"));
    CHECK(suf2.report.verdict == Verdict::Fail);

    // at the common minimizer of the Euclidean problem the derivative is [0,0]
    const RioProblem eu = euclid_problem();
    const Certificate suf0 = certify_directional_sufficient(
        eu, ManifoldPoint::euclidean(Eigen::VectorXd::Zero(2)), params, key("suf0"));
    CHECK(suf0.report.verdict == Verdict::Pass);

    // convexity gate
    RioProblem ungated = pos;
    ungated.convexity_verified = false;
    CHECK(certify_directional_sufficient(ungated, ManifoldPoint::positive_real(1.0), params,
                                         key("sufgate"))
              .report.verdict == Verdict::Inconclusive);
}

TEST_CASE("zero-membership certificates, including the literal half-open form") {
    const RioProblem pos = posreals_problem();
    CertifyParams params;
    params.samples = 400;
    params.gateaux_verified = true;

    CHECK(certify_membership(pos, ManifoldPoint::positive_real(1.0),
                             MembershipVariant::Necessary, params, key("mem_nec1"))
              .report.verdict == Verdict::Pass);

    const Certificate suf = certify_membership(pos, ManifoldPoint::positive_real(1.0),
                                               MembershipVariant::Sufficient, params,
                                               key("mem_suf1"));
    CHECK(suf.report.verdict == Verdict::Inconclusive);
    CHECK(suf.report.stats.count("excluded_endpoint_blocker") == 1);

    const Certificate nec2 = certify_membership(pos, ManifoldPoint::positive_real(2.0),
                                                MembershipVariant::Necessary, params,
                                                key("mem_nec2"));
    CHECK(nec2.report.verdict == Verdict::Fail);
    REQUIRE(!nec2.report.witnesses.empty());

    CertifyParams ungated = params;
    ungated.gateaux_verified = false;
    CHECK(certify_membership(pos, ManifoldPoint::positive_real(1.0),
                             MembershipVariant::Necessary, ungated, key("mem_gate"))
              .report.verdict == Verdict::Inconclusive);
}

TEST_CASE("consistency: sampled-efficiency failure forces a necessary-condition failure") {
    const RioProblem pos = posreals_problem();
    CertifyParams params;
    params.samples = 600;
    for (double x0 : {0.6, 0.9, 1.0, 1.4, 2.0, 3.0}) {
        const ManifoldPoint p0 = ManifoldPoint::positive_real(x0);
        const bool eff =
            is_efficient_sampled(pos, p0, params, key("cons_eff" + std::to_string(x0)))
                .report.verdict == Verdict::Pass;
        const bool nec = certify_directional_necessary(
                             pos, p0, params, key("cons_nec" + std::to_string(x0)))
                             .report.verdict == Verdict::Pass;
        if (!eff) CHECK(!nec);   // contrapositive of the necessary condition
        if (x0 <= 1.0) CHECK((eff && nec));  // the efficient set is (0, 1]
    }
}

TEST_CASE("solver output passes the sampled-efficiency screen") {
    const RioProblem pos = posreals_problem();
    CertifyParams params;
    params.samples = 2000;
    for (double l1 : {1e-9, 1.0}) {
        SolverSettings s;
        s.lambda1 = l1;
        const SolveResult r = solve_scalarized(pos, s, ManifoldPoint::positive_real(2.0));
        REQUIRE(r.status == SolveStatus::Converged);
        CHECK(is_efficient_sampled(pos, r.point, params, key("sound" + std::to_string(l1)))
                  .report.verdict == Verdict::Pass);
    }
}
