#include "doctest.h"
#include "ivo/catalog.hpp"
#include "ivo/rivi.hpp"

#include <cmath>

using namespace ivo;

namespace {

StreamKey key(const std::string& check) { return StreamKey{55, "test_rivi", check}; }

ManifoldPoint r2(double a, double b) {
    Eigen::VectorXd c(2);
    c << a, b;
    return ManifoldPoint::euclidean(c);
}

// T(x)(v) = -x*v*[1,2] on the Euclidean line; flips sign across the origin.
IntervalField sign_flip_field() {
    IntervalField T;
    T.model = ManifoldModel::euclidean(1);
    T.key = "sign_flip";
    T.at = [](const ManifoldPoint& x) {
        Eigen::VectorXd p(1), q(1);
        p << -x.coords(0);
        q << -2.0 * x.coords(0);
        return LinearIntervalMap{x, TangentVector{x, p}, TangentVector{x, q}};
    };
    T.sample_domain = [](CounterRng& rng) {
        Eigen::VectorXd c(1);
        c << rng.uniform(-2.0, 2.0);
        return ManifoldPoint::euclidean(c);
    };
    return T;
}

IntervalField zero_field(const ManifoldModel& model) {
    IntervalField T;
    T.model = model;
    T.key = "zero";
    T.at = [](const ManifoldPoint& x) {
        return LinearIntervalMap{x, zero_tangent(x), zero_tangent(x)};
    };
    return T;
}

}  // namespace

TEST_CASE("linear interval map evaluation at reference points") {
    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    const IntervalField T = gateaux_field(pos);
    const ManifoldPoint one = ManifoldPoint::positive_real(1.0);
    const ManifoldPoint e = ManifoldPoint::positive_real(std::exp(1.0));

    const Interval at_e = apply(T, one, log_map(one, e));
    CHECK(at_e.lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(at_e.hi == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(apply(T, one, zero_tangent(one)) == Interval(0, 0));

    // p = q collapses to a degenerate interval
    Eigen::VectorXd pc(1);
    pc << 0.7;
    LinearIntervalMap m{one, TangentVector{one, pc}, TangentVector{one, pc}};
    Eigen::VectorXd vc(1);
    vc << 2.0;
    const Interval deg = m.apply(TangentVector{one, vc});
    CHECK(deg.is_degenerate());
    CHECK(deg.lo == doctest::Approx(1.4).epsilon(1e-12));

    // tangents based elsewhere are rejected
    const ManifoldPoint two = ManifoldPoint::positive_real(2.0);
    CHECK_THROWS_AS(m.apply(TangentVector{two, vc}), std::invalid_argument);
}

TEST_CASE("map homogeneity and lipschitz bound") {
    const Rivf eu = catalog_fn("euclid_quad");
    const IntervalField T = gateaux_field(eu);
    CounterRng rng = key("homog").at(0);
    for (int i = 0; i < 2000; ++i) {
        const ManifoldPoint x = eu.sample(rng);
        const LinearIntervalMap m = T.at(x);
        const TangentVector v = sample_tangent(x, rng, 0.5 + rng.uniform01());
        const TangentVector w = sample_tangent(x, rng, 0.5 + rng.uniform01());
        const double lam = rng.uniform(-3.0, 3.0);
        CHECK(hausdorff(m.apply(tangent_scale(lam, v)), scale(lam, m.apply(v))) <= 1e-12);
        const double lip = std::max(tangent_norm(x, m.p), tangent_norm(x, m.q));
        const double dv = tangent_norm(x, tangent_add(v, tangent_scale(-1.0, w)));
        CHECK(norm(gh_diff(m.apply(v), m.apply(w))) <= lip * dv + 1e-12);
    }
}

TEST_CASE("derivative fields agree with the finite-difference derivative") {
    for (const char* k : {"posreals_x_plus_inv", "euclid_quad", "spd_logdet"}) {
        const Rivf f = catalog_fn(k);
        const IntervalField T = gateaux_field(f);
        for (int i = 0; i < 40; ++i) {
            CounterRng rng = key(std::string("agree/") + k).at(i);
            const ManifoldPoint x = f.sample(rng);
            const TangentVector v = sample_tangent(x, rng, 0.4);
            Interval fd;
            try {
                fd = dir_deriv(f, x, v).value;
            } catch (const DomainExit&) {
                continue;
            }
            CHECK(hausdorff(apply(T, x, v), fd) <= 1e-6);
        }
    }
}

TEST_CASE("strong-form residual at the worked points") {
    ViParams params;
    params.samples = 300;

    const Rivf eu = catalog_fn("euclid_quad");
    const IntervalField Te = gateaux_field(eu);
    CHECK(stampacchia_residual(Te, r2(0, 0), params, key("st_eu")).report.verdict ==
          Verdict::Pass);

    const Rivf pos = catalog_fn("posreals_x_plus_inv");
    const IntervalField Tp = gateaux_field(pos);
    const Certificate at1 =
        stampacchia_residual(Tp, ManifoldPoint::positive_real(1.0), params, key("st_pos1"));
    CHECK(at1.report.verdict == Verdict::Fail);
    REQUIRE(!at1.report.witnesses.empty());
    CHECK(at1.report.witnesses.front().data.at(2) < 1.0);  // witness y < 1
    bool a0_noted = false;
    for (const auto& n : at1.report.notes) a0_noted |= n.find("[a,0]") != std::string::npos;
    CHECK(a0_noted);

    CHECK(stampacchia_residual(Tp, ManifoldPoint::positive_real(2.0), params, key("st_pos2"))
              .report.verdict == Verdict::Fail);
}

TEST_CASE("dual-form residual follows the hand oracle") {
    ViParams params;
    params.samples = 300;

    const Rivf eu = catalog_fn("euclid_quad");
    const IntervalField T = gateaux_field(eu);
    CHECK(minty_residual(T, r2(0, 0), params, key("mt_eu")).report.verdict == Verdict::Pass);

    // hand evaluation at x0 = (1,0), y = (0.5,0): the value is [-1, -0.5]
    const ManifoldPoint x0 = r2(1, 0);
    const ManifoldPoint y = r2(0.5, 0);
    const TangentVector v_y = tangent_scale(-1.0, log_map(y, x0));
    const Interval val = apply(T, y, v_y);
    CHECK(val.lo == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(val.hi == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(minty_residual(T, x0, params, key("mt_eu1")).report.verdict == Verdict::Fail);

    CHECK(minty_residual(zero_field(ManifoldModel::euclidean(2)), r2(0.3, -0.8), params,
                         key("mt_zero"))
              .report.verdict == Verdict::Pass);
}

TEST_CASE("pseudomonotonicity verdicts") {
    const Rivf eu = catalog_fn("euclid_quad");
    CHECK(pseudomonotone_check(gateaux_field(eu), 500, 1e-9, key("pm_eu")).verdict ==
          Verdict::Pass);

    // independent monotone-gradient oracle for the same field
    CounterRng rng = key("pm_oracle").at(0);
    for (int i = 0; i < 500; ++i) {
        Eigen::VectorXd x(2), y(2);
        x << rng.normal(), rng.normal();
        y << rng.normal(), rng.normal();
        CHECK((2.0 * x - 2.0 * y).dot(x - y) >= 0.0);
        CHECK((4.0 * x - 4.0 * y).dot(x - y) >= 0.0);
    }

    const CheckReport flip = pseudomonotone_check(sign_flip_field(), 500, 1e-9, key("pm_flip"));
    CHECK(flip.verdict == Verdict::Fail);
    REQUIRE(!flip.witnesses.empty());

    // exhaustive small grid confirms the violating pattern x < 0 < y
    {
        const IntervalField T = sign_flip_field();
        bool found = false;
        for (double x = -1.5; x <= 1.5; x += 0.5) {
            for (double y = -1.5; y <= 1.5; y += 0.5) {
                if (x == y) continue;
                Eigen::VectorXd xc(1), yc(1);
                xc << x;
                yc << y;
                const ManifoldPoint px = ManifoldPoint::euclidean(xc);
                const ManifoldPoint py = ManifoldPoint::euclidean(yc);
                const Interval ax = apply(T, px, log_map(px, py));
                const Interval ay =
                    apply(T, py, tangent_scale(-1.0, log_map(py, px)));
                if (nprec(ax, Interval(0, 0)) && prec(ay, Interval(0, 0))) found = true;
            }
        }
        CHECK(found);
    }

    CHECK(pseudomonotone_check(zero_field(ManifoldModel::euclidean(2)), 200, 1e-9,
                               key("pm_zero"))
              .verdict == Verdict::Pass);
}

TEST_CASE("pseudoconvexity verdicts with grid oracles") {
    PseudoconvexParams params;
    params.pairs = 400;
    params.gateaux_verified = true;

    CHECK(pseudoconvex_check(catalog_fn("posreals_x_plus_inv"), params, key("pc_pos")).verdict ==
          Verdict::Pass);
    CHECK(pseudoconvex_check(catalog_fn("euclid_quad"), params, key("pc_eu")).verdict ==
          Verdict::Pass);

    // exhaustive log-spaced grid oracle for the posreals fixture
    {
        const Rivf pos = catalog_fn("posreals_x_plus_inv");
        for (int i = -3; i <= 3; ++i) {
            for (int j = -3; j <= 3; ++j) {
                const double x = std::pow(2.0, i), y = std::pow(2.0, j);
                const ManifoldPoint px = ManifoldPoint::positive_real(x);
                const ManifoldPoint py = ManifoldPoint::positive_real(y);
                const Interval d = pos.deriv(px, log_map(px, py));
                if (nprec(d, Interval(0, 0)))
                    CHECK(nprec(eval(pos, py), eval(pos, px)));
            }
        }
    }

    // the ridge fixture violates pseudoconvexity near the origin
    Rivf near_origin = catalog_fn("flat_r2_frac");
    near_origin.sample_domain = [](CounterRng& rng) {
        Eigen::VectorXd c(2);
        c << 0.35 * rng.normal(), 0.35 * rng.normal();
        return ManifoldPoint::euclidean(c);
    };
    const CheckReport flat = pseudoconvex_check(near_origin, params, key("pc_flat"));
    CHECK(flat.verdict == Verdict::Fail);
    REQUIRE(!flat.witnesses.empty());

    // gate behavior
    PseudoconvexParams ungated = params;
    ungated.gateaux_verified = false;
    CHECK(pseudoconvex_check(catalog_fn("euclid_quad"), ungated, key("pc_gate")).verdict ==
          Verdict::Inconclusive);
}

TEST_CASE("bridge: strong-form solutions solve the dual form for monotone fields") {
    // Random positive-definite affine fields with the solution point mixed
    // into the sampler so the implication is actually exercised.
    for (int trial = 0; trial < 10; ++trial) {
        CounterRng setup = key("bridge_setup").at(trial);
        Eigen::Matrix2d b;
        b << setup.normal(), setup.normal(), setup.normal(), setup.normal();
        const Eigen::Matrix2d a = b.transpose() * b + 0.2 * Eigen::Matrix2d::Identity();
        Eigen::Vector2d c(setup.normal(), setup.normal());
        const double kappa = 1.0 + setup.uniform01();

        IntervalField T;
        T.model = ManifoldModel::euclidean(2);
        T.key = "affine_monotone";
        T.at = [a, c, kappa](const ManifoldPoint& x) {
            const Eigen::VectorXd g = a * (x.coords - c);
            return LinearIntervalMap{x, TangentVector{x, g}, TangentVector{x, kappa * g}};
        };
        T.sample_domain = [c](CounterRng& rng) {
            if (rng.uniform01() < 0.125) return ManifoldPoint::euclidean(c);
            Eigen::VectorXd p(2);
            p << c(0) + rng.normal(), c(1) + rng.normal();
            return ManifoldPoint::euclidean(p);
        };

        BridgeParams params;
        params.trials = 40;
        params.samples = 60;
        params.pseudomonotone_verified =
            pseudomonotone_check(T, 300, 1e-9, key("bridge_pm" + std::to_string(trial)))
                .verdict == Verdict::Pass;
        REQUIRE(params.pseudomonotone_verified);
        const CheckReport rep =
            bridge_stampacchia_to_minty(T, params, key("bridge_sm" + std::to_string(trial)));
        CHECK(rep.verdict == Verdict::Pass);
        CHECK(rep.stats.at("strong_form_solutions") > 0);  // not vacuous
    }

    // gate behavior
    BridgeParams ungated;
    ungated.pseudomonotone_verified = false;
    CHECK(bridge_stampacchia_to_minty(sign_flip_field(), ungated, key("bridge_gate")).verdict ==
          Verdict::Inconclusive);
}

TEST_CASE("bridge: efficiency to the strong form, with the [a,0] gate") {
    BridgeParams params;
    params.samples = 200;

    RioProblem eu;
    eu.f = catalog_fn("euclid_quad");
    CHECK(bridge_efficiency_to_stampacchia(eu, r2(0, 0), params, key("b43_eu")).verdict ==
          Verdict::Pass);

    RioProblem pos;
    pos.f = catalog_fn("posreals_x_plus_inv");
    const CheckReport gated = bridge_efficiency_to_stampacchia(
        pos, ManifoldPoint::positive_real(1.0), params, key("b43_pos"));
    CHECK(gated.verdict == Verdict::Inconclusive);
    bool a0 = false;
    for (const auto& n : gated.notes) a0 |= n.find("[a,0]") != std::string::npos;
    CHECK(a0);

    // [s, s] derivative with s = 0 at the minimizer: allowed (a < 0 excluded)
    RioProblem shifted;
    shifted.f.model = ManifoldModel::euclidean(1);
    shifted.f.key = "shifted_quad";
    shifted.f.lower = [](const ManifoldPoint& p) {
        const double t = p.coords(0) - 2.0;
        return t * t;
    };
    shifted.f.upper = [](const ManifoldPoint& p) {
        const double t = p.coords(0) - 2.0;
        return t * t + 1.0;
    };
    shifted.f.grad_pair = [](const ManifoldPoint& x) {
        Eigen::VectorXd g(1);
        g << 2.0 * (x.coords(0) - 2.0);
        return std::make_pair(TangentVector{x, g}, TangentVector{x, g});
    };
    Eigen::VectorXd two(1);
    two << 2.0;
    CHECK(bridge_efficiency_to_stampacchia(shifted, ManifoldPoint::euclidean(two), params,
                                           key("b43_shift"))
              .verdict == Verdict::Pass);
}

TEST_CASE("bridge: strong form to efficiency under pseudoconvexity") {
    BridgeParams params;
    params.samples = 200;
    params.pseudoconvex_verified = true;

    RioProblem eu;
    eu.f = catalog_fn("euclid_quad");
    CHECK(bridge_stampacchia_to_efficiency(eu, r2(0, 0), params, key("b44_eu")).verdict ==
          Verdict::Pass);

    // a non-solution is gated out, not failed
    const CheckReport gated =
        bridge_stampacchia_to_efficiency(eu, r2(1, 0), params, key("b44_gate"));
    CHECK(gated.verdict == Verdict::Inconclusive);

    BridgeParams unverified;
    unverified.pseudoconvex_verified = false;
    CHECK(bridge_stampacchia_to_efficiency(eu, r2(0, 0), unverified, key("b44_unv")).verdict ==
          Verdict::Inconclusive);
}
