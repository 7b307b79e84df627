#include "ivo/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace ivo {

namespace {

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd c(1);
    c(0) = x;
    return c;
}

// Rational bump that rides the curve x2 = x1^2: equal to c^2/(1+c^4) along
// x2 = c*x1^2, so it carries a unit-order ridge into the origin while every
// radial difference quotient of it vanishes.
double ridge(double x1, double x2) {
    const double num = std::pow(x1, 4) * x2 * x2;
    const double den = std::pow(x1, 8) + std::pow(x2, 4);
    if (den == 0.0) return 0.0;
    return num / den;
}

double ridge_fn(const ManifoldPoint& p) { return p.coords(0) + ridge(p.coords(0), p.coords(1)); }

Eigen::VectorXd ridge_grad(const ManifoldPoint& p) {
    const double x1 = p.coords(0), x2 = p.coords(1);
    Eigen::VectorXd g(2);
    const double den = std::pow(x1, 8) + std::pow(x2, 4);
    if (den == 0.0) {
        g << 1.0, 0.0;  // at the origin every radial quotient tends to v1
        return g;
    }
    const double den2 = den * den;
    g(0) = 1.0 + 4.0 * std::pow(x1, 3) * x2 * x2 * (std::pow(x2, 4) - std::pow(x1, 8)) / den2;
    g(1) = 2.0 * std::pow(x1, 4) * x2 * (std::pow(x1, 8) - std::pow(x2, 4)) / den2;
    return g;
}

double spd_logdet_val(const ManifoldPoint& p) {
    return std::log(p.matrix().determinant());
}

// d/dt ln det(exp_X(tV)) = tr(X^-1 V), constant along the geodesic.
double spd_logdet_slope(const ManifoldPoint& x, const TangentVector& v) {
    return x.matrix().llt().solve(v.matrix()).trace();
}

ManifoldPoint sample_spd_logdet(CounterRng& rng, int n, double lo, double hi) {
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0) q.col(i) *= -1.0;
    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam(i) = std::exp(rng.uniform(lo, hi));
    const Eigen::MatrixXd m = q * lam.asDiagonal() * q.transpose();
    return ManifoldPoint::spd(0.5 * (m + m.transpose()));
}

TangentVector riem_grad_from_euclid(const ManifoldPoint& x, const Eigen::VectorXd& eg) {
    // Euclidean and hyperbolic tangents coincide with ambient coordinates
    // here; posreals rescales by the inverse metric.
    switch (x.model.kind) {
        case ModelKind::PositiveReals: {
            const double p = x.scalar();
            return {x, vec1(p * p * eg(0))};
        }
        default:
            return {x, eg};
    }
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;

    {  // Gateaux-differentiable at the origin yet not gH-continuous there.
        CatalogEntry e;
        e.key = "flat_r2_frac";
        e.kind = "function";
        e.model = "euclidean(2)";
        e.description =
            "g(x) = x1 + x1^4 x2^2/(x1^8 + x2^4) scaled into [g, 2g]; the ridge along "
            "x2 = x1^2 keeps a unit-size deviation at every radius";
        e.anchor = "derivative map v -> v1*[1,2] is linear while f is discontinuous at 0";
        Rivf f;
        f.model = ManifoldModel::euclidean(2);
        f.key = e.key;
        f.lower = [](const ManifoldPoint& p) {
            const double g = ridge_fn(p);
            return std::min(g, 2.0 * g);
        };
        f.upper = [](const ManifoldPoint& p) {
            const double g = ridge_fn(p);
            return std::max(g, 2.0 * g);
        };
        f.claimed_gateaux = true;
        f.deriv = [](const ManifoldPoint& x, const TangentVector& v) {
            const double s = ridge_grad(x).dot(v.coords);
            return scale(s, Interval(1.0, 2.0));
        };
        f.grad_pair = [](const ManifoldPoint& x) {
            const Eigen::VectorXd g = ridge_grad(x);
            return std::make_pair(TangentVector{x, g}, TangentVector{x, 2.0 * g});
        };
        e.fn = std::move(f);
        out.push_back(std::move(e));
    }

    {  // [0, ln det X] on {det > 1}: geodesically convex with equality.
        CatalogEntry e;
        e.key = "spd_logdet";
        e.kind = "function";
        e.model = "spd(2)";
        e.description = "f(X) = [0, ln det X] on {X : det X > 1}";
        e.anchor = "ln det is linear along SPD geodesics, so f is geodesically convex";
        Rivf f;
        f.model = ManifoldModel::spd(2);
        f.key = e.key;
        f.lower = [](const ManifoldPoint&) { return 0.0; };
        f.upper = spd_logdet_val;
        f.domain = [](const ManifoldPoint& p) { return p.matrix().determinant() > 1.0; };
        f.sample_domain = [](CounterRng& rng) { return sample_spd_logdet(rng, 2, 0.05, 1.2); };
        f.claimed_geodesically_convex = true;
        f.claimed_gateaux = true;
        f.deriv = [](const ManifoldPoint& x, const TangentVector& v) {
            return Interval::from_unordered(0.0, spd_logdet_slope(x, v));
        };
        f.grad_pair = [](const ManifoldPoint& x) {
            return std::make_pair(zero_tangent(x), TangentVector{x, x.coords});
        };
        e.fn = std::move(f);
        out.push_back(std::move(e));
    }

    {  // [min(d,2d), max(d,2d)] with d = ln det X, on the whole SPD cone.
        CatalogEntry e;
        e.key = "spd_logdet2";
        e.kind = "function";
        e.model = "spd(2)";
        e.description = "f(X) = [ln det X, ln det X^2] with branches swapped when det X < 1";
        e.anchor = "branch-swapped log-determinant pair stays Gateaux differentiable at I";
        Rivf f;
        f.model = ManifoldModel::spd(2);
        f.key = e.key;
        f.lower = [](const ManifoldPoint& p) {
            const double d = spd_logdet_val(p);
            return std::min(d, 2.0 * d);
        };
        f.upper = [](const ManifoldPoint& p) {
            const double d = spd_logdet_val(p);
            return std::max(d, 2.0 * d);
        };
        f.sample_domain = [](CounterRng& rng) { return sample_spd_logdet(rng, 2, -1.0, 1.0); };
        f.claimed_gateaux = true;
        f.deriv = [](const ManifoldPoint& x, const TangentVector& v) {
            const double s = spd_logdet_slope(x, v);
            return Interval::from_unordered(s, 2.0 * s);
        };
        f.grad_pair = [](const ManifoldPoint& x) {
            return std::make_pair(TangentVector{x, x.coords}, TangentVector{x, 2.0 * x.coords});
        };
        e.fn = std::move(f);
        out.push_back(std::move(e));
    }

    {  // Same objective as spd_logdet, framed as the optimization fixture
       // with no efficient point: every X is dominated by a smaller det.
        CatalogEntry e;
        e.key = "spd_logdet_riop";
        e.kind = "function";
        e.model = "spd(2)";
        e.description = "minimize [0, ln det X] over {det X > 1}; no efficient point exists";
        e.anchor = "for every X some Y with 1 < det Y < det X dominates it";
        for (const auto& prev : out)
            if (prev.key == "spd_logdet") e.fn = prev.fn;
        e.fn.key = e.key;
        e.fn.sample_domain = [](CounterRng& rng) { return sample_spd_logdet(rng, 2, 0.02, 1.2); };
        out.push_back(std::move(e));
    }

    {  // [x, x + 1/x] on the positive reals with the uv/x^2 metric.
        CatalogEntry e;
        e.key = "posreals_x_plus_inv";
        e.kind = "function";
        e.model = "posreals";
        e.description = "f(x) = [x, x + 1/x]; x = 1 is an efficient point";
        e.anchor = "f'(x, v) = v*[1 - 1/x^2, 1] under exp_x(tv) = x e^{(v/x)t}";
        Rivf f;
        f.model = ManifoldModel::positive_reals();
        f.key = e.key;
        f.lower = [](const ManifoldPoint& p) { return p.scalar(); };
        f.upper = [](const ManifoldPoint& p) { return p.scalar() + 1.0 / p.scalar(); };
        f.claimed_geodesically_convex = true;
        f.claimed_gateaux = true;
        f.deriv = [](const ManifoldPoint& x, const TangentVector& v) {
            const double p = x.scalar();
            return scale(v.scalar(), Interval(1.0 - 1.0 / (p * p), 1.0));
        };
        f.grad_pair = [](const ManifoldPoint& x) {
            const double p = x.scalar();
            return std::make_pair(riem_grad_from_euclid(x, vec1(1.0)),
                                  riem_grad_from_euclid(x, vec1(1.0 - 1.0 / (p * p))));
        };
        e.fn = std::move(f);
        out.push_back(std::move(e));
    }

    {  // Synthetic Euclidean problem with a common minimizer at the origin.
        CatalogEntry e;
        e.key = "euclid_quad";
        e.kind = "function";
        e.model = "euclidean(2)";
        e.description = "f(x) = [|x|^2, 2|x|^2] on R^2";
        e.anchor = "both components share the unique minimizer x = 0";
        Rivf f;
        f.model = ManifoldModel::euclidean(2);
        f.key = e.key;
        f.lower = [](const ManifoldPoint& p) { return p.coords.squaredNorm(); };
        f.upper = [](const ManifoldPoint& p) { return 2.0 * p.coords.squaredNorm(); };
        f.claimed_geodesically_convex = true;
        f.claimed_gateaux = true;
        f.deriv = [](const ManifoldPoint& x, const TangentVector& v) {
            const double s = 2.0 * x.coords.dot(v.coords);
            return Interval::from_unordered(s, 2.0 * s);
        };
        f.grad_pair = [](const ManifoldPoint& x) {
            return std::make_pair(TangentVector{x, 2.0 * x.coords},
                                  TangentVector{x, 4.0 * x.coords});
        };
        e.fn = std::move(f);
        out.push_back(std::move(e));
    }

    {  // Equal-determinant slice of the SPD cone; geodesically convex set.
        CatalogEntry e;
        e.key = "spd_det_level_set";
        e.kind = "set";
        e.model = "spd(2)";
        e.description = "D_a = {X : det X = a}, a = 3; closed under geodesics";
        e.anchor = "det(geodesic(P,Q,t)) = det(P)^(1-t) det(Q)^t = a";
        const double a = 3.0;
        e.member = [a](const ManifoldPoint& p) {
            return std::abs(p.matrix().determinant() - a) <= 1e-8 * a;
        };
        e.sample_member = [a](CounterRng& rng) {
            const ManifoldPoint p = sample_spd_logdet(rng, 2, -1.0, 1.0);
            const Eigen::MatrixXd m = p.matrix();
            return ManifoldPoint::spd(m * std::sqrt(a / m.determinant()));
        };
        out.push_back(std::move(e));
    }

    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& catalog_get(const std::string& key) {
    for (const auto& e : catalog())
        if (e.key == key) return e;
    throw std::out_of_range("catalog: unknown key '" + key + "'");
}

Rivf catalog_fn(const std::string& key) {
    const CatalogEntry& e = catalog_get(key);
    if (e.kind != "function")
        throw std::out_of_range("catalog: '" + key + "' is not a function fixture");
    return e.fn;
}

bool catalog_has(const std::string& key) {
    for (const auto& e : catalog())
        if (e.key == key) return true;
    return false;
}

}  // namespace ivo
