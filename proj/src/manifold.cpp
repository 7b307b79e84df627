#include "ivo/manifold.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace ivo {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void require_same_model(const ManifoldModel& a, const ManifoldModel& b) {
    require(a == b, "manifold: model mismatch");
}

void require_same_base(const TangentVector& u, const TangentVector& v) {
    require_same_model(u.base.model, v.base.model);
    require((u.base.coords - v.base.coords).lpNorm<Eigen::Infinity>() <= 1e-9,
            "manifold: tangent base mismatch");
}

Eigen::MatrixXd unflatten(const Eigen::VectorXd& c, int n) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = c(i * n + j);
    return m;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd c(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i * n + j) = m(i, j);
    return c;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
    return 0.5 * (m + m.transpose());
}

// Spectral map f(A) = Q f(L) Q^T for symmetric A. `need_positive` rejects
// spectra at or below spd_tol instead of clamping.
template <typename Fn>
Eigen::MatrixXd spectral_apply(const Eigen::MatrixXd& a, Fn&& f, bool need_positive,
                               double spd_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(a));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("manifold: symmetric eigendecomposition failed");
    Eigen::VectorXd lam = es.eigenvalues();
    if (need_positive && lam.minCoeff() <= spd_tol)
        throw std::domain_error("manifold: matrix not positive definite (eigmin <= spd_tol)");
    for (int i = 0; i < lam.size(); ++i) lam(i) = f(lam(i));
    return symmetrize(es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose());
}

}  // namespace

// --- model ------------------------------------------------------------------

ManifoldModel ManifoldModel::euclidean(int n) {
    if (n < 1) throw std::invalid_argument("manifold: n must be >= 1");
    return {ModelKind::Euclidean, n};
}
ManifoldModel ManifoldModel::positive_reals() { return {ModelKind::PositiveReals, 1}; }
ManifoldModel ManifoldModel::spd(int n) {
    if (n < 1) throw std::invalid_argument("manifold: n must be >= 1");
    return {ModelKind::Spd, n};
}
ManifoldModel ManifoldModel::hyperbolic(int n) {
    if (n < 1) throw std::invalid_argument("manifold: n must be >= 1");
    return {ModelKind::Hyperbolic, n};
}

int ManifoldModel::ambient_dim() const {
    switch (kind) {
        case ModelKind::Euclidean: return n;
        case ModelKind::PositiveReals: return 1;
        case ModelKind::Spd: return n * n;
        default: return n + 1;
    }
}

int ManifoldModel::intrinsic_dim() const {
    switch (kind) {
        case ModelKind::Euclidean: return n;
        case ModelKind::PositiveReals: return 1;
        case ModelKind::Spd: return n * (n + 1) / 2;
        default: return n;
    }
}

std::string ManifoldModel::name() const {
    switch (kind) {
        case ModelKind::Euclidean: return "euclidean(" + std::to_string(n) + ")";
        case ModelKind::PositiveReals: return "posreals";
        case ModelKind::Spd: return "spd(" + std::to_string(n) + ")";
        default: return "hyperbolic(" + std::to_string(n) + ")";
    }
}

// --- points and tangents ------------------------------------------------------

ManifoldPoint::ManifoldPoint(ManifoldModel m, Eigen::VectorXd c)
    : model(m), coords(std::move(c)) {
    require(coords.size() == model.ambient_dim(), "manifold: coordinate size mismatch");
}

Eigen::MatrixXd ManifoldPoint::matrix() const {
    require(model.kind == ModelKind::Spd, "manifold: matrix() is SPD-only");
    return unflatten(coords, model.n);
}

double ManifoldPoint::scalar() const {
    require(model.kind == ModelKind::PositiveReals, "manifold: scalar() is posreals-only");
    return coords(0);
}

ManifoldPoint ManifoldPoint::euclidean(const Eigen::VectorXd& x) {
    return {ManifoldModel::euclidean(static_cast<int>(x.size())), x};
}
ManifoldPoint ManifoldPoint::positive_real(double x) {
    Eigen::VectorXd c(1);
    c(0) = x;
    return {ManifoldModel::positive_reals(), c};
}
ManifoldPoint ManifoldPoint::spd(const Eigen::MatrixXd& x) {
    require(x.rows() == x.cols(), "manifold: SPD point must be square");
    return {ManifoldModel::spd(static_cast<int>(x.rows())), flatten(x)};
}
ManifoldPoint ManifoldPoint::hyperbolic(const Eigen::VectorXd& x) {
    require(x.size() >= 2, "manifold: hyperboloid needs >= 2 ambient coords");
    return {ManifoldModel::hyperbolic(static_cast<int>(x.size()) - 1), x};
}

TangentVector::TangentVector(ManifoldPoint at, Eigen::VectorXd c)
    : base(std::move(at)), coords(std::move(c)) {
    require(coords.size() == base.model.ambient_dim(), "manifold: tangent size mismatch");
}

Eigen::MatrixXd TangentVector::matrix() const {
    require(base.model.kind == ModelKind::Spd, "manifold: matrix() is SPD-only");
    return unflatten(coords, base.model.n);
}

double TangentVector::scalar() const {
    require(base.model.kind == ModelKind::PositiveReals, "manifold: scalar() is posreals-only");
    return coords(0);
}

// --- SPD matrix functions -----------------------------------------------------

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a, double spd_tol) {
    return spectral_apply(a, [](double l) { return std::sqrt(l); }, true, spd_tol);
}
Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& a, double spd_tol) {
    return spectral_apply(a, [](double l) { return 1.0 / std::sqrt(l); }, true, spd_tol);
}
Eigen::MatrixXd spd_log(const Eigen::MatrixXd& a, double spd_tol) {
    return spectral_apply(a, [](double l) { return std::log(l); }, true, spd_tol);
}
Eigen::MatrixXd spd_pow(const Eigen::MatrixXd& a, double t, double spd_tol) {
    return spectral_apply(a, [t](double l) { return std::pow(l, t); }, true, spd_tol);
}
Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& a) {
    return spectral_apply(a, [](double l) { return std::exp(l); }, false, 0.0);
}

double minkowski(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    require(a.size() == b.size(), "manifold: Minkowski product size mismatch");
    return -a(0) * b(0) + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

// --- metric -------------------------------------------------------------------

double inner(const ManifoldPoint& x, const TangentVector& u, const TangentVector& v) {
    require_same_model(x.model, u.base.model);
    require_same_base(u, v);
    switch (x.model.kind) {
        case ModelKind::Euclidean:
            return u.coords.dot(v.coords);
        case ModelKind::PositiveReals: {
            const double p = x.scalar();
            return u.coords(0) * v.coords(0) / (p * p);
        }
        case ModelKind::Spd: {
            const Eigen::MatrixXd a = x.matrix();
            Eigen::LLT<Eigen::MatrixXd> llt(a);
            if (llt.info() != Eigen::Success)
                throw std::domain_error("manifold: SPD metric at non-SPD point");
            const Eigen::MatrixXd w1 = llt.solve(u.matrix());
            const Eigen::MatrixXd w2 = llt.solve(v.matrix());
            return (w1 * w2).trace();
        }
        default:
            return minkowski(u.coords, v.coords);
    }
}

double tangent_norm(const ManifoldPoint& x, const TangentVector& v) {
    const double q = inner(x, v, v);
    return std::sqrt(std::max(q, 0.0));
}

// --- exponential map ------------------------------------------------------------

ManifoldPoint exp_map(const ManifoldPoint& x, const TangentVector& v) {
    require_same_model(x.model, v.base.model);
    switch (x.model.kind) {
        case ModelKind::Euclidean:
            return {x.model, x.coords + v.coords};
        case ModelKind::PositiveReals: {
            const double p = x.scalar();
            require(p > 0.0, "manifold: posreals point must be positive");
            return ManifoldPoint::positive_real(p * std::exp(v.coords(0) / p));
        }
        case ModelKind::Spd: {
            const Eigen::MatrixXd xm = x.matrix();
            const Eigen::MatrixXd rx = spd_sqrt(xm);
            const Eigen::MatrixXd rxi = spd_inv_sqrt(xm);
            const Eigen::MatrixXd s = symmetrize(rxi * v.matrix() * rxi);
            return ManifoldPoint::spd(symmetrize(rx * sym_exp(s) * rx));
        }
        default: {
            const double q = minkowski(v.coords, v.coords);
            const double nv = std::sqrt(std::max(q, 0.0));
            if (nv < 1e-14) return {x.model, x.coords + v.coords};
            const Eigen::VectorXd y =
                std::cosh(nv) * x.coords + (std::sinh(nv) / nv) * v.coords;
            return {x.model, y};
        }
    }
}

TangentVector log_map(const ManifoldPoint& x, const ManifoldPoint& y) {
    require_same_model(x.model, y.model);
    switch (x.model.kind) {
        case ModelKind::Euclidean:
            return {x, y.coords - x.coords};
        case ModelKind::PositiveReals: {
            const double p = x.scalar();
            const double q = y.scalar();
            require(p > 0.0 && q > 0.0, "manifold: posreals point must be positive");
            Eigen::VectorXd c(1);
            c(0) = p * std::log(q / p);
            return {x, c};
        }
        case ModelKind::Spd: {
            const Eigen::MatrixXd xm = x.matrix();
            const Eigen::MatrixXd rx = spd_sqrt(xm);
            const Eigen::MatrixXd rxi = spd_inv_sqrt(xm);
            const Eigen::MatrixXd s = symmetrize(rxi * y.matrix() * rxi);
            const Eigen::MatrixXd l = spd_log(s);
            return {x, flatten(symmetrize(rx * l * rx))};
        }
        default: {
            const double c = std::max(-minkowski(x.coords, y.coords), 1.0);
            const Eigen::VectorXd u = y.coords - c * x.coords;
            const double sh = std::sqrt(std::max(c * c - 1.0, 0.0));  // sinh(d)
            if (sh < 1e-12) return {x, u};  // d/sinh(d) -> 1
            const double d = std::acosh(c);
            return {x, (d / sh) * u};
        }
    }
}

ManifoldPoint geodesic(const ManifoldPoint& x, const ManifoldPoint& y, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::out_of_range("manifold: geodesic parameter outside [0,1]");
    return exp_map(x, tangent_scale(t, log_map(x, y)));
}

double dist(const ManifoldPoint& x, const ManifoldPoint& y) {
    return tangent_norm(x, log_map(x, y));
}

// --- tangent helpers -------------------------------------------------------------

TangentVector zero_tangent(const ManifoldPoint& x) {
    return {x, Eigen::VectorXd::Zero(x.model.ambient_dim())};
}

TangentVector tangent_scale(double lambda, const TangentVector& v) {
    return {v.base, lambda * v.coords};
}

TangentVector tangent_add(const TangentVector& u, const TangentVector& v) {
    require_same_base(u, v);
    return {u.base, u.coords + v.coords};
}

std::vector<TangentVector> orthonormal_basis(const ManifoldPoint& x) {
    const int adim = x.model.ambient_dim();
    const int idim = x.model.intrinsic_dim();

    // Canonical ambient directions projected into T_x.
    std::vector<Eigen::VectorXd> raw;
    switch (x.model.kind) {
        case ModelKind::Spd: {
            const int n = x.model.n;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
                    e(i, j) = e(j, i) = (i == j) ? 1.0 : M_SQRT1_2;
                    raw.push_back(flatten(e));
                }
            break;
        }
        case ModelKind::Hyperbolic: {
            for (int i = 0; i < adim; ++i) {
                Eigen::VectorXd e = Eigen::VectorXd::Unit(adim, i);
                // Minkowski projection onto T_x.
                raw.push_back(e + minkowski(x.coords, e) * x.coords);
            }
            break;
        }
        default: {
            for (int i = 0; i < adim; ++i) raw.push_back(Eigen::VectorXd::Unit(adim, i));
            break;
        }
    }

    std::vector<TangentVector> basis;
    for (const auto& c : raw) {
        TangentVector v{x, c};
        for (const auto& b : basis)
            v = tangent_add(v, tangent_scale(-inner(x, v, b), b));
        const double nv = tangent_norm(x, v);
        if (nv > 1e-10) {
            basis.push_back(tangent_scale(1.0 / nv, v));
            if (static_cast<int>(basis.size()) == idim) break;
        }
    }
    if (static_cast<int>(basis.size()) != idim)
        throw std::runtime_error("manifold: failed to build an orthonormal tangent basis");
    return basis;
}

// --- sampling ----------------------------------------------------------------------

ManifoldPoint sample_point(const ManifoldModel& model, CounterRng& rng, double spread) {
    require(spread > 0.0, "manifold: spread must be positive");
    switch (model.kind) {
        case ModelKind::Euclidean: {
            Eigen::VectorXd c(model.n);
            for (int i = 0; i < model.n; ++i) c(i) = spread * rng.normal();
            return {model, c};
        }
        case ModelKind::PositiveReals:
            return ManifoldPoint::positive_real(std::exp(spread * rng.normal()));
        case ModelKind::Spd: {
            const int n = model.n;
            Eigen::MatrixXd g(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
            Eigen::MatrixXd q = qr.householderQ();
            const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
            for (int i = 0; i < n; ++i)
                if (r(i, i) < 0) q.col(i) *= -1.0;  // deterministic sign convention
            Eigen::VectorXd lam(n);
            for (int i = 0; i < n; ++i) lam(i) = std::exp(rng.uniform(-spread, spread));
            return ManifoldPoint::spd(symmetrize(q * lam.asDiagonal() * q.transpose()));
        }
        default: {
            Eigen::VectorXd base = Eigen::VectorXd::Zero(model.n + 1);
            base(0) = 1.0;
            ManifoldPoint origin{model, base};
            Eigen::VectorXd w = Eigen::VectorXd::Zero(model.n + 1);
            for (int i = 1; i <= model.n; ++i) w(i) = spread * rng.normal();
            return exp_map(origin, TangentVector{origin, w});
        }
    }
}

TangentVector sample_tangent(const ManifoldPoint& x, CounterRng& rng, double radius) {
    require(radius >= 0.0, "manifold: radius must be nonnegative");
    const int adim = x.model.ambient_dim();
    Eigen::VectorXd w(adim);
    for (int i = 0; i < adim; ++i) w(i) = rng.normal();

    TangentVector v = zero_tangent(x);
    switch (x.model.kind) {
        case ModelKind::Spd: {
            const int n = x.model.n;
            v.coords = flatten(symmetrize(unflatten(w, n)));
            break;
        }
        case ModelKind::Hyperbolic:
            v.coords = w + minkowski(x.coords, w) * x.coords;
            break;
        default:
            v.coords = w;
            break;
    }
    const double nv = tangent_norm(x, v);
    if (radius == 0.0 || nv < 1e-14) return zero_tangent(x);
    return tangent_scale(radius / nv, v);
}

// --- validation ----------------------------------------------------------------------

CheckReport validate(const ManifoldPoint& x, const ManifoldTolerances& tol) {
    CheckReport rep;
    rep.name = "manifold/validate_point";
    rep.anchor = "point invariants for " + x.model.name();
    rep.verdict = Verdict::Pass;
    auto fail = [&](const std::string& what, double residual) {
        Witness w;
        w.what = what;
        w.residual = residual;
        w.data.assign(x.coords.data(), x.coords.data() + x.coords.size());
        rep.fail_with(std::move(w));
    };

    if (!x.coords.allFinite()) {
        fail("coordinates not finite", 0.0);
        return rep;
    }
    switch (x.model.kind) {
        case ModelKind::Euclidean:
            break;
        case ModelKind::PositiveReals: {
            rep.stats["coord"] = x.coords(0);
            if (!(x.coords(0) > 0.0)) fail("posreals coordinate must be > 0", -x.coords(0));
            break;
        }
        case ModelKind::Spd: {
            const Eigen::MatrixXd m = x.matrix();
            const double sym_defect = (m - m.transpose()).lpNorm<Eigen::Infinity>();
            rep.stats["sym_defect"] = sym_defect;
            if (sym_defect > tol.sym_tol) fail("symmetry defect above sym_tol", sym_defect);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(m));
            const double eigmin = es.eigenvalues().minCoeff();
            rep.stats["eigmin"] = eigmin;
            if (!(eigmin > tol.spd_tol)) fail("eigmin <= spd_tol", tol.spd_tol - eigmin);
            break;
        }
        default: {
            const double q = minkowski(x.coords, x.coords);
            const double defect = std::abs(q + 1.0);
            rep.stats["constraint_defect"] = defect;
            if (defect > tol.hyp_tol) fail("hyperboloid constraint violated", defect);
            if (!(x.coords(0) > 0.0)) fail("hyperboloid sheet requires x0 > 0", -x.coords(0));
            break;
        }
    }
    rep.observe_residual(0.0);
    return rep;
}

CheckReport validate_tangent(const TangentVector& v, const ManifoldTolerances& tol) {
    CheckReport rep;
    rep.name = "manifold/validate_tangent";
    rep.anchor = "tangent invariants for " + v.base.model.name();
    rep.verdict = Verdict::Pass;
    auto fail = [&](const std::string& what, double residual) {
        Witness w;
        w.what = what;
        w.residual = residual;
        w.data.assign(v.coords.data(), v.coords.data() + v.coords.size());
        rep.fail_with(std::move(w));
    };

    if (!v.coords.allFinite()) {
        fail("coordinates not finite", 0.0);
        return rep;
    }
    switch (v.base.model.kind) {
        case ModelKind::Spd: {
            const Eigen::MatrixXd m = v.matrix();
            const double sym_defect = (m - m.transpose()).lpNorm<Eigen::Infinity>();
            rep.stats["sym_defect"] = sym_defect;
            if (sym_defect > tol.sym_tol) fail("tangent symmetry defect above sym_tol", sym_defect);
            break;
        }
        case ModelKind::Hyperbolic: {
            const double t = std::abs(minkowski(v.base.coords, v.coords));
            rep.stats["tangency_defect"] = t;
            if (t > tol.hyp_tol) fail("tangent not Minkowski-orthogonal to base", t);
            break;
        }
        default:
            break;
    }
    return rep;
}

}  // namespace ivo
