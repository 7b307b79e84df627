#ifndef IVO_MANIFOLD_HPP
#define IVO_MANIFOLD_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ivo/check.hpp"
#include "ivo/rng.hpp"

namespace ivo {

// Four concrete Hadamard models behind one value-semantics interface:
//   Euclidean R^n, the positive reals with the u*v/x^2 metric, symmetric
//   positive definite matrices with the affine-invariant metric, and the
//   hyperboloid model of hyperbolic n-space.
enum class ModelKind { Euclidean, PositiveReals, Spd, Hyperbolic };

struct ManifoldModel {
    ModelKind kind = ModelKind::Euclidean;
    int n = 1;  // R^n | unused | n x n matrices | hyperboloid in R^(n+1)

    static ManifoldModel euclidean(int n);
    static ManifoldModel positive_reals();
    static ManifoldModel spd(int n);
    static ManifoldModel hyperbolic(int n);

    // Length of the coordinate vector backing points and tangents.
    int ambient_dim() const;
    // Dimension of the tangent space as a vector space.
    int intrinsic_dim() const;

    std::string name() const;

    bool operator==(const ManifoldModel& o) const { return kind == o.kind && n == o.n; }
    bool operator!=(const ManifoldModel& o) const { return !(*this == o); }
};

// Point coordinates: R^n vector | positive scalar | n x n matrix (flattened)
// | (n+1)-vector on the hyperboloid sheet.
struct ManifoldPoint {
    ManifoldModel model;
    Eigen::VectorXd coords;

    ManifoldPoint() = default;
    ManifoldPoint(ManifoldModel m, Eigen::VectorXd c);

    // SPD only: coords viewed as the matrix they flatten.
    Eigen::MatrixXd matrix() const;
    double scalar() const;  // PositiveReals only

    static ManifoldPoint euclidean(const Eigen::VectorXd& x);
    static ManifoldPoint positive_real(double x);
    static ManifoldPoint spd(const Eigen::MatrixXd& x);
    static ManifoldPoint hyperbolic(const Eigen::VectorXd& x);
};

struct TangentVector {
    ManifoldPoint base;
    Eigen::VectorXd coords;

    TangentVector() = default;
    TangentVector(ManifoldPoint at, Eigen::VectorXd c);

    Eigen::MatrixXd matrix() const;  // SPD only
    double scalar() const;           // PositiveReals only
};

// Validation tolerances; unit-scale data. Points failing these are rejected
// by the kernels rather than projected back.
struct ManifoldTolerances {
    double spd_tol = 1e-10;  // smallest admissible eigenvalue
    double sym_tol = 1e-10;  // max-norm symmetry defect
    double hyp_tol = 1e-10;  // hyperboloid constraint / tangency defect
};

// --- Riemannian kernels -----------------------------------------------------

double inner(const ManifoldPoint& x, const TangentVector& u, const TangentVector& v);
double tangent_norm(const ManifoldPoint& x, const TangentVector& v);

ManifoldPoint exp_map(const ManifoldPoint& x, const TangentVector& v);
TangentVector log_map(const ManifoldPoint& x, const ManifoldPoint& y);

// exp_x(t * log_x(y)); t must lie in [0, 1].
ManifoldPoint geodesic(const ManifoldPoint& x, const ManifoldPoint& y, double t);

double dist(const ManifoldPoint& x, const ManifoldPoint& y);

// --- tangent-space helpers --------------------------------------------------

TangentVector zero_tangent(const ManifoldPoint& x);
TangentVector tangent_scale(double lambda, const TangentVector& v);
TangentVector tangent_add(const TangentVector& u, const TangentVector& v);

// Basis of T_x, orthonormal under the point's metric (Gram-Schmidt over the
// projected canonical ambient directions).
std::vector<TangentVector> orthonormal_basis(const ManifoldPoint& x);

// --- sampling and validation -------------------------------------------------

ManifoldPoint sample_point(const ManifoldModel& model, CounterRng& rng, double spread);
// Isotropic direction rescaled to the requested metric norm.
TangentVector sample_tangent(const ManifoldPoint& x, CounterRng& rng, double radius);

CheckReport validate(const ManifoldPoint& x, const ManifoldTolerances& tol = {});
CheckReport validate_tangent(const TangentVector& v, const ManifoldTolerances& tol = {});

// --- SPD matrix functions (symmetric eigendecomposition) ---------------------

// All reject inputs whose smallest eigenvalue is <= spd_tol.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a, double spd_tol = 1e-10);
Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& a, double spd_tol = 1e-10);
Eigen::MatrixXd spd_log(const Eigen::MatrixXd& a, double spd_tol = 1e-10);
Eigen::MatrixXd spd_pow(const Eigen::MatrixXd& a, double t, double spd_tol = 1e-10);
Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& a);  // matrix exponential of a symmetric matrix

double minkowski(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace ivo

#endif
