#ifndef IVO_INTERVAL_HPP
#define IVO_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ivo {

// Closed bounded interval [lo, hi]. Degenerate intervals (lo == hi) are
// first-class; endpoints must be finite.
struct Interval {
    double lo;
    double hi;

    Interval() : lo(0.0), hi(0.0) {}
    explicit Interval(double val) : lo(val), hi(val) { check(); }
    Interval(double l, double u) : lo(l), hi(u) { check(); }

    // Builds [min(a,b), max(a,b)].
    static Interval from_unordered(double a, double b) {
        return Interval(std::min(a, b), std::max(a, b));
    }

    static Interval zero() { return Interval(0.0, 0.0); }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool is_degenerate() const { return lo == hi; }
    bool contains(double v) const { return lo <= v && v <= hi; }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
    bool operator!=(const Interval& o) const { return !(*this == o); }

  private:
    void check() const {
        if (!(std::isfinite(lo) && std::isfinite(hi)))
            throw std::invalid_argument("Interval: endpoints must be finite");
        if (lo > hi)
            throw std::invalid_argument("Interval: lo > hi (" + std::to_string(lo) +
                                        " > " + std::to_string(hi) + ")");
    }
};

// Minkowski sum: [a.lo+b.lo, a.hi+b.hi].
inline Interval add(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

// Scalar multiplication; negative factors swap the endpoints.
inline Interval scale(double lambda, const Interval& a) {
    if (lambda >= 0.0) return Interval(lambda * a.lo, lambda * a.hi);
    return Interval(lambda * a.hi, lambda * a.lo);
}

// Generalized Hukuhara difference. Always exists:
//   [min{a.lo-b.lo, a.hi-b.hi}, max{a.lo-b.lo, a.hi-b.hi}].
inline Interval gh_diff(const Interval& a, const Interval& b) {
    const double dl = a.lo - b.lo;
    const double du = a.hi - b.hi;
    return Interval(std::min(dl, du), std::max(dl, du));
}

// Hausdorff metric: max of endpoint distances.
inline double hausdorff(const Interval& a, const Interval& b) {
    return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

// ||A|| = d_H(A, [0,0]) = max(|lo|, |hi|).
inline double norm(const Interval& a) {
    return std::max(std::abs(a.lo), std::abs(a.hi));
}

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator*(double lambda, const Interval& a) { return scale(lambda, a); }

// Partial order: A <= B iff both endpoints are <=; A < B additionally
// requires A != B. When neither interval dominates, the pair is
// incomparable.
enum class OrderRelation { Equal, Less, Greater, Incomparable };

inline OrderRelation compare(const Interval& a, const Interval& b) {
    if (a == b) return OrderRelation::Equal;
    if (a.lo <= b.lo && a.hi <= b.hi) return OrderRelation::Less;
    if (b.lo <= a.lo && b.hi <= a.hi) return OrderRelation::Greater;
    return OrderRelation::Incomparable;
}

inline const char* to_string(OrderRelation r) {
    switch (r) {
        case OrderRelation::Equal: return "equal";
        case OrderRelation::Less: return "less";
        case OrderRelation::Greater: return "greater";
        default: return "incomparable";
    }
}

// A precedes-or-equals B.
inline bool preceq(const Interval& a, const Interval& b) {
    const OrderRelation r = compare(a, b);
    return r == OrderRelation::Less || r == OrderRelation::Equal;
}

// A strictly precedes B.
inline bool prec(const Interval& a, const Interval& b) {
    return compare(a, b) == OrderRelation::Less;
}

// A does not strictly precede B.
inline bool nprec(const Interval& a, const Interval& b) {
    return compare(a, b) != OrderRelation::Less;
}

// Tolerance-based variants for numerically computed intervals. Exact
// comparisons above are for algebraic law checks; these absorb rounding.
inline bool eq_tol(const Interval& a, const Interval& b, double tol) {
    return hausdorff(a, b) <= tol;
}

// a <= b up to tol on both endpoints.
inline bool preceq_tol(const Interval& a, const Interval& b, double tol) {
    return a.lo <= b.lo + tol && a.hi <= b.hi + tol;
}

// a < b robustly: dominated on both endpoints within tol, strictly beyond
// tol on at least one.
inline bool prec_tol(const Interval& a, const Interval& b, double tol) {
    return a.lo <= b.lo + tol && a.hi <= b.hi + tol &&
           (a.lo < b.lo - tol || a.hi < b.hi - tol);
}

inline bool nprec_tol(const Interval& a, const Interval& b, double tol) {
    return !prec_tol(a, b, tol);
}

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << "[" << a.lo << ", " << a.hi << "]";
}

}  // namespace ivo

#endif
