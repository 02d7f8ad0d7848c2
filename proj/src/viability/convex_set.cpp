#include "riskbsde/viability/convex_set.hpp"

#include <cmath>
#include <sstream>

namespace riskbsde::viability {

ConvexSetK ConvexSetK::box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    if (lo.size() != hi.size() || lo.size() == 0)
        throw ValidationError("convex_set.box: bounds must be nonempty and of equal dimension");
    for (int i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i]))
            throw ValidationError("convex_set.box: lo > hi at component " + std::to_string(i));
    ConvexSetK k;
    k.kind_ = Kind::Box;
    k.dim_ = static_cast<int>(lo.size());
    k.lo_ = lo;
    k.hi_ = hi;
    k.feasible_ = 0.5 * (lo + hi);
    return k;
}

ConvexSetK ConvexSetK::ball(const Eigen::VectorXd& center, double radius) {
    if (center.size() == 0) throw ValidationError("convex_set.ball: empty center");
    if (!(radius > 0.0)) throw ValidationError("convex_set.ball: radius must be positive");
    ConvexSetK k;
    k.kind_ = Kind::Ball;
    k.dim_ = static_cast<int>(center.size());
    k.center_ = center;
    k.radius_ = radius;
    k.feasible_ = center;
    return k;
}

ConvexSetK ConvexSetK::polyhedron(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    if (A.rows() == 0 || A.cols() == 0 || A.rows() != b.size())
        throw ValidationError("convex_set.polyhedron: A and b shapes inconsistent");
    ConvexSetK k;
    k.kind_ = Kind::Polyhedron;
    k.dim_ = static_cast<int>(A.cols());
    k.A_ = A;
    k.b_ = b;
    k.row_sq_norm_ = A.rowwise().squaredNorm();
    for (int i = 0; i < A.rows(); ++i)
        if (k.row_sq_norm_[i] <= 0.0)
            throw ValidationError("convex_set.polyhedron: zero row in A");
    // Certify nonemptiness: project the origin; Dykstra converges to the
    // projection onto the intersection when it is nonempty.
    k.feasible_ = k.project(Eigen::VectorXd::Zero(k.dim_));
    double worst = 0.0;
    for (int i = 0; i < A.rows(); ++i)
        worst = std::max(worst, (A.row(i).dot(k.feasible_) - b[i]) / std::sqrt(k.row_sq_norm_[i]));
    if (worst > 1e-6)
        throw ValidationError("convex_set.polyhedron: could not certify a feasible point "
                              "(residual above 1e-6); set may be empty");
    return k;
}

Eigen::VectorXd ConvexSetK::project(const Eigen::VectorXd& a) const {
    if (a.size() != dim_) throw ValidationError("project: point dimension mismatch");
    if (!a.allFinite()) throw ValidationError("project: point must be finite");
    switch (kind_) {
        case Kind::Box:
            return a.cwiseMax(lo_).cwiseMin(hi_);
        case Kind::Ball: {
            const Eigen::VectorXd r = a - center_;
            const double nr = r.norm();
            if (nr <= radius_) return a;
            return center_ + (radius_ / nr) * r;
        }
        case Kind::Polyhedron: {
            // Dykstra's alternating projections over the halfspaces.
            const int m = static_cast<int>(A_.rows());
            Eigen::VectorXd x = a;
            Eigen::MatrixXd corrections = Eigen::MatrixXd::Zero(dim_, m);
            for (int sweep = 0; sweep < kMaxDykstraSweeps; ++sweep) {
                double max_move = 0.0;
                for (int i = 0; i < m; ++i) {
                    const Eigen::VectorXd y = x + corrections.col(i);
                    const double excess = A_.row(i).dot(y) - b_[i];
                    Eigen::VectorXd proj = y;
                    if (excess > 0.0) proj -= (excess / row_sq_norm_[i]) * A_.row(i).transpose();
                    corrections.col(i) = y - proj;
                    max_move = std::max(max_move, (proj - x).norm());
                    x = proj;
                }
                double violation = 0.0;
                for (int i = 0; i < m; ++i)
                    violation = std::max(violation, A_.row(i).dot(x) - b_[i]);
                if (max_move < kProjectionTol && violation < kProjectionTol) return x;
            }
            std::ostringstream os;
            double violation = 0.0;
            for (int i = 0; i < m; ++i) violation = std::max(violation, A_.row(i).dot(x) - b_[i]);
            os << "polyhedron projection: Dykstra did not converge in " << kMaxDykstraSweeps
               << " sweeps (residual " << violation << ")";
            throw NumericalError(os.str());
        }
    }
    return a;
}

double ConvexSetK::dist_sq(const Eigen::VectorXd& a) const {
    return (a - project(a)).squaredNorm();
}

bool ConvexSetK::contains(const Eigen::VectorXd& a, double tol) const {
    return dist_sq(a) <= tol * tol;
}

Eigen::VectorXd ConvexSetK::box_hessian_diagonal(const Eigen::VectorXd& y) const {
    if (kind_ != Kind::Box)
        throw ValidationError("box_hessian_diagonal: set is not a box");
    Eigen::VectorXd h(dim_);
    for (int i = 0; i < dim_; ++i) h[i] = (y[i] < lo_[i] || y[i] > hi_[i]) ? 2.0 : 0.0;
    return h;
}

}  // namespace riskbsde::viability
