#pragma once

#include <Eigen/Dense>
#include <string>

#include "riskbsde/common.hpp"

namespace riskbsde::viability {

// Closed convex target set in R^n: box, ball, or a polyhedron {A y <= b}.
// Nonemptiness is certified at construction by a stored feasible point.
class ConvexSetK {
public:
    enum class Kind { Box, Ball, Polyhedron };

    static ConvexSetK box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
    static ConvexSetK ball(const Eigen::VectorXd& center, double radius);
    static ConvexSetK polyhedron(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const Eigen::VectorXd& feasible_point() const { return feasible_; }

    // Euclidean projection. Box: componentwise clamp; ball: radial pull-in;
    // polyhedron: Dykstra over halfspaces to 1e-10 (error after 1e5 sweeps).
    Eigen::VectorXd project(const Eigen::VectorXd& a) const;
    double dist_sq(const Eigen::VectorXd& a) const;
    bool contains(const Eigen::VectorXd& a, double tol = 1e-8) const;

    // Closed-form diagonal Hessian of dist_sq for boxes (entries 0 inside a
    // facet slab, 2 outside); throws for other kinds.
    Eigen::VectorXd box_hessian_diagonal(const Eigen::VectorXd& y) const;

    const Eigen::VectorXd& box_lo() const { return lo_; }
    const Eigen::VectorXd& box_hi() const { return hi_; }
    const Eigen::VectorXd& ball_center() const { return center_; }
    double ball_radius() const { return radius_; }
    const Eigen::MatrixXd& poly_A() const { return A_; }
    const Eigen::VectorXd& poly_b() const { return b_; }

    static constexpr double kProjectionTol = 1e-10;
    static constexpr int kMaxDykstraSweeps = 100000;

private:
    ConvexSetK() = default;

    Kind kind_ = Kind::Box;
    int dim_ = 0;
    Eigen::VectorXd lo_, hi_;       // box
    Eigen::VectorXd center_;        // ball
    double radius_ = 0.0;
    Eigen::MatrixXd A_;             // polyhedron rows
    Eigen::VectorXd b_;
    Eigen::VectorXd row_sq_norm_;   // cached |A_i|^2
    Eigen::VectorXd feasible_;
};

}  // namespace riskbsde::viability
