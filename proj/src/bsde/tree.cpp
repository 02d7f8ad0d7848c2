#include "riskbsde/bsde/tree.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace riskbsde::bsde {

TreeModel TreeModel::from_model(const sde::DiffusionModel& model, const sde::DecisionRule& profile,
                                double t0, double T, double x0, int depth) {
    if (model.state_dim != 1)
        throw ValidationError("tree solver requires state_dim = 1");
    if (!profile.all_constant())
        throw ValidationError("tree solver requires a constant-control profile");

    Eigen::VectorXd x(1);
    x[0] = x0;
    const Eigen::VectorXd u = profile.stacked(t0, x, model);
    const double m0 = model.drift.eval(t0, x, u)(0);
    const double s0 = model.diffusion.eval(t0, x, u)(0, 0);

    for (double probe : {x0 - 1.0, x0 + 1.0, x0 + 2.5}) {
        Eigen::VectorXd xp(1);
        xp[0] = probe;
        if (std::abs(model.drift.eval(t0, xp, u)(0) - m0) > 1e-12 ||
            std::abs(model.diffusion.eval(t0, xp, u)(0, 0) - s0) > 1e-12)
            throw ValidationError(
                "tree solver requires constant drift/diffusion; coefficients vary with x");
    }

    TreeModel t;
    t.x0 = x0;
    t.t0 = t0;
    t.T = T;
    t.drift = m0;
    t.vol = s0;
    t.depth = depth;
    t.validate();
    return t;
}

namespace {

// Solves y = mean + dt * g(t, x, y, z) for Lipschitz g with K dt < 1.
// The map has slope >= 1 - K dt > 0, so the root is unique; expand a
// bracket around the seed and bisect.
double implicit_step_bisect(const gen::BsdeGenerator& g, double t, double x_node, double mean,
                            double z, double dt) {
    Eigen::VectorXd xv(1), zv(1);
    xv[0] = x_node;
    zv[0] = z;
    auto f = [&](double y) { return y - mean - dt * g.eval(t, xv, y, zv); };

    double radius = 1.0 + std::abs(mean);
    double lo = mean - radius, hi = mean + radius;
    int expand = 0;
    while (f(lo) > 0.0 || f(hi) < 0.0) {
        radius *= 2.0;
        lo = mean - radius;
        hi = mean + radius;
        if (++expand > 200) {
            std::ostringstream os;
            os << "tree bisection bracket failure at t=" << t << ", x=" << x_node;
            throw NumericalError(os.str());
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TreeSolution solve_bsde_tree(const TreeModel& tree, const gen::BsdeGenerator& g,
                             const std::vector<double>& leaf_values) {
    tree.validate();
    if (static_cast<int>(leaf_values.size()) != tree.depth + 1)
        throw ValidationError("tree: expected " + std::to_string(tree.depth + 1) + " leaf values");
    const double dt = tree.dt();
    if (g.lipschitz() * dt >= 1.0)
        throw NumericalError("tree: K_g * dt >= 1; use a deeper tree");

    const int M = tree.depth;
    const double sq_dt = std::sqrt(dt);

    TreeSolution sol;
    sol.depth = M;
    sol.Y.resize(TreeSolution::offset(M + 1));
    sol.Z.resize(TreeSolution::offset(M));
    std::copy(leaf_values.begin(), leaf_values.end(), sol.Y.begin() + TreeSolution::offset(M));

    const bool affine = g.affine_in_y();
    const double beta = g.beta_y();
    // One-step weights for the affine-in-y exact update
    //   Y = e^{beta dt} mean + psi * g(t, x, 0, Z),  psi = (e^{beta dt}-1)/beta.
    const double grow = std::exp(beta * dt);
    const double psi = beta == 0.0 ? dt : std::expm1(beta * dt) / beta;

    Eigen::VectorXd xv(1), zv(1);
    for (int k = M - 1; k >= 0; --k) {
        const double t = tree.time(k);
        const std::size_t off = TreeSolution::offset(k);
        const std::size_t off1 = TreeSolution::offset(k + 1);
        for (int i = 0; i <= k; ++i) {
            const double y_dn = sol.Y[off1 + i];
            const double y_up = sol.Y[off1 + i + 1];
            const double mean = 0.5 * (y_up + y_dn);
            const double z = (y_up - y_dn) / (2.0 * sq_dt);
            sol.Z[off + i] = z;
            const double x_node = tree.node_x(k, i);
            if (affine) {
                xv[0] = x_node;
                zv[0] = z;
                const double h = g.eval(t, xv, 0.0, zv);
                sol.Y[off + i] = grow * mean + psi * h;
            } else {
                sol.Y[off + i] = implicit_step_bisect(g, t, x_node, mean, z, dt);
            }
        }
    }
    return sol;
}

}  // namespace riskbsde::bsde
