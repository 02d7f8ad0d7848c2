#include "riskbsde/hjb/grid.hpp"

#include <algorithm>
#include <cmath>

namespace riskbsde::hjb {

namespace {

// Clamped cell, offset pair for linear interpolation along one axis.
struct Cell {
    int i0;
    double w;  // weight of i0+1
};

Cell locate(double v, double lo, double dx, int nodes) {
    double s = (v - lo) / dx;
    s = std::clamp(s, 0.0, static_cast<double>(nodes - 1));
    int i0 = std::min(static_cast<int>(s), nodes - 2);
    if (nodes == 1) return {0, 0.0};
    return {i0, s - i0};
}

}  // namespace

double ValueGrid::value(int j, double t, const Eigen::VectorXd& x) const {
    const double dt = time.dt();
    double s = (t - time.t0) / dt;
    s = std::clamp(s, 0.0, static_cast<double>(time.steps));
    const int k0 = std::min(static_cast<int>(s), time.steps - 1);
    const double wt = time.steps == 0 ? 0.0 : s - k0;

    auto spatial = [&](int k) {
        const double* ph = slab(k, j);
        const Cell cx = locate(x[0], space.lo[0], space.dx(0), space.nodes[0]);
        if (space.d == 1) {
            const double a = ph[cx.i0];
            const double b = ph[std::min(cx.i0 + 1, space.nodes[0] - 1)];
            return a + cx.w * (b - a);
        }
        const Cell cy = locate(x[1], space.lo[1], space.dx(1), space.nodes[1]);
        const int ix1 = std::min(cx.i0 + 1, space.nodes[0] - 1);
        const int iy1 = std::min(cy.i0 + 1, space.nodes[1] - 1);
        const double v00 = ph[space.flat(cx.i0, cy.i0)];
        const double v01 = ph[space.flat(cx.i0, iy1)];
        const double v10 = ph[space.flat(ix1, cy.i0)];
        const double v11 = ph[space.flat(ix1, iy1)];
        const double a = v00 + cy.w * (v01 - v00);
        const double b = v10 + cy.w * (v11 - v10);
        return a + cx.w * (b - a);
    };
    const double v0 = spatial(k0);
    if (wt == 0.0) return v0;
    return v0 + wt * (spatial(k0 + 1) - v0);
}

Eigen::VectorXd ValueGrid::value_vector(double t, const Eigen::VectorXd& x) const {
    Eigen::VectorXd v(num_agents);
    for (int j = 0; j < num_agents; ++j) v[j] = value(j, t, x);
    return v;
}

Eigen::VectorXd PolicyGrid::control_at(int j, double t, const Eigen::VectorXd& x) const {
    const double dt = time.dt();
    int k = static_cast<int>(std::lround((t - time.t0) / dt));
    k = std::clamp(k, 0, time.steps);
    const Cell cx = locate(x[0], space.lo[0], space.dx(0), space.nodes[0]);
    int ixn = cx.w > 0.5 ? cx.i0 + 1 : cx.i0;
    ixn = std::clamp(ixn, 0, space.nodes[0] - 1);
    int node = ixn;
    if (space.d == 2) {
        const Cell cy = locate(x[1], space.lo[1], space.dx(1), space.nodes[1]);
        int iyn = cy.w > 0.5 ? cy.i0 + 1 : cy.i0;
        iyn = std::clamp(iyn, 0, space.nodes[1] - 1);
        node = space.flat(ixn, iyn);
    }
    return control(j, k, node);
}

}  // namespace riskbsde::hjb
