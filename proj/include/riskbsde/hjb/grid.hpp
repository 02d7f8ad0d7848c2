#pragma once

#include <array>
#include <string>
#include <vector>

#include "riskbsde/sde/model.hpp"

namespace riskbsde::hjb {

// Uniform spatial grid on a box, d in {1, 2}. Nodes are flat-indexed
// row-major: node = ix * nodes[1] + iy (nodes[1] = 1 when d = 1).
struct SpatialGrid {
    int d = 1;
    Eigen::VectorXd lo, hi;
    std::array<int, 2> nodes = {2, 1};

    int total() const { return nodes[0] * nodes[1]; }
    double dx(int i) const { return (hi[i] - lo[i]) / (nodes[i] - 1); }
    int ix(int node) const { return node / nodes[1]; }
    int iy(int node) const { return node % nodes[1]; }
    int flat(int i, int j) const { return i * nodes[1] + j; }
    Eigen::VectorXd point(int node) const {
        Eigen::VectorXd x(d);
        x[0] = lo[0] + ix(node) * dx(0);
        if (d == 2) x[1] = lo[1] + iy(node) * dx(1);
        return x;
    }
    void validate() const {
        if (d < 1 || d > 2) throw ValidationError("hjb grid: state dimension must be 1 or 2");
        if (lo.size() != d || hi.size() != d)
            throw ValidationError("hjb grid: domain bounds must match dimension");
        for (int i = 0; i < d; ++i) {
            if (!(lo[i] < hi[i])) throw ValidationError("hjb grid: empty domain box");
            if (nodes[i] < 4)
                throw ValidationError("hjb grid: at least 4 nodes per dimension required");
        }
        if (d == 1 && nodes[1] != 1) throw ValidationError("hjb grid: nodes[1] must be 1 for d=1");
    }
};

// phi_j(t_k, x_node) for all agents; slab (k, j) is contiguous over nodes.
struct ValueGrid {
    SpatialGrid space;
    sde::TimeGrid time;
    int num_agents = 1;
    std::vector<double> phi;
    std::string boundary_tag = "one-sided-second-order";

    std::size_t index(int k, int j, int node) const {
        return (static_cast<std::size_t>(k) * num_agents + j) * space.total() + node;
    }
    double at(int k, int j, int node) const { return phi[index(k, j, node)]; }
    double& at(int k, int j, int node) { return phi[index(k, j, node)]; }
    const double* slab(int k, int j) const { return phi.data() + index(k, j, 0); }
    double* slab(int k, int j) { return phi.data() + index(k, j, 0); }

    // Bilinear in space, linear in time.
    double value(int j, double t, const Eigen::VectorXd& x) const;
    Eigen::VectorXd value_vector(double t, const Eigen::VectorXd& x) const;
};

// Per-agent feedback controls on the same grid.
struct PolicyGrid {
    SpatialGrid space;
    sde::TimeGrid time;
    std::vector<int> control_dims;
    std::vector<std::vector<double>> u;  // per agent: (Mt+1) x total x m_j

    void allocate(const SpatialGrid& s, const sde::TimeGrid& t, const std::vector<int>& dims) {
        space = s;
        time = t;
        control_dims = dims;
        u.assign(dims.size(), {});
        for (std::size_t j = 0; j < dims.size(); ++j)
            u[j].assign(static_cast<std::size_t>(t.steps + 1) * s.total() * dims[j], 0.0);
    }
    std::size_t index(int j, int k, int node, int c = 0) const {
        return (static_cast<std::size_t>(k) * space.total() + node) * control_dims[j] + c;
    }
    Eigen::VectorXd control(int j, int k, int node) const {
        Eigen::VectorXd v(control_dims[j]);
        for (int c = 0; c < control_dims[j]; ++c) v[c] = u[j][index(j, k, node, c)];
        return v;
    }
    void set_control(int j, int k, int node, const Eigen::VectorXd& v) {
        for (int c = 0; c < control_dims[j]; ++c) u[j][index(j, k, node, c)] = v[c];
    }
    // Nearest-node feedback lookup (clamped to the domain).
    Eigen::VectorXd control_at(int j, double t, const Eigen::VectorXd& x) const;

    double max_abs_difference(const PolicyGrid& other) const {
        double m = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j)
            for (std::size_t i = 0; i < u[j].size(); ++i)
                m = std::max(m, std::abs(u[j][i] - other.u[j][i]));
        return m;
    }
    double max_abs_difference_agent(const PolicyGrid& other, int j) const {
        double m = 0.0;
        for (std::size_t i = 0; i < u[j].size(); ++i)
            m = std::max(m, std::abs(u[j][i] - other.u[j][i]));
        return m;
    }
};

struct HjbDiagnostics {
    double cfl_number = 0.0;       // of the accepted step
    int required_steps = 0;        // CFL-implied minimum M_t
    int solved_steps = 0;
    bool auto_refined = false;
    double max_residual = 0.0;     // discrete-equation residual on sampled slabs
    double min_argmin_gap = 0.0;   // best-vs-second-best objective gap, min over nodes
    long tie_count = 0;            // argmin gaps below 1e-9
};

}  // namespace riskbsde::hjb
