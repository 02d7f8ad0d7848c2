#pragma once

#include "riskbsde/gen/risk_cost.hpp"
#include "riskbsde/hjb/grid.hpp"

namespace riskbsde::hjb {

struct HjbGridSpec {
    SpatialGrid space;
    int time_steps = 100;
    int control_resolution = 33;  // points per control dimension
    bool auto_time_refine = false;
    // Freeze a per-agent constant control used wherever no frozen profile
    // row is supplied (defaults to each box midpoint).
    std::vector<Eigen::VectorXd> default_controls;
};

struct HjbResult {
    ValueGrid value;
    PolicyGrid policy;
    HjbDiagnostics diagnostics;
};

// Explicit monotone finite-difference solve of the coupled semilinear
// system, backward in time: central second differences, drift-upwinded
// first differences, one-sided second-order stencils at the domain
// boundary, and a per-node minimization of
//     L^{u} phi_j + c_j(t, x, u_j) + g(t, phi_j, D phi_j . sigma)
// over the discretized control box of each active agent (other agents
// frozen). Inactive agents evolve under their frozen controls. Refuses
// (with the required M_t) when the CFL bound fails unless
// auto_time_refine is set.
HjbResult solve_hjb_system(const sde::DiffusionModel& model, const gen::RiskCostSpec& costs,
                           const gen::GeneratorFunctional& g, const PolicyGrid* frozen,
                           const std::vector<int>& active_agents, double t0, double T,
                           const HjbGridSpec& spec);

// Node-wise argmin of the solved-value objective for one agent, ties
// broken to the lexicographically smallest control. Returns the policy
// row on the value grid's mesh and argmin-gap diagnostics.
struct PolicyRow {
    std::vector<double> u;  // (Mt+1) x total x m_j
    double min_argmin_gap = 0.0;
    long tie_count = 0;
};
PolicyRow extract_policy(const ValueGrid& grid, const sde::DiffusionModel& model,
                         const gen::RiskCostSpec& costs, const gen::GeneratorFunctional& g,
                         const PolicyGrid& frozen, int agent, int control_resolution);

// Uniform per-agent control grid in lexicographic (row-major) order.
std::vector<Eigen::VectorXd> control_grid(const sde::Box& box, int resolution);

}  // namespace riskbsde::hjb
