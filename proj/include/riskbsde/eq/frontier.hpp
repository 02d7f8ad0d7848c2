#pragma once

#include "riskbsde/eq/equilibrium.hpp"
#include "riskbsde/eq/pareto.hpp"

namespace riskbsde::eq {

// One simplex weight vector with its induced targets and equilibrium risk.
struct AllocationPoint {
    Eigen::VectorXd alpha;                    // on the n-simplex
    std::vector<gen::TerminalField> targets;  // Psi_j = alpha_j L
    Eigen::VectorXd risk;                     // rho_j at (t0, x0)
    bool pareto = false;
    bool solved = false;
    std::string error;  // per-alpha failure, recorded and skipped
    int sweeps = 0;
    bool converged = false;
    double reconstruction_error = 0.0;  // max probe |sum_j Psi_j(x) - L(x)|
};

struct FrontierConfig {
    int resolution = 10;  // alpha_j = k_j / resolution
    Eigen::VectorXd x0;
    double t0 = 0.0;
    double T = 1.0;
    EquilibriumConfig equilibrium;
};

// Enumerates the simplex grid, splits the aggregate terminal exposure L
// proportionally (Psi_j = alpha_j L, so the shares add back to L), runs
// the best-response iteration per weight vector, and Pareto-flags the
// resulting risk vectors.
std::vector<AllocationPoint> allocation_frontier(const sde::DiffusionModel& model,
                                                 const std::vector<gen::CostField>& running,
                                                 const gen::GeneratorFunctional& g,
                                                 const gen::TerminalField& aggregate,
                                                 const hjb::HjbGridSpec& spec,
                                                 const FrontierConfig& cfg);

// Compositions of `resolution` into n nonnegative parts, lexicographic.
std::vector<Eigen::VectorXd> simplex_grid(int n, int resolution);

}  // namespace riskbsde::eq
