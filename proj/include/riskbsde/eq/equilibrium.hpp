#pragma once

#include "riskbsde/hjb/solver.hpp"

namespace riskbsde::eq {

// Agent j's optimal feedback against the frozen decisions of the others:
// one HJB solve with only agent j active.
hjb::HjbResult best_response(const sde::DiffusionModel& model, const gen::RiskCostSpec& costs,
                             const gen::GeneratorFunctional& g, const hjb::PolicyGrid& profile,
                             int agent, double t0, double T, const hjb::HjbGridSpec& spec);

struct EquilibriumConfig {
    double tol = 1e-9;
    int max_iters = 20;
    std::vector<int> order;        // best-response order; default ascending
    bool store_trajectory = true;  // keep per-sweep profiles when not converged
};

struct ConvergenceReport {
    bool converged = false;
    int sweeps = 0;
    std::vector<std::vector<double>> per_sweep_change;  // [sweep][agent] sup-norm policy change
    std::vector<hjb::PolicyGrid> trajectory;            // filled when not converged

    double last_max_change() const {
        if (per_sweep_change.empty()) return 0.0;
        double m = 0.0;
        for (double c : per_sweep_change.back()) m = std::max(m, c);
        return m;
    }
};

struct EquilibriumResult {
    hjb::PolicyGrid profile;  // the decision profile after the final sweep
    hjb::ValueGrid value;     // phi_j rows taken from each agent's own solve
    ConvergenceReport report;
};

// Cyclic best responses until the largest policy change over a sweep
// drops below tol or max_iters sweeps elapse (reported, not an error).
EquilibriumResult gauss_seidel_equilibrium(const sde::DiffusionModel& model,
                                           const gen::RiskCostSpec& costs,
                                           const gen::GeneratorFunctional& g,
                                           const hjb::PolicyGrid* init, double t0, double T,
                                           const hjb::HjbGridSpec& spec,
                                           const EquilibriumConfig& cfg);

}  // namespace riskbsde::eq
