#pragma once

#include "riskbsde/bsde/risk.hpp"
#include "riskbsde/hjb/grid.hpp"

namespace riskbsde::hjb {

struct CrosscheckPoint {
    Eigen::VectorXd x;
    int agent = 0;
    double pde_value = 0.0;
    double mc_value = 0.0;
    double mc_stderr = 0.0;
    double tolerance = 0.0;  // 3 stderr + C (dx^2 + dt)
    bool pass = false;
};

struct CrosscheckReport {
    std::vector<CrosscheckPoint> points;
    double allowance_constant = 0.0;
    bool all_pass() const {
        for (const auto& p : points)
            if (!p.pass) return false;
        return !points.empty();
    }
};

// Feedback profile reading controls off a PolicyGrid (nearest node).
sde::DecisionRule grid_profile(const PolicyGrid& policy, const sde::DiffusionModel& model);

// phi_j(t0, x) against the simulated risk measure under the extracted
// policy, at interior points (kept >= 10% of the domain width away from
// the boundary).
CrosscheckReport crosscheck_value_mc(const ValueGrid& grid, const sde::DiffusionModel& model,
                                     const gen::RiskCostSpec& costs,
                                     const gen::GeneratorFunctional& g, const PolicyGrid& policy,
                                     const std::vector<Eigen::VectorXd>& points, int num_paths,
                                     std::uint64_t seed, double allowance_constant = 10.0,
                                     int mc_steps = 64);

// Adapter for risk_measure(solver = pde).
bsde::PdeValueFn pde_value_fn(const ValueGrid& grid);

}  // namespace riskbsde::hjb
