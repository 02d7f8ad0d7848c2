#include "riskbsde/hjb/crosscheck.hpp"

#include <cmath>

namespace riskbsde::hjb {

sde::DecisionRule grid_profile(const PolicyGrid& policy, const sde::DiffusionModel& model) {
    sde::DecisionRule rule;
    for (int j = 0; j < model.num_agents; ++j) {
        sde::AgentPolicy p;
        p.fn = [&policy, j](double t, const Eigen::VectorXd& x) {
            return policy.control_at(j, t, x);
        };
        rule.agents.push_back(std::move(p));
    }
    return rule;
}

bsde::PdeValueFn pde_value_fn(const ValueGrid& grid) {
    return [&grid](int agent, double t, const Eigen::VectorXd& x) {
        return grid.value(agent, t, x);
    };
}

CrosscheckReport crosscheck_value_mc(const ValueGrid& grid, const sde::DiffusionModel& model,
                                     const gen::RiskCostSpec& costs,
                                     const gen::GeneratorFunctional& g, const PolicyGrid& policy,
                                     const std::vector<Eigen::VectorXd>& points, int num_paths,
                                     std::uint64_t seed, double allowance_constant, int mc_steps) {
    CrosscheckReport rep;
    rep.allowance_constant = allowance_constant;

    double dx_sq = 0.0;
    for (int i = 0; i < grid.space.d; ++i) dx_sq = std::max(dx_sq, grid.space.dx(i) * grid.space.dx(i));
    const double disc = allowance_constant * (dx_sq + grid.time.dt());

    const sde::DecisionRule profile = grid_profile(policy, model);
    bsde::LsmcParams lp;
    lp.num_paths = num_paths;
    lp.steps = mc_steps;
    lp.seed = seed;

    for (const auto& x : points) {
        if (x.size() != grid.space.d)
            throw ValidationError("crosscheck: point dimension mismatch");
        for (int i = 0; i < grid.space.d; ++i) {
            const double width = grid.space.hi[i] - grid.space.lo[i];
            if (x[i] < grid.space.lo[i] + 0.1 * width || x[i] > grid.space.hi[i] - 0.1 * width)
                throw ValidationError(
                    "crosscheck: points must stay at least 10% of the domain width away from the "
                    "boundary");
        }
        for (int j = 0; j < grid.num_agents; ++j) {
            CrosscheckPoint cp;
            cp.x = x;
            cp.agent = j;
            cp.pde_value = grid.value(j, grid.time.t0, x);
            const bsde::RiskMeasureResult rm =
                bsde::risk_measure(model, costs, g, profile, j, grid.time.t0, grid.time.T, x,
                                   bsde::SolverChoice::Lsmc, lp);
            cp.mc_value = rm.rho;
            cp.mc_stderr = rm.stderr_;
            cp.tolerance = 3.0 * rm.stderr_ + disc;
            cp.pass = std::abs(cp.pde_value - cp.mc_value) <= cp.tolerance;
            rep.points.push_back(std::move(cp));
        }
    }
    return rep;
}

}  // namespace riskbsde::hjb
