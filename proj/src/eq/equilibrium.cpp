#include "riskbsde/eq/equilibrium.hpp"

namespace riskbsde::eq {

hjb::HjbResult best_response(const sde::DiffusionModel& model, const gen::RiskCostSpec& costs,
                             const gen::GeneratorFunctional& g, const hjb::PolicyGrid& profile,
                             int agent, double t0, double T, const hjb::HjbGridSpec& spec) {
    return hjb::solve_hjb_system(model, costs, g, &profile, {agent}, t0, T, spec);
}

EquilibriumResult gauss_seidel_equilibrium(const sde::DiffusionModel& model,
                                           const gen::RiskCostSpec& costs,
                                           const gen::GeneratorFunctional& g,
                                           const hjb::PolicyGrid* init, double t0, double T,
                                           const hjb::HjbGridSpec& spec,
                                           const EquilibriumConfig& cfg) {
    if (cfg.max_iters < 1) throw ValidationError("equilibrium: max_iters must be >= 1");
    const int n = model.num_agents;
    std::vector<int> order = cfg.order;
    if (order.empty()) {
        order.resize(n);
        for (int j = 0; j < n; ++j) order[j] = j;
    }
    for (int j : order)
        if (j < 0 || j >= n) throw ValidationError("equilibrium: order index out of range");

    // Materialize the starting profile on the solve grid (CFL refinement
    // included) by running one inactive solve.
    hjb::HjbGridSpec warm = spec;
    hjb::HjbResult probe = hjb::solve_hjb_system(model, costs, g, init, {}, t0, T, warm);
    hjb::PolicyGrid profile = probe.policy;
    warm.time_steps = probe.diagnostics.solved_steps;

    EquilibriumResult out;
    out.value = probe.value;

    for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
        std::vector<double> change(n, 0.0);
        for (int j : order) {
            hjb::HjbResult res = best_response(model, costs, g, profile, j, t0, T, warm);
            change[j] = res.policy.max_abs_difference_agent(profile, j);
            profile.u[j] = res.policy.u[j];
            // Keep agent j's value row from the solve where j acted.
            const int total = res.value.space.total();
            for (int k = 0; k <= res.value.time.steps; ++k)
                std::copy(res.value.slab(k, j), res.value.slab(k, j) + total,
                          out.value.slab(k, j));
        }
        out.report.per_sweep_change.push_back(change);
        ++out.report.sweeps;
        double max_change = 0.0;
        for (double c : change) max_change = std::max(max_change, c);
        if (cfg.store_trajectory) out.report.trajectory.push_back(profile);
        if (max_change < cfg.tol) {
            out.report.converged = true;
            break;
        }
    }
    if (out.report.converged) out.report.trajectory.clear();
    out.profile = profile;
    return out;
}

}  // namespace riskbsde::eq
