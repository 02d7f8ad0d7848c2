#include "riskbsde/eq/frontier.hpp"

#include <cmath>

namespace riskbsde::eq {

std::vector<Eigen::VectorXd> simplex_grid(int n, int resolution) {
    if (n < 1) throw ValidationError("simplex_grid: need at least one agent");
    if (resolution < 1) throw ValidationError("simplex_grid: resolution must be >= 1");
    std::vector<Eigen::VectorXd> out;
    std::vector<int> k(n, 0);
    // Enumerate compositions of `resolution` into n parts.
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            k[pos] = left;
            Eigen::VectorXd a(n);
            for (int j = 0; j < n; ++j) a[j] = static_cast<double>(k[j]) / resolution;
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            k[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, resolution);
    return out;
}

std::vector<AllocationPoint> allocation_frontier(const sde::DiffusionModel& model,
                                                 const std::vector<gen::CostField>& running,
                                                 const gen::GeneratorFunctional& g,
                                                 const gen::TerminalField& aggregate,
                                                 const hjb::HjbGridSpec& spec,
                                                 const FrontierConfig& cfg) {
    const int n = model.num_agents;
    if (static_cast<int>(running.size()) != n)
        throw ValidationError("allocation_frontier: one running cost per agent required");
    if (cfg.x0.size() != model.state_dim)
        throw ValidationError("allocation_frontier: x0 dimension mismatch");

    const auto alphas = simplex_grid(n, cfg.resolution);
    std::vector<AllocationPoint> points;
    points.reserve(alphas.size());

    for (const auto& alpha : alphas) {
        AllocationPoint pt;
        pt.alpha = alpha;
        gen::RiskCostSpec costs;
        costs.running = running;
        for (int j = 0; j < n; ++j) {
            pt.targets.push_back(aggregate.scaled(alpha[j]));
            costs.terminal.push_back(pt.targets.back());
        }
        // Reconstruction: the shares must add back to L node-wise.
        double recon = 0.0;
        for (int node = 0; node < spec.space.total(); ++node) {
            const Eigen::VectorXd x = spec.space.point(node);
            double sum = 0.0;
            for (int j = 0; j < n; ++j) sum += pt.targets[j].eval(x);
            recon = std::max(recon, std::abs(sum - aggregate.eval(x)));
        }
        pt.reconstruction_error = recon;

        try {
            const EquilibriumResult eqr = gauss_seidel_equilibrium(
                model, costs, g, nullptr, cfg.t0, cfg.T, spec, cfg.equilibrium);
            pt.sweeps = eqr.report.sweeps;
            pt.converged = eqr.report.converged;
            pt.risk.resize(n);
            for (int j = 0; j < n; ++j) pt.risk[j] = eqr.value.value(j, cfg.t0, cfg.x0);
            pt.solved = true;
        } catch (const std::exception& ex) {
            pt.solved = false;
            pt.error = ex.what();
        }
        points.push_back(std::move(pt));
    }

    // Pareto flags over the solved points.
    std::vector<Eigen::VectorXd> risks;
    std::vector<int> solved_idx;
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
        if (points[i].solved) {
            risks.push_back(points[i].risk);
            solved_idx.push_back(i);
        }
    if (!risks.empty()) {
        for (int keep : pareto_filter_indices(risks)) points[solved_idx[keep]].pareto = true;
    }
    return points;
}

}  // namespace riskbsde::eq
