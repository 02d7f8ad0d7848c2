#pragma once

#include <functional>
#include <optional>
#include <string>

#include "riskbsde/bsde/lsmc.hpp"
#include "riskbsde/bsde/tree.hpp"
#include "riskbsde/gen/risk_cost.hpp"
#include "riskbsde/sde/simulate.hpp"

namespace riskbsde::bsde {

enum class SolverChoice { Lsmc, Tree, Pde };

std::string solver_name(SolverChoice s);

struct RiskMeasureResult {
    int agent = 0;
    double rho = 0.0;
    double stderr_ = 0.0;  // 0 for tree/pde provenance
    SolverChoice provenance = SolverChoice::Lsmc;
};

struct LsmcParams {
    int num_paths = 20000;
    int steps = 50;
    std::uint64_t seed = 1;
    LsmcBasis basis{};
    double ridge = 1e-8;
};

// Supplied by the PDE layer when solver = Pde: value of phi_j at (t, x).
using PdeValueFn = std::function<double(int agent, double t, const Eigen::VectorXd& x)>;

// rho^{g_j}_{t,T} of the accumulated risk-cost under the profile: the
// running cost is folded into the composite generator, the terminal cost
// forms the BSDE terminal value.
RiskMeasureResult risk_measure(const sde::DiffusionModel& model, const gen::RiskCostSpec& costs,
                               const gen::GeneratorFunctional& g, const sde::DecisionRule& profile,
                               int agent, double t, double T, const Eigen::VectorXd& x,
                               SolverChoice solver, const LsmcParams& lsmc, int tree_depth = 12,
                               const PdeValueFn* pde_value = nullptr);

// ---- comparison theorem battery ------------------------------------------

struct ComparisonReport {
    bool applicable = false;
    std::string reason;             // set when inapplicable
    double input_gap = 0.0;         // min leafwise xi1 - xi2
    double tree_min_gap = 0.0;      // min over all tree nodes of Y1 - Y2
    double lsmc_min_gap = 0.0;      // advisory (MC noise)
    bool lsmc_ran = false;
    bool strict_clause_triggered = false;  // some leaf strictly larger
    bool pass = false;              // tree_min_gap > 0
};

// Ordered pair check on a shared lattice (exact) and optionally shared
// simulated paths (statistical). Preconditions (xi1 >= xi2 + delta leafwise,
// g1 >= g2 at probes) are verified; violations mark the report inapplicable.
ComparisonReport check_comparison(const TreeModel& tree, const gen::BsdeGenerator& g1,
                                  const gen::BsdeGenerator& g2,
                                  const std::vector<double>& leaves1,
                                  const std::vector<double>& leaves2,
                                  const sde::PathBundle* shared_paths = nullptr,
                                  const std::vector<double>* terminal1 = nullptr,
                                  const std::vector<double>* terminal2 = nullptr,
                                  const LsmcBasis& basis = {});

// ---- risk-measure axiom battery -------------------------------------------

enum class AxiomStatus { Pass, Violated, NotApplicable };

struct AxiomResult {
    std::string axiom;
    bool applicable = false;
    AxiomStatus tree_status = AxiomStatus::NotApplicable;
    double tree_worst = 0.0;  // largest signed violation observed on the tree
    AxiomStatus lsmc_status = AxiomStatus::NotApplicable;
    double lsmc_worst = 0.0;  // largest violation in units of the statistical tolerance
    bool counterexample_found = false;
    std::string counterexample;  // violating triple, when probing found one
};

struct AxiomReport {
    std::vector<AxiomResult> results;

    bool all_applicable_pass() const {
        for (const auto& r : results)
            if (r.applicable &&
                (r.tree_status == AxiomStatus::Violated || r.lsmc_status == AxiomStatus::Violated))
                return false;
        return true;
    }
    const AxiomResult* find(const std::string& name) const {
        for (const auto& r : results)
            if (r.axiom == name) return &r;
        return nullptr;
    }
};

struct AxiomBatteryConfig {
    int tree_depth = 10;
    double horizon = 1.0;
    double vol = 1.0;
    double x0 = 0.0;
    int trials = 100;       // random instances per axiom on the tree
    int lsmc_trials = 2;    // random instances per axiom under lsmc
    int lsmc_paths = 10000;
    int lsmc_steps = 25;
    std::uint64_t seed = 0xba77;
    double exact_tol = 1e-10;
    double stat_sigmas = 3.0;
};

// Tests convexity, monotonicity, trans-invariance, positive homogeneity
// and normalization. Each axiom is applicable only under the structural
// hypotheses that make it exact (convex g, positively homogeneous g,
// y-independent g vanishing at z=0); inapplicable axioms are still probed
// and any violation is attached as a counterexample, not a failure.
AxiomReport check_risk_axioms(const gen::GeneratorFunctional& g, const AxiomBatteryConfig& cfg);

}  // namespace riskbsde::bsde
