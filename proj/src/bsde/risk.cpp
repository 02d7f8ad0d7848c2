#include "riskbsde/bsde/risk.hpp"

#include <cmath>
#include <sstream>

#include "riskbsde/rng.hpp"

namespace riskbsde::bsde {

std::string solver_name(SolverChoice s) {
    switch (s) {
        case SolverChoice::Lsmc: return "lsmc";
        case SolverChoice::Tree: return "tree";
        case SolverChoice::Pde: return "pde";
    }
    return "?";
}

RiskMeasureResult risk_measure(const sde::DiffusionModel& model, const gen::RiskCostSpec& costs,
                               const gen::GeneratorFunctional& g, const sde::DecisionRule& profile,
                               int agent, double t, double T, const Eigen::VectorXd& x,
                               SolverChoice solver, const LsmcParams& lsmc, int tree_depth,
                               const PdeValueFn* pde_value) {
    costs.validate();
    if (agent < 0 || agent >= costs.num_agents())
        throw ValidationError("risk_measure: agent index out of range");

    RiskMeasureResult res;
    res.agent = agent;
    res.provenance = solver;

    if (solver == SolverChoice::Pde) {
        if (!pde_value)
            throw ValidationError("risk_measure: solver=pde requires a solved value grid");
        res.rho = (*pde_value)(agent, t, x);
        res.stderr_ = 0.0;
        return res;
    }

    const gen::CompositeGenerator gj(g, costs.running[agent], profile.agents[agent]);

    if (solver == SolverChoice::Tree) {
        if (model.state_dim != 1)
            throw ValidationError("risk_measure: solver=tree requires state dimension 1");
        const TreeModel tree = TreeModel::from_model(model, profile, t, T, x[0], tree_depth);
        std::vector<double> leaves(tree.depth + 1);
        Eigen::VectorXd xv(1);
        for (int i = 0; i <= tree.depth; ++i) {
            xv[0] = tree.node_x(tree.depth, i);
            leaves[i] = costs.terminal[agent].eval(xv);
        }
        const TreeSolution sol = solve_bsde_tree(tree, gj, leaves);
        res.rho = sol.root();
        res.stderr_ = 0.0;
        return res;
    }

    sde::TimeGrid grid{t, T, lsmc.steps};
    const sde::PathBundle paths =
        sde::simulate_forward(model, profile, grid, x, lsmc.num_paths, lsmc.seed);
    std::vector<double> terminal(paths.num_paths);
    const double* last = paths.slab(paths.steps);
    Eigen::VectorXd xv(model.state_dim);
    for (int p = 0; p < paths.num_paths; ++p) {
        for (int i = 0; i < model.state_dim; ++i) xv[i] = last[p * model.state_dim + i];
        terminal[p] = costs.terminal[agent].eval(xv);
    }
    const BsdeSolution sol = solve_bsde_lsmc(paths, gj, terminal, lsmc.basis, lsmc.ridge);
    res.rho = sol.y0;
    res.stderr_ = sol.y0_stderr;
    return res;
}

ComparisonReport check_comparison(const TreeModel& tree, const gen::BsdeGenerator& g1,
                                  const gen::BsdeGenerator& g2,
                                  const std::vector<double>& leaves1,
                                  const std::vector<double>& leaves2,
                                  const sde::PathBundle* shared_paths,
                                  const std::vector<double>* terminal1,
                                  const std::vector<double>* terminal2, const LsmcBasis& basis) {
    ComparisonReport rep;
    if (leaves1.size() != leaves2.size())
        throw ValidationError("check_comparison: leaf vectors must have equal length");

    double min_gap = std::numeric_limits<double>::infinity();
    bool strictly = false;
    for (std::size_t i = 0; i < leaves1.size(); ++i) {
        min_gap = std::min(min_gap, leaves1[i] - leaves2[i]);
        if (leaves1[i] > leaves2[i]) strictly = true;
    }
    rep.input_gap = min_gap;
    rep.strict_clause_triggered = strictly;
    if (min_gap < 0.0) {
        rep.applicable = false;
        rep.reason = "terminal values are not ordered (xi1 >= xi2 fails at some leaf)";
        return rep;
    }

    // Generator ordering probe g1 >= g2 on random arguments.
    rng::SequenceStream rs(0xc0de, 3);
    for (int p = 0; p < 500; ++p) {
        Eigen::VectorXd xv(1), zv(1);
        xv[0] = rs.uniform(-4.0, 4.0);
        zv[0] = rs.uniform(-4.0, 4.0);
        const double t = rs.uniform(tree.t0, tree.T);
        const double y = rs.uniform(-4.0, 4.0);
        if (g1.eval(t, xv, y, zv) < g2.eval(t, xv, y, zv) - 1e-12) {
            rep.applicable = false;
            rep.reason = "generators are not ordered (g1 >= g2 fails at a probe)";
            return rep;
        }
    }
    rep.applicable = true;

    const TreeSolution s1 = solve_bsde_tree(tree, g1, leaves1);
    const TreeSolution s2 = solve_bsde_tree(tree, g2, leaves2);
    double tree_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s1.Y.size(); ++i) tree_min = std::min(tree_min, s1.Y[i] - s2.Y[i]);
    rep.tree_min_gap = tree_min;
    rep.pass = tree_min > 0.0;

    if (shared_paths && terminal1 && terminal2) {
        const BsdeSolution l1 = solve_bsde_lsmc(*shared_paths, g1, *terminal1, basis);
        const BsdeSolution l2 = solve_bsde_lsmc(*shared_paths, g2, *terminal2, basis);
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < l1.Y.size(); ++i) m = std::min(m, l1.Y[i] - l2.Y[i]);
        rep.lsmc_min_gap = m;
        rep.lsmc_ran = true;
    }
    return rep;
}

namespace {

// Smooth bounded-Lipschitz terminal functions keep tree spreads moderate,
// so the exact one-step monotonicity condition K_g sqrt(dt) < 1 holds for
// the catalog batteries.
struct RandomTerminal {
    double c0, c1, s1, c2, s2, phase;

    double operator()(double x) const {
        return c0 + c1 * std::tanh(x / s1) + c2 * std::sin(x / s2 + phase);
    }
    static RandomTerminal sample(rng::SequenceStream& rs) {
        RandomTerminal f{};
        f.c0 = rs.uniform(-1.0, 1.0);
        f.c1 = rs.uniform(-1.0, 1.0);
        f.s1 = rs.uniform(1.0, 2.0);
        f.c2 = rs.uniform(-1.0, 1.0);
        f.s2 = rs.uniform(1.0, 2.0);
        f.phase = rs.uniform(0.0, 6.28318530717958647692);
        return f;
    }
    std::string describe() const {
        std::ostringstream os;
        os << c0 << " + " << c1 << "*tanh(x/" << s1 << ") + " << c2 << "*sin(x/" << s2 << " + "
           << phase << ")";
        return os.str();
    }
};

struct BatteryContext {
    const gen::GeneratorFunctional& g;
    const AxiomBatteryConfig& cfg;
    TreeModel tree;
    gen::PlainGenerator plain;
    sde::PathBundle paths;          // shared Brownian paths for lsmc checks
    std::vector<double> xT;         // terminal states per path

    explicit BatteryContext(const gen::GeneratorFunctional& gf, const AxiomBatteryConfig& c)
        : g(gf), cfg(c), plain(gf) {
        tree.x0 = c.x0;
        tree.t0 = 0.0;
        tree.T = c.horizon;
        tree.drift = 0.0;
        tree.vol = c.vol;
        tree.depth = c.tree_depth;

        sde::DiffusionModel model;
        model.state_dim = 1;
        model.num_agents = 1;
        sde::Box ub;
        ub.lo = Eigen::VectorXd::Zero(1);
        ub.hi = Eigen::VectorXd::Zero(1);
        model.control_boxes = {ub};
        model.drift.A = Eigen::MatrixXd::Zero(1, 1);
        model.drift.B = Eigen::MatrixXd::Zero(1, 1);
        model.drift.b = Eigen::VectorXd::Zero(1);
        model.diffusion.kind = sde::MatrixField::Kind::Constant;
        model.diffusion.constant = Eigen::MatrixXd::Constant(1, 1, c.vol);
        const sde::DecisionRule profile = sde::constant_profile(model, {Eigen::VectorXd::Zero(1)});
        Eigen::VectorXd x0v(1);
        x0v[0] = c.x0;
        paths = sde::simulate_forward(model, profile, {0.0, c.horizon, c.lsmc_steps}, x0v,
                                      c.lsmc_paths, c.seed);
        xT.resize(paths.num_paths);
        const double* last = paths.slab(paths.steps);
        for (int p = 0; p < paths.num_paths; ++p) xT[p] = last[p];
    }

    std::vector<double> tree_leaves(const std::function<double(double)>& f) const {
        std::vector<double> out(tree.depth + 1);
        for (int i = 0; i <= tree.depth; ++i) out[i] = f(tree.node_x(tree.depth, i));
        return out;
    }
    double tree_rho(const std::vector<double>& leaves) const {
        return solve_bsde_tree(tree, plain, leaves).root();
    }
    std::pair<double, double> lsmc_rho(const std::function<double(double)>& f) const {
        std::vector<double> term(paths.num_paths);
        for (int p = 0; p < paths.num_paths; ++p) term[p] = f(xT[p]);
        const BsdeSolution s = solve_bsde_lsmc(paths, plain, term, {});
        return {s.y0, s.y0_stderr};
    }
};

}  // namespace

AxiomReport check_risk_axioms(const gen::GeneratorFunctional& g, const AxiomBatteryConfig& cfg) {
    BatteryContext ctx(g, cfg);
    rng::SequenceStream rs(cfg.seed, 17);
    AxiomReport report;

    const bool y_indep = g.y_independent();
    const bool vanishes = g.vanishes_at_z0();

    auto finish = [&](AxiomResult& r, double tree_worst, double lsmc_worst, const std::string& ce) {
        r.tree_worst = tree_worst;
        r.lsmc_worst = lsmc_worst;
        if (r.applicable) {
            r.tree_status = tree_worst <= cfg.exact_tol ? AxiomStatus::Pass : AxiomStatus::Violated;
            r.lsmc_status = lsmc_worst <= 0.0 ? AxiomStatus::Pass : AxiomStatus::Violated;
        } else {
            r.tree_status = AxiomStatus::NotApplicable;
            r.lsmc_status = AxiomStatus::NotApplicable;
            if (tree_worst > cfg.exact_tol) {
                r.counterexample_found = true;
                r.counterexample = ce;
            }
        }
        report.results.push_back(r);
    };

    // Convexity: rho[l xi1 + (1-l) xi2] <= l rho[xi1] + (1-l) rho[xi2].
    {
        AxiomResult r;
        r.axiom = "convexity";
        r.applicable = g.convex();
        double worst = -std::numeric_limits<double>::infinity();
        std::string ce;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const auto f1 = RandomTerminal::sample(rs);
            const auto f2 = RandomTerminal::sample(rs);
            const double lam = rs.uniform(0.1, 0.9);
            const auto l1 = ctx.tree_leaves([&](double x) { return f1(x); });
            const auto l2 = ctx.tree_leaves([&](double x) { return f2(x); });
            std::vector<double> lc(l1.size());
            for (std::size_t i = 0; i < l1.size(); ++i) lc[i] = lam * l1[i] + (1 - lam) * l2[i];
            const double viol =
                ctx.tree_rho(lc) - (lam * ctx.tree_rho(l1) + (1 - lam) * ctx.tree_rho(l2));
            if (viol > worst) {
                worst = viol;
                std::ostringstream os;
                os << "xi1 = " << f1.describe() << "; xi2 = " << f2.describe()
                   << "; lambda = " << lam;
                ce = os.str();
            }
        }
        double lsmc_worst = -std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < cfg.lsmc_trials; ++trial) {
            const auto f1 = RandomTerminal::sample(rs);
            const auto f2 = RandomTerminal::sample(rs);
            const double lam = rs.uniform(0.1, 0.9);
            const auto [rc, sec] =
                ctx.lsmc_rho([&](double x) { return lam * f1(x) + (1 - lam) * f2(x); });
            const auto [r1, se1] = ctx.lsmc_rho([&](double x) { return f1(x); });
            const auto [r2, se2] = ctx.lsmc_rho([&](double x) { return f2(x); });
            const double tol = cfg.stat_sigmas * (sec + lam * se1 + (1 - lam) * se2) + 1e-12;
            lsmc_worst = std::max(lsmc_worst, rc - (lam * r1 + (1 - lam) * r2) - tol);
        }
        finish(r, worst, lsmc_worst, ce);
    }

    // Monotonicity: xi1 >= xi2 + gap implies rho[xi1] > rho[xi2] node-wise.
    {
        AxiomResult r;
        r.axiom = "monotonicity";
        r.applicable = true;
        double worst = -std::numeric_limits<double>::infinity();
        std::string ce;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const auto f = RandomTerminal::sample(rs);
            const double gap = rs.uniform(0.1, 1.0);
            const auto l1 = ctx.tree_leaves([&](double x) { return f(x); });
            std::vector<double> l2(l1.size());
            for (std::size_t i = 0; i < l1.size(); ++i) l2[i] = l1[i] - gap;
            const TreeSolution s1 = solve_bsde_tree(ctx.tree, ctx.plain, l1);
            const TreeSolution s2 = solve_bsde_tree(ctx.tree, ctx.plain, l2);
            double min_gap = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < s1.Y.size(); ++i)
                min_gap = std::min(min_gap, s1.Y[i] - s2.Y[i]);
            const double viol = -min_gap;  // violation when the gap closes
            if (viol > worst) {
                worst = viol;
                std::ostringstream os;
                os << "xi = " << f.describe() << "; gap = " << gap;
                ce = os.str();
            }
        }
        double lsmc_worst = -std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < cfg.lsmc_trials; ++trial) {
            const auto f = RandomTerminal::sample(rs);
            const double gap = rs.uniform(0.1, 1.0);
            const auto [r1, se1] = ctx.lsmc_rho([&](double x) { return f(x); });
            const auto [r2, se2] = ctx.lsmc_rho([&](double x) { return f(x) - gap; });
            lsmc_worst = std::max(lsmc_worst, -(r1 - r2));  // must stay strictly positive
        }
        finish(r, worst, lsmc_worst, ce);
    }

    // Trans-invariance: rho[xi + nu] = rho[xi] + nu for deterministic nu.
    {
        AxiomResult r;
        r.axiom = "trans_invariance";
        r.applicable = vanishes && y_indep;
        double worst = -std::numeric_limits<double>::infinity();
        std::string ce;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const auto f = RandomTerminal::sample(rs);
            const double nu = rs.uniform(-2.0, 2.0);
            const auto l1 = ctx.tree_leaves([&](double x) { return f(x); });
            std::vector<double> l2(l1.size());
            for (std::size_t i = 0; i < l1.size(); ++i) l2[i] = l1[i] + nu;
            const double viol = std::abs(ctx.tree_rho(l2) - ctx.tree_rho(l1) - nu);
            if (viol > worst) {
                worst = viol;
                std::ostringstream os;
                os << "xi = " << f.describe() << "; nu = " << nu;
                ce = os.str();
            }
        }
        double lsmc_worst = -std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < cfg.lsmc_trials; ++trial) {
            const auto f = RandomTerminal::sample(rs);
            const double nu = rs.uniform(-2.0, 2.0);
            const auto [r1, se1] = ctx.lsmc_rho([&](double x) { return f(x); });
            const auto [r2, se2] = ctx.lsmc_rho([&](double x) { return f(x) + nu; });
            const double tol = cfg.stat_sigmas * (se1 + se2) + 1e-12;
            lsmc_worst = std::max(lsmc_worst, std::abs(r2 - r1 - nu) - tol);
        }
        finish(r, worst, lsmc_worst, ce);
    }

    // Positive homogeneity: rho[l xi] = l rho[xi] for l > 0.
    {
        AxiomResult r;
        r.axiom = "positive_homogeneity";
        r.applicable = g.positively_homogeneous();
        double worst = -std::numeric_limits<double>::infinity();
        std::string ce;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const auto f = RandomTerminal::sample(rs);
            const double lam = rs.uniform(0.05, 3.0);
            const auto l1 = ctx.tree_leaves([&](double x) { return f(x); });
            std::vector<double> l2(l1.size());
            for (std::size_t i = 0; i < l1.size(); ++i) l2[i] = lam * l1[i];
            const double viol =
                std::abs(ctx.tree_rho(l2) - lam * ctx.tree_rho(l1)) / (1.0 + lam);
            if (viol > worst) {
                worst = viol;
                std::ostringstream os;
                os << "xi = " << f.describe() << "; lambda = " << lam;
                ce = os.str();
            }
        }
        double lsmc_worst = -std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < cfg.lsmc_trials; ++trial) {
            const auto f = RandomTerminal::sample(rs);
            const double lam = rs.uniform(0.05, 3.0);
            const auto [r1, se1] = ctx.lsmc_rho([&](double x) { return f(x); });
            const auto [r2, se2] = ctx.lsmc_rho([&](double x) { return lam * f(x); });
            const double tol = cfg.stat_sigmas * (se2 + lam * se1) + 1e-12;
            lsmc_worst = std::max(lsmc_worst, std::abs(r2 - lam * r1) - tol);
        }
        finish(r, worst, lsmc_worst, ce);
    }

    // Normalization: rho[0] = 0.
    {
        AxiomResult r;
        r.axiom = "normalization";
        r.applicable = vanishes && y_indep;
        const std::vector<double> zeros(ctx.tree.depth + 1, 0.0);
        const double worst = std::abs(ctx.tree_rho(zeros));
        const auto [r0, se0] = ctx.lsmc_rho([](double) { return 0.0; });
        const double lsmc_worst = std::abs(r0) - cfg.stat_sigmas * se0 - 1e-12;
        finish(r, worst, lsmc_worst, "xi = 0");
    }

    return report;
}

}  // namespace riskbsde::bsde
