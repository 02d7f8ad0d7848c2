#include "riskbsde/acceptance/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "riskbsde/bsde/risk.hpp"
#include "riskbsde/eq/frontier.hpp"
#include "riskbsde/hjb/crosscheck.hpp"
#include "riskbsde/rng.hpp"
#include "riskbsde/util/numeric.hpp"
#include "riskbsde/viability/checks.hpp"

namespace riskbsde::accept {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string fd(double v) { return util::format_double(v); }

VectorXd vec1(double v) {
    VectorXd x(1);
    x[0] = v;
    return x;
}

sde::DiffusionModel uncontrolled_model_1d(double drift_slope, double drift_const, double vol) {
    sde::DiffusionModel m;
    m.state_dim = 1;
    m.num_agents = 1;
    sde::Box box;
    box.lo = VectorXd::Zero(1);
    box.hi = VectorXd::Zero(1);
    m.control_boxes = {box};
    m.drift.A = MatrixXd::Constant(1, 1, drift_slope);
    m.drift.B = MatrixXd::Zero(1, 1);
    m.drift.b = VectorXd::Constant(1, drift_const);
    m.diffusion.constant = MatrixXd::Constant(1, 1, vol);
    m.growth_K = 10.0;
    m.growth_p = 2.0;
    return m;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// Classical fourth-order integration of the scalar value/offset pair for
// the linear-quadratic benchmark: backward in time,
//   q' = q^2 - 1, q(T) = 0;   r' = -q, r(T) = 0.
struct RiccatiOracle {
    std::vector<double> q, r;  // on a fine uniform grid over [0, T]
    double T;
    int steps;

    explicit RiccatiOracle(double horizon, int n = 100000) : T(horizon), steps(n) {
        q.assign(n + 1, 0.0);
        r.assign(n + 1, 0.0);
        const double h = T / n;
        // Integrate in tau = T - t from 0: dq/dtau = 1 - q^2, dr/dtau = q.
        double qq = 0.0, rr = 0.0;
        std::vector<double> qs(n + 1), rs(n + 1);
        qs[0] = 0.0;
        rs[0] = 0.0;
        auto fq = [](double y) { return 1.0 - y * y; };
        for (int i = 0; i < n; ++i) {
            const double k1 = fq(qq);
            const double k2 = fq(qq + 0.5 * h * k1);
            const double k3 = fq(qq + 0.5 * h * k2);
            const double k4 = fq(qq + h * k3);
            const double l1 = qq;
            const double l2 = qq + 0.5 * h * k1;
            const double l3 = qq + 0.5 * h * k2;
            const double l4 = qq + h * k3;
            qq += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            rr += h / 6.0 * (l1 + 2 * l2 + 2 * l3 + l4);
            qs[i + 1] = qq;
            rs[i + 1] = rr;
        }
        // Re-index to t: q[t index] with tau = T - t.
        for (int i = 0; i <= n; ++i) {
            q[i] = qs[n - i];
            r[i] = rs[n - i];
        }
    }
    double q_at(double t) const {
        const double s = std::clamp(t / T * steps, 0.0, static_cast<double>(steps));
        const int i = std::min(static_cast<int>(s), steps - 1);
        return q[i] + (s - i) * (q[i + 1] - q[i]);
    }
    double r_at(double t) const {
        const double s = std::clamp(t / T * steps, 0.0, static_cast<double>(steps));
        const int i = std::min(static_cast<int>(s), steps - 1);
        return r[i] + (s - i) * (r[i + 1] - r[i]);
    }
    double value(double t, double x) const { return q_at(t) * x * x + r_at(t); }
};

// Brute-force projection onto a triangle by grid search with two
// refinements, independent of the Dykstra path.
VectorXd grid_projection_oracle(const MatrixXd& A, const VectorXd& b, const VectorXd& lo,
                                const VectorXd& hi, const VectorXd& a, int n_per_axis) {
    VectorXd best(2);
    double best_d = std::numeric_limits<double>::infinity();
    VectorXd clo = lo, chi = hi;
    for (int refine = 0; refine < 3; ++refine) {
        VectorXd local_best = best;
        for (int i = 0; i < n_per_axis; ++i) {
            for (int j = 0; j < n_per_axis; ++j) {
                VectorXd p(2);
                p[0] = clo[0] + (chi[0] - clo[0]) * i / (n_per_axis - 1);
                p[1] = clo[1] + (chi[1] - clo[1]) * j / (n_per_axis - 1);
                bool feasible = true;
                for (int r = 0; r < A.rows(); ++r)
                    if (A.row(r).dot(p) > b[r] + 1e-15) {
                        feasible = false;
                        break;
                    }
                if (!feasible) continue;
                const double dd = (p - a).squaredNorm();
                if (dd < best_d) {
                    best_d = dd;
                    local_best = p;
                }
            }
        }
        best = local_best;
        const VectorXd span = (chi - clo) * (4.0 / (n_per_axis - 1));
        clo = best - span;
        chi = best + span;
    }
    return best;
}

// ---- criteria ---------------------------------------------------------------

CriterionResult c1_gzero_reduction(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 1;
    r.name = "g-zero reduction (risk measure = conditional mean)";
    const auto model = uncontrolled_model_1d(-1.0, 0.0, 1.0);  // mean-reverting state
    const auto profile = sde::midpoint_profile(model);
    const sde::TimeGrid grid{0.0, 1.0, 50};
    const auto paths = sde::simulate_forward(model, profile, grid, vec1(2.0), 100000, seed);
    std::vector<double> xi(paths.num_paths);
    const double* last = paths.slab(paths.steps);
    double mean = 0.0;
    for (int p = 0; p < paths.num_paths; ++p) {
        xi[p] = last[p];  // terminal cost is the state itself
        mean += xi[p];
    }
    mean /= paths.num_paths;
    const gen::PlainGenerator zero(gen::GeneratorFunctional::zero(1));
    const auto sol = bsde::solve_bsde_lsmc(paths, zero, xi, {2});
    const double gap = std::abs(sol.y0 - mean);
    const double tol = 3.0 * sol.y0_stderr;
    r.seconds = timer.seconds();
    r.pass = gap <= tol && r.seconds < 10.0;
    std::ostringstream os;
    os << "|rho - mean(xi)| = " << fd(gap) << " <= 3*stderr = " << fd(tol)
       << "; runtime limit 10 s";
    r.detail = os.str();
    return r;
}

CriterionResult c2_linear_z(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 2;
    r.name = "closed-form BSDE, z-linear generator";
    const double beta = 0.5, T = 1.0;
    const auto model = uncontrolled_model_1d(0.0, 0.0, 1.0);
    const auto profile = sde::midpoint_profile(model);
    const auto paths = sde::simulate_forward(model, profile, {0.0, T, 100}, vec1(0.0), 100000, seed);
    std::vector<double> xi(paths.num_paths);
    const double* last = paths.slab(paths.steps);
    for (int p = 0; p < paths.num_paths; ++p) xi[p] = last[p];
    const gen::PlainGenerator g(gen::GeneratorFunctional::linear_z(vec1(beta)));
    const auto sol = bsde::solve_bsde_lsmc(paths, g, xi, {2});
    const double lsmc_err = std::abs(sol.y0 - beta * T);

    bsde::TreeModel tree;
    tree.depth = 12;
    tree.T = T;
    std::vector<double> leaves = tree.leaf_x();
    const auto tsol = bsde::solve_bsde_tree(tree, g, leaves);
    const double tree_err = std::abs(tsol.root() - beta * T);
    const double tree_tol = 2.0 * tree.dt();

    r.seconds = timer.seconds();
    r.pass = lsmc_err <= 0.01 && tree_err <= tree_tol && r.seconds < 30.0;
    std::ostringstream os;
    os << "|Y0_lsmc - 0.5| = " << fd(lsmc_err) << " <= 0.01; |Y0_tree - 0.5| = " << fd(tree_err)
       << " <= 2*dt = " << fd(tree_tol) << "; runtime limit 30 s";
    r.detail = os.str();
    return r;
}

CriterionResult c3_linear_y(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 3;
    r.name = "closed-form BSDE, y-linear generator";
    const double T = 1.0;
    const auto model = uncontrolled_model_1d(0.0, 0.0, 1.0);
    const auto profile = sde::midpoint_profile(model);
    const auto paths = sde::simulate_forward(model, profile, {0.0, T, 100}, vec1(0.0), 10000, seed);
    std::vector<double> xi(paths.num_paths, 1.0);
    const gen::PlainGenerator g(gen::GeneratorFunctional::linear_y(1.0, 1));
    const auto sol = bsde::solve_bsde_lsmc(paths, g, xi, {2});
    const double lsmc_err = std::abs(sol.y0 - M_E);

    bsde::TreeModel tree;
    tree.depth = 12;
    tree.T = T;
    const std::vector<double> leaves(tree.depth + 1, 1.0);
    const auto tsol = bsde::solve_bsde_tree(tree, g, leaves);
    const double tree_err = std::abs(tsol.root() - M_E);

    r.seconds = timer.seconds();
    r.pass = lsmc_err <= 0.03 && tree_err <= 1e-3;
    std::ostringstream os;
    os << "|Y0_lsmc - e| = " << fd(lsmc_err) << " <= 0.03; |Y0_tree - e| = " << fd(tree_err)
       << " <= 0.001 (depth 12)";
    r.detail = os.str();
    return r;
}

gen::GeneratorFunctional random_catalog_generator(rng::SequenceStream& rs, int z_dim,
                                                  double max_lipschitz) {
    gen::GeneratorFunctional g;
    g.z_dim = z_dim;
    const int nterms = 1 + static_cast<int>(rs.integer(2));
    double budget = max_lipschitz;
    for (int i = 0; i < nterms && budget > 0.05; ++i) {
        const int kind = static_cast<int>(rs.integer(4));
        gen::GeneratorTerm t;
        switch (kind) {
            case 0:
                t.kind = gen::GeneratorTerm::Kind::AbsZ;
                t.mu = rs.uniform(0.0, std::min(1.0, budget));
                budget -= t.mu;
                break;
            case 1: {
                t.kind = gen::GeneratorTerm::Kind::LinearZ;
                const double a = rs.uniform(-std::min(1.0, budget), std::min(1.0, budget));
                t.a = vec1(a);
                budget -= std::abs(a);
                break;
            }
            case 2:
                t.kind = gen::GeneratorTerm::Kind::CappedQuadraticZ;
                t.theta = rs.uniform(0.1, 0.5);
                t.cap_R = rs.uniform(0.5, std::min(2.0, budget / t.theta));
                budget -= t.theta * t.cap_R;
                break;
            default:
                t.kind = gen::GeneratorTerm::Kind::LinearY;
                t.b = rs.uniform(-0.5, 0.5);
                budget -= std::abs(t.b);
                break;
        }
        g.terms.push_back(t);
    }
    return g;
}

CriterionResult c4_comparison(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 4;
    r.name = "comparison theorem on depth-8 lattices";
    rng::SequenceStream rs(seed, 41);
    bsde::TreeModel tree;
    tree.depth = 8;
    tree.T = 1.0;
    int ok = 0;
    double worst_gap = std::numeric_limits<double>::infinity();
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        // Ordered pair: g1 = g2 + mu |z| and xi1 = xi2 + delta.
        const auto g2f = random_catalog_generator(rs, 1, 2.0);
        auto g1f = g2f;
        gen::GeneratorTerm extra;
        extra.kind = gen::GeneratorTerm::Kind::AbsZ;
        extra.mu = rs.uniform(0.0, 0.5);
        g1f.terms.push_back(extra);
        const gen::PlainGenerator g1(g1f), g2(g2f);

        const double delta = rs.uniform(0.1, 1.1);
        const double c0 = rs.uniform(-1.0, 1.0), c1 = rs.uniform(-1.0, 1.0);
        const double s1 = rs.uniform(1.0, 2.0);
        std::vector<double> leaves2(tree.depth + 1), leaves1(tree.depth + 1);
        for (int i = 0; i <= tree.depth; ++i) {
            const double x = tree.node_x(tree.depth, i);
            leaves2[i] = c0 + c1 * std::tanh(x / s1);
            leaves1[i] = leaves2[i] + delta;
        }
        const auto rep = bsde::check_comparison(tree, g1, g2, leaves1, leaves2);
        if (rep.applicable && rep.tree_min_gap > 1e-12) ++ok;
        worst_gap = std::min(worst_gap, rep.tree_min_gap);
    }
    r.seconds = timer.seconds();
    r.pass = ok == trials;
    std::ostringstream os;
    os << ok << "/" << trials << " trials strictly positive at every node (tolerance 1e-12); "
       << "smallest node gap = " << fd(worst_gap);
    r.detail = os.str();
    return r;
}

CriterionResult c5_axioms(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 5;
    r.name = "risk-measure axiom battery";
    bsde::AxiomBatteryConfig cfg;
    cfg.tree_depth = 10;
    cfg.trials = 100;
    cfg.seed = seed;

    bool all_ok = true;
    std::ostringstream os;
    const std::vector<std::pair<std::string, gen::GeneratorFunctional>> batteries = {
        {"zero", gen::GeneratorFunctional::zero(1)},
        {"abs_z(0.3)", gen::GeneratorFunctional::abs_z(0.3, 1)},
        {"capped_quadratic(1,5)", gen::GeneratorFunctional::capped_quadratic(1.0, 5.0, 1)},
    };
    for (const auto& [name, g] : batteries) {
        const auto rep = bsde::check_risk_axioms(g, cfg);
        const bool ok = rep.all_applicable_pass();
        all_ok = all_ok && ok;
        os << name << ": applicable axioms " << (ok ? "pass" : "FAIL") << "; ";
    }
    {
        const auto rep = bsde::check_risk_axioms(gen::GeneratorFunctional::linear_y(1.0, 1), cfg);
        const auto* ti = rep.find("trans_invariance");
        const bool flagged = ti && !ti->applicable && ti->counterexample_found;
        all_ok = all_ok && flagged;
        os << "linear_y(1): trans-invariance counterexample "
           << (flagged ? "flagged" : "MISSING");
    }
    r.seconds = timer.seconds();
    r.pass = all_ok;
    r.detail = os.str();
    return r;
}

CriterionResult c6_projection(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 6;
    r.name = "projection geometry (idempotence, nonexpansiveness, oracle match)";
    rng::SequenceStream rs(seed, 61);

    const auto box = viability::ConvexSetK::box(Eigen::Vector2d(-1.0, 0.0), Eigen::Vector2d(2.0, 1.0));
    const auto ball = viability::ConvexSetK::ball(Eigen::Vector2d(0.5, -0.5), 1.5);
    MatrixXd A(3, 2);
    A << -1, 0, 0, -1, 1, 1;
    VectorXd b(3);
    b << 0, 0, 1;
    const auto tri = viability::ConvexSetK::polyhedron(A, b);

    double worst_idem = 0.0, worst_nonexp = 0.0;
    const int npoints = 10000;
    for (const auto* K : {&box, &ball, &tri}) {
        for (int i = 0; i < npoints; ++i) {
            Eigen::Vector2d a(rs.uniform(-4.0, 4.0), rs.uniform(-4.0, 4.0));
            Eigen::Vector2d c(rs.uniform(-4.0, 4.0), rs.uniform(-4.0, 4.0));
            const VectorXd pa = K->project(a);
            const VectorXd pc = K->project(c);
            worst_idem = std::max(worst_idem, (K->project(pa) - pa).norm());
            const double lip = (pa - pc).norm() - (a - c).norm();
            worst_nonexp = std::max(worst_nonexp, lip);
        }
    }

    double worst_oracle = 0.0;
    {
        const VectorXd lo = Eigen::Vector2d(-0.5, -0.5), hi = Eigen::Vector2d(1.5, 1.5);
        // The pinned corner case plus random exterior points.
        std::vector<VectorXd> queries = {Eigen::Vector2d(1.0, 1.0)};
        for (int i = 0; i < 10; ++i)
            queries.push_back(Eigen::Vector2d(rs.uniform(0.5, 3.0), rs.uniform(0.5, 3.0)));
        for (std::size_t i = 0; i < queries.size(); ++i) {
            const int base = i == 0 ? 2000 : 400;
            const VectorXd oracle = grid_projection_oracle(A, b, lo, hi, queries[i], base);
            worst_oracle = std::max(worst_oracle, (tri.project(queries[i]) - oracle).norm());
        }
    }

    r.seconds = timer.seconds();
    r.pass = worst_idem <= 1e-10 && worst_nonexp <= 1e-12 && worst_oracle <= 1e-6;
    std::ostringstream os;
    os << "idempotence defect " << fd(worst_idem) << " <= 1e-10; nonexpansiveness excess "
       << fd(worst_nonexp) << " <= 1e-12; polyhedron-vs-grid-oracle " << fd(worst_oracle)
       << " <= 1e-6";
    r.detail = os.str();
    return r;
}

CriterionResult c7_bsvp(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 7;
    r.name = "viability inequality, box target with zero generators";
    const auto model = uncontrolled_model_1d(0.0, 0.0, 1.0);
    const auto K = viability::ConvexSetK::box(Eigen::Vector2d(-1.0, -1.0), Eigen::Vector2d(1.0, 1.0));

    const gen::PlainGenerator zero1(gen::GeneratorFunctional::zero(1));
    std::vector<const gen::BsdeGenerator*> G = {&zero1, &zero1};

    viability::BsvpSamplerConfig cfg;
    cfg.num_samples = 2000;  // keeps >= 1000 exterior draws from the shell
    cfg.y_lo = Eigen::Vector2d(-2.0, -2.0);
    cfg.y_hi = Eigen::Vector2d(2.0, 2.0);
    cfg.seed = seed;
    const auto rep = viability::check_bsvp_inequality(model, G, K, cfg);

    // Numeric Hessian against the closed-form box diagonal away from facets.
    rng::SequenceStream rs(seed, 71);
    double worst_h = 0.0;
    int checked = 0;
    while (checked < 200) {
        Eigen::Vector2d y(rs.uniform(-2.0, 2.0), rs.uniform(-2.0, 2.0));
        const double step = 1e-4 * (1.0 + y.norm());
        bool near_facet = false;
        for (int i = 0; i < 2; ++i)
            if (std::abs(y[i] - (-1.0)) < 20 * step || std::abs(y[i] - 1.0) < 20 * step)
                near_facet = true;
        if (near_facet) continue;
        const MatrixXd H = viability::numeric_hessian_dist_sq(K, y, step);
        MatrixXd Href = MatrixXd::Zero(2, 2);
        Href.diagonal() = K.box_hessian_diagonal(y);
        worst_h = std::max(worst_h, (H - Href).cwiseAbs().maxCoeff());
        ++checked;
    }

    r.seconds = timer.seconds();
    r.pass = !rep.vacuous && rep.exterior >= 1000 && rep.c_star_sup == 0.0 && rep.holds_with(0.0) &&
             worst_h <= 1e-4;
    std::ostringstream os;
    os << rep.exterior << " exterior samples; C* = " << fd(rep.c_star_sup)
       << " (certified C = 0); numeric-vs-closed-form Hessian defect " << fd(worst_h)
       << " <= 1e-4";
    r.detail = os.str();
    return r;
}

CriterionResult c8_heat(std::uint64_t) {
    Timer timer;
    CriterionResult r;
    r.id = 8;
    r.name = "heat-polynomial value oracle and grid convergence";

    const double a = 2.0, T = 1.0;
    auto model = uncontrolled_model_1d(0.0, 0.0, std::sqrt(a));
    gen::RiskCostSpec costs;
    costs.running = {gen::CostField::zero()};
    {
        gen::TerminalField psi;
        psi.P = MatrixXd::Constant(1, 1, 1.0);  // x^2
        costs.terminal = {psi};
    }
    const auto g0 = gen::GeneratorFunctional::zero(1);

    hjb::HjbGridSpec spec;
    spec.space.d = 1;
    spec.space.lo = vec1(-5.0);
    spec.space.hi = vec1(5.0);
    spec.space.nodes = {200, 1};
    spec.time_steps = 400;
    spec.control_resolution = 1;
    spec.auto_time_refine = false;

    // The requested 200x400 grid violates the explicit-scheme CFL bound;
    // the solver must refuse and name the required step count, and the
    // rerun at that count must meet the error bound.
    bool refused = false;
    int required = 0;
    try {
        (void)hjb::solve_hjb_system(model, costs, g0, nullptr, {0}, 0.0, T, spec);
    } catch (const NumericalError&) {
        refused = true;
    }
    spec.auto_time_refine = true;
    const auto res = hjb::solve_hjb_system(model, costs, g0, nullptr, {0}, 0.0, T, spec);
    required = res.diagnostics.required_steps;

    double max_err = 0.0;
    for (int node = 1; node < spec.space.nodes[0] - 1; ++node) {
        const double x = spec.space.point(node)[0];
        const double exact = x * x + a * T;  // phi(0,x) = x^2 + a(T - t)
        max_err = std::max(max_err, std::abs(res.value.at(0, 0, node) - exact));
    }

    // Spatial convergence order on the quartic heat polynomial
    // phi(t,x) = x^4 + 6 a tau x^2 + 3 a^2 tau^2 (the x^2 instance is
    // reproduced exactly by the scheme, so it cannot measure an order).
    gen::RiskCostSpec costs4;
    costs4.running = {gen::CostField::zero()};
    {
        gen::TerminalField psi;
        psi.kind = gen::TerminalField::Kind::Polynomial1D;
        psi.coeffs = {0.0, 0.0, 0.0, 0.0, 1.0};
        costs4.terminal = {psi};
    }
    std::vector<double> errs;
    for (int nn : {51, 101, 201, 401}) {
        hjb::HjbGridSpec s4 = spec;
        s4.space.nodes = {nn, 1};
        s4.time_steps = 1;
        s4.auto_time_refine = true;
        const auto r4 = hjb::solve_hjb_system(model, costs4, g0, nullptr, {0}, 0.0, T, s4);
        double err = 0.0;
        for (int node = 0; node < nn; ++node) {
            const double x = s4.space.point(node)[0];
            if (std::abs(x) > 2.5) continue;
            const double exact = x * x * x * x + 6.0 * a * T * x * x + 3.0 * a * a * T * T;
            err = std::max(err, std::abs(r4.value.at(0, 0, node) - exact));
        }
        errs.push_back(err);
    }
    // Least-squares slope of log2(err) against refinement level.
    double order = 0.0;
    {
        const int m = static_cast<int>(errs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < m; ++i) {
            const double x = i, y = -std::log2(errs[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }

    r.seconds = timer.seconds();
    r.pass = refused && max_err <= 1e-2 && order >= 1.8 && r.seconds < 60.0;
    std::ostringstream os;
    os << "CFL refusal at 200x400 observed (required M_t = " << required
       << "); max interior error " << fd(max_err) << " <= 0.01 after refinement; observed order "
       << fd(order) << " >= 1.8 over three refinements; runtime limit 60 s";
    r.detail = os.str();
    return r;
}

struct LqInstance {
    sde::DiffusionModel model;
    gen::RiskCostSpec costs;
    hjb::HjbGridSpec spec;
};

LqInstance lq_instance() {
    LqInstance lq;
    lq.model.state_dim = 1;
    lq.model.num_agents = 1;
    sde::Box box;
    box.lo = vec1(-5.0);
    box.hi = vec1(5.0);
    lq.model.control_boxes = {box};
    lq.model.drift.A = MatrixXd::Zero(1, 1);
    lq.model.drift.B = MatrixXd::Identity(1, 1);
    lq.model.drift.b = VectorXd::Zero(1);
    lq.model.diffusion.constant = MatrixXd::Identity(1, 1);

    gen::CostField c;
    c.Q = MatrixXd::Identity(1, 1);  // x^2
    c.R = MatrixXd::Identity(1, 1);  // u^2
    lq.costs.running = {c};
    lq.costs.terminal = {gen::TerminalField::constant(0.0)};

    lq.spec.space.d = 1;
    lq.spec.space.lo = vec1(-6.0);
    lq.spec.space.hi = vec1(6.0);
    lq.spec.space.nodes = {601, 1};
    lq.spec.time_steps = 100;
    lq.spec.control_resolution = 129;
    lq.spec.auto_time_refine = true;
    return lq;
}

CriterionResult c9_lq(std::uint64_t) {
    Timer timer;
    CriterionResult r;
    r.id = 9;
    r.name = "linear-quadratic control against the Riccati oracle";
    const auto lq = lq_instance();
    const auto g0 = gen::GeneratorFunctional::zero(1);
    const auto res = hjb::solve_hjb_system(lq.model, lq.costs, g0, nullptr, {0}, 0.0, 1.0, lq.spec);
    const RiccatiOracle oracle(1.0);

    double worst_rel = 0.0;
    for (double x = -2.0; x <= 2.0 + 1e-12; x += 0.5) {
        const double num = res.value.value(0, 0.0, vec1(x));
        const double ref = oracle.value(0.0, x);
        worst_rel = std::max(worst_rel, std::abs(num - ref) / std::abs(ref));
    }

    const double spacing = 10.0 / (lq.spec.control_resolution - 1);
    double worst_pol = 0.0;
    const int mt = res.value.time.steps;
    for (int k : {0, mt / 2}) {
        const double t = res.value.time.time(k);
        const double q = oracle.q_at(t);
        for (int node = 0; node < res.value.space.total(); ++node) {
            const double x = res.value.space.point(node)[0];
            if (std::abs(x) > 2.0) continue;
            const double u = res.policy.control(0, k, node)[0];
            const double ref = std::clamp(-q * x, -5.0, 5.0);
            worst_pol = std::max(worst_pol, std::abs(u - ref));
        }
    }

    r.seconds = timer.seconds();
    r.pass = worst_rel <= 0.01 && worst_pol <= 2.0 * spacing;
    std::ostringstream os;
    os << "max relative value error on |x|<=2: " << fd(worst_rel)
       << " <= 0.01; max policy deviation " << fd(worst_pol) << " <= 2 spacings = "
       << fd(2.0 * spacing);
    r.detail = os.str();
    return r;
}

CriterionResult c10_crosscheck(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 10;
    r.name = "value-function vs probabilistic crosscheck";
    const auto g0 = gen::GeneratorFunctional::zero(1);
    std::vector<Eigen::VectorXd> points;
    for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) points.push_back(vec1(x));

    // Heat instance.
    auto model_h = uncontrolled_model_1d(0.0, 0.0, std::sqrt(2.0));
    gen::RiskCostSpec costs_h;
    costs_h.running = {gen::CostField::zero()};
    {
        gen::TerminalField psi;
        psi.P = MatrixXd::Constant(1, 1, 1.0);
        costs_h.terminal = {psi};
    }
    hjb::HjbGridSpec spec_h;
    spec_h.space.d = 1;
    spec_h.space.lo = vec1(-5.0);
    spec_h.space.hi = vec1(5.0);
    spec_h.space.nodes = {200, 1};
    spec_h.time_steps = 400;
    spec_h.control_resolution = 1;
    spec_h.auto_time_refine = true;
    const auto res_h = hjb::solve_hjb_system(model_h, costs_h, g0, nullptr, {0}, 0.0, 1.0, spec_h);
    const auto rep_h = hjb::crosscheck_value_mc(res_h.value, model_h, costs_h, g0, res_h.policy,
                                                points, 20000, seed);

    // Linear-quadratic instance under the extracted policy.
    const auto lq = lq_instance();
    const auto res_lq =
        hjb::solve_hjb_system(lq.model, lq.costs, g0, nullptr, {0}, 0.0, 1.0, lq.spec);
    const auto rep_lq = hjb::crosscheck_value_mc(res_lq.value, lq.model, lq.costs, g0,
                                                 res_lq.policy, points, 20000, seed + 1);

    double worst = 0.0;
    for (const auto* rep : {&rep_h, &rep_lq})
        for (const auto& p : rep->points)
            worst = std::max(worst, std::abs(p.pde_value - p.mc_value) - p.tolerance);

    r.seconds = timer.seconds();
    r.pass = rep_h.all_pass() && rep_lq.all_pass();
    std::ostringstream os;
    os << "heat and LQ instances at 5 interior points each: worst excess over combined tolerance "
       << fd(worst) << " (<= 0 passes)";
    r.detail = os.str();
    return r;
}

CriterionResult c11_equilibrium(std::uint64_t) {
    Timer timer;
    CriterionResult r;
    r.id = 11;
    r.name = "decoupled equilibrium reached in one sweep";

    sde::DiffusionModel model;
    model.state_dim = 2;
    model.num_agents = 2;
    sde::Box box;
    box.lo = vec1(-5.0);
    box.hi = vec1(5.0);
    model.control_boxes = {box, box};
    model.drift.A = MatrixXd::Zero(2, 2);
    model.drift.B = MatrixXd::Identity(2, 2);
    model.drift.b = VectorXd::Zero(2);
    model.diffusion.constant = MatrixXd::Identity(2, 2);

    gen::RiskCostSpec costs;
    for (int j = 0; j < 2; ++j) {
        gen::CostField c;
        c.Q = MatrixXd::Zero(2, 2);
        c.Q(j, j) = 1.0;
        c.R = MatrixXd::Identity(1, 1);
        costs.running.push_back(c);
        costs.terminal.push_back(gen::TerminalField::constant(0.0));
    }
    const auto g0 = gen::GeneratorFunctional::zero(2);

    hjb::HjbGridSpec spec;
    spec.space.d = 2;
    spec.space.lo = Eigen::Vector2d(-3.0, -3.0);
    spec.space.hi = Eigen::Vector2d(3.0, 3.0);
    spec.space.nodes = {41, 41};
    spec.time_steps = 50;
    spec.control_resolution = 33;
    spec.auto_time_refine = true;

    eq::EquilibriumConfig ecfg;
    ecfg.tol = 1e-12;
    ecfg.max_iters = 5;
    const auto eqr = eq::gauss_seidel_equilibrium(model, costs, g0, nullptr, 0.0, 1.0, spec, ecfg);

    // Single-agent oracle: the same control problem on its own axis.
    sde::DiffusionModel m1;
    m1.state_dim = 1;
    m1.num_agents = 1;
    m1.control_boxes = {box};
    m1.drift.A = MatrixXd::Zero(1, 1);
    m1.drift.B = MatrixXd::Identity(1, 1);
    m1.drift.b = VectorXd::Zero(1);
    m1.diffusion.constant = MatrixXd::Identity(1, 1);
    gen::RiskCostSpec c1;
    {
        gen::CostField c;
        c.Q = MatrixXd::Identity(1, 1);
        c.R = MatrixXd::Identity(1, 1);
        c1.running = {c};
        c1.terminal = {gen::TerminalField::constant(0.0)};
    }
    hjb::HjbGridSpec s1;
    s1.space.d = 1;
    s1.space.lo = vec1(-3.0);
    s1.space.hi = vec1(3.0);
    s1.space.nodes = {41, 1};
    s1.time_steps = 50;
    s1.control_resolution = 33;
    s1.auto_time_refine = true;
    const auto single = hjb::solve_hjb_system(m1, c1, gen::GeneratorFunctional::zero(1), nullptr,
                                              {0}, 0.0, 1.0, s1);

    const double spacing = 10.0 / (spec.control_resolution - 1);
    double worst = 0.0;
    for (double t : {0.0, 0.5, 0.9}) {
        for (double xa = -2.5; xa <= 2.5 + 1e-12; xa += 0.5) {
            for (double xo : {-2.0, 0.0, 1.5}) {
                const double ref = single.policy.control_at(0, t, vec1(xa))[0];
                Eigen::Vector2d x1(xa, xo), x2(xo, xa);
                worst = std::max(worst,
                                 std::abs(eqr.profile.control_at(0, t, x1)[0] - ref));
                worst = std::max(worst,
                                 std::abs(eqr.profile.control_at(1, t, x2)[0] - ref));
            }
        }
    }

    // One sweep suffices: the second sweep must see zero change, and a
    // rerun from the fixed point must change nothing at all.
    const bool one_sweep = eqr.report.per_sweep_change.size() >= 2 &&
                           eqr.report.per_sweep_change[1][0] == 0.0 &&
                           eqr.report.per_sweep_change[1][1] == 0.0;
    const auto rerun =
        eq::gauss_seidel_equilibrium(model, costs, g0, &eqr.profile, 0.0, 1.0, spec, ecfg);
    const bool rerun_fixed = rerun.report.sweeps == 1 && rerun.report.last_max_change() == 0.0;

    r.seconds = timer.seconds();
    r.pass = one_sweep && rerun_fixed && worst <= spacing;
    std::ostringstream os;
    os << "sweep-2 change = 0: " << (one_sweep ? "yes" : "NO") << "; rerun fixed point: "
       << (rerun_fixed ? "yes" : "NO") << "; max deviation from single-agent optima "
       << fd(worst) << " <= control spacing " << fd(spacing);
    r.detail = os.str();
    return r;
}

CriterionResult c12_pareto(std::uint64_t seed) {
    Timer timer;
    CriterionResult r;
    r.id = 12;
    r.name = "non-dominated filter against the pairwise oracle";
    int bad = 0;
    for (int rep = 0; rep < 20; ++rep) {
        rng::SequenceStream rs(seed + rep, 101);
        std::vector<VectorXd> pts;
        for (int i = 0; i < 1000; ++i) {
            VectorXd v(3);
            for (int c = 0; c < 3; ++c) v[c] = rs.uniform(0.0, 1.0);
            pts.push_back(v);
        }
        const auto got = eq::pareto_filter_indices(pts);
        // Literal definition: keep i iff no j dominates it.
        std::vector<int> want;
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            bool dominated = false;
            for (int j = 0; j < static_cast<int>(pts.size()) && !dominated; ++j)
                if (j != i && eq::pareto_dominates(pts[j], pts[i])) dominated = true;
            if (!dominated) want.push_back(i);
        }
        if (got != want) ++bad;
    }
    r.seconds = timer.seconds();
    r.pass = bad == 0;
    std::ostringstream os;
    os << (20 - bad) << "/20 repetitions match the brute-force oracle exactly (1000 points in R^3)";
    r.detail = os.str();
    return r;
}

CriterionResult c13_frontier(std::uint64_t) {
    Timer timer;
    CriterionResult r;
    r.id = 13;
    r.name = "allocation frontier sweep";

    sde::DiffusionModel model;
    model.state_dim = 1;
    model.num_agents = 2;
    sde::Box box;
    box.lo = vec1(-1.0);
    box.hi = vec1(1.0);
    model.control_boxes = {box, box};
    model.drift.A = MatrixXd::Zero(1, 1);
    model.drift.B = MatrixXd::Ones(1, 2);
    model.drift.b = VectorXd::Zero(1);
    model.diffusion.constant = MatrixXd::Identity(1, 1);

    std::vector<gen::CostField> running;
    for (int j = 0; j < 2; ++j) {
        gen::CostField c;
        c.R = MatrixXd::Identity(1, 1);
        running.push_back(c);
    }
    gen::TerminalField L;
    L.P = MatrixXd::Identity(1, 1);  // aggregate exposure x^2

    hjb::HjbGridSpec spec;
    spec.space.d = 1;
    spec.space.lo = vec1(-4.0);
    spec.space.hi = vec1(4.0);
    spec.space.nodes = {101, 1};
    spec.time_steps = 100;
    spec.control_resolution = 17;
    spec.auto_time_refine = true;

    eq::FrontierConfig fcfg;
    fcfg.resolution = 10;
    fcfg.x0 = vec1(0.5);
    fcfg.T = 1.0;
    fcfg.equilibrium.tol = 1e-9;
    fcfg.equilibrium.max_iters = 10;

    const auto pts = eq::allocation_frontier(model, running, gen::GeneratorFunctional::zero(1), L,
                                             spec, fcfg);
    bool all_solved = pts.size() == 11;
    double worst_recon = 0.0;
    for (const auto& p : pts) {
        all_solved = all_solved && p.solved;
        worst_recon = std::max(worst_recon, p.reconstruction_error);
    }
    // Post-hoc flag agreement.
    std::vector<VectorXd> risks;
    for (const auto& p : pts) risks.push_back(p.risk);
    const auto keep = eq::pareto_filter_indices(risks);
    std::vector<bool> want(pts.size(), false);
    for (int i : keep) want[i] = true;
    bool flags_ok = true;
    for (std::size_t i = 0; i < pts.size(); ++i) flags_ok = flags_ok && pts[i].pareto == want[i];

    r.seconds = timer.seconds();
    r.pass = all_solved && worst_recon <= 1e-12 && flags_ok;
    std::ostringstream os;
    os << pts.size() << " allocation points solved; max reconstruction defect " << fd(worst_recon)
       << " <= 1e-12; Pareto flags " << (flags_ok ? "agree" : "DISAGREE")
       << " with the post-hoc filter";
    r.detail = os.str();
    return r;
}

}  // namespace

AcceptanceOutcome run_all(std::uint64_t seed) {
    AcceptanceOutcome out;
    out.results.push_back(c1_gzero_reduction(seed));
    out.results.push_back(c2_linear_z(seed));
    out.results.push_back(c3_linear_y(seed));
    out.results.push_back(c4_comparison(seed));
    out.results.push_back(c5_axioms(seed));
    out.results.push_back(c6_projection(seed));
    out.results.push_back(c7_bsvp(seed));
    out.results.push_back(c8_heat(seed));
    out.results.push_back(c9_lq(seed));
    out.results.push_back(c10_crosscheck(seed));
    out.results.push_back(c11_equilibrium(seed));
    out.results.push_back(c12_pareto(seed));
    out.results.push_back(c13_frontier(seed));
    return out;
}

nlohmann::json to_json(const AcceptanceOutcome& o) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : o.results)
        checks.push_back({{"id", r.id},
                          {"name", r.name},
                          {"status", r.pass ? "pass" : "fail"},
                          {"detail", r.detail}});
    return nlohmann::json{{"overall", o.all_pass() ? "pass" : "fail"},
                          {"passed", std::count_if(o.results.begin(), o.results.end(),
                                                   [](const auto& r) { return r.pass; })},
                          {"total", o.results.size()},
                          {"checks", checks}};
}

std::string to_text(const AcceptanceOutcome& o) {
    std::ostringstream os;
    // Failing checks first.
    std::vector<const CriterionResult*> order;
    for (const auto& r : o.results)
        if (!r.pass) order.push_back(&r);
    for (const auto& r : o.results)
        if (r.pass) order.push_back(&r);
    for (const auto* r : order)
        os << (r->pass ? "[PASS] " : "[FAIL] ") << r->id << ". " << r->name << ": " << r->detail
           << "\n";
    os << (o.all_pass() ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << " ("
       << std::count_if(o.results.begin(), o.results.end(), [](const auto& r) { return r.pass; })
       << "/" << o.results.size() << ")\n";
    return os.str();
}

}  // namespace riskbsde::accept
