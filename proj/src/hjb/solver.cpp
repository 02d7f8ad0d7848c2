#include "riskbsde/hjb/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "riskbsde/util/parallel.hpp"

namespace riskbsde::hjb {

std::vector<Eigen::VectorXd> control_grid(const sde::Box& box, int resolution) {
    if (resolution < 1) throw ValidationError("hjb: control grid resolution must be >= 1");
    const int m = box.dim();
    auto axis = [&](int i) {
        std::vector<double> pts;
        if (resolution == 1 || box.lo[i] == box.hi[i]) {
            pts.push_back(box.lo[i] == box.hi[i] ? box.lo[i] : 0.5 * (box.lo[i] + box.hi[i]));
        } else {
            for (int k = 0; k < resolution; ++k)
                pts.push_back(box.lo[i] + k * (box.hi[i] - box.lo[i]) / (resolution - 1));
        }
        return pts;
    };
    std::vector<std::vector<double>> axes;
    for (int i = 0; i < m; ++i) axes.push_back(axis(i));
    std::vector<Eigen::VectorXd> out;
    std::vector<int> idx(m, 0);
    for (;;) {
        Eigen::VectorXd u(m);
        for (int i = 0; i < m; ++i) u[i] = axes[i][idx[i]];
        out.push_back(u);
        int i = m - 1;
        for (; i >= 0; --i) {
            if (++idx[i] < static_cast<int>(axes[i].size())) break;
            idx[i] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

namespace {

struct Derivs {
    double d2[2] = {0, 0};
    double fwd[2] = {0, 0};
    double bwd[2] = {0, 0};
    double cen[2] = {0, 0};
};

// 1-d stencils along `dim`; one-sided second-order at the boundary.
void axis_derivs(const double* ph, const SpatialGrid& g, int node, int dim, Derivs& out) {
    const int n = g.nodes[dim];
    const int stride = dim == 0 ? g.nodes[1] : 1;
    const int pos = dim == 0 ? g.ix(node) : g.iy(node);
    const double h = g.dx(dim);
    const double v = ph[node];
    if (pos == 0) {
        const double v1 = ph[node + stride], v2 = ph[node + 2 * stride], v3 = ph[node + 3 * stride];
        out.d2[dim] = (2 * v - 5 * v1 + 4 * v2 - v3) / (h * h);
        const double d1 = (-3 * v + 4 * v1 - v2) / (2 * h);
        out.fwd[dim] = out.bwd[dim] = out.cen[dim] = d1;
    } else if (pos == n - 1) {
        const double v1 = ph[node - stride], v2 = ph[node - 2 * stride], v3 = ph[node - 3 * stride];
        out.d2[dim] = (2 * v - 5 * v1 + 4 * v2 - v3) / (h * h);
        const double d1 = (3 * v - 4 * v1 + v2) / (2 * h);
        out.fwd[dim] = out.bwd[dim] = out.cen[dim] = d1;
    } else {
        const double vp = ph[node + stride], vm = ph[node - stride];
        out.d2[dim] = (vp - 2 * v + vm) / (h * h);
        out.fwd[dim] = (vp - v) / h;
        out.bwd[dim] = (v - vm) / h;
        out.cen[dim] = (vp - vm) / (2 * h);
    }
}

double cross_deriv(const double* ph, const SpatialGrid& g, int node) {
    const int i = g.ix(node), j = g.iy(node);
    const int ip = std::min(i + 1, g.nodes[0] - 1), im = std::max(i - 1, 0);
    const int jp = std::min(j + 1, g.nodes[1] - 1), jm = std::max(j - 1, 0);
    const double hx = (ip - im) * g.dx(0);
    const double hy = (jp - jm) * g.dx(1);
    return (ph[g.flat(ip, jp)] - ph[g.flat(ip, jm)] - ph[g.flat(im, jp)] + ph[g.flat(im, jm)]) /
           (hx * hy);
}

// Precomputed per-solve data shared by the stepper, extract_policy and the
// residual check. Exploits the catalog structure: diffusion is
// control-independent and drift is affine in the control, so per-candidate
// contributions (B_j u_c, control part of c_j) are computed once.
struct Workspace {
    const sde::DiffusionModel& model;
    const gen::RiskCostSpec& costs;
    const gen::GeneratorFunctional& g;
    const SpatialGrid& space;
    int n, d, total, total_control;
    std::vector<int> cdims, offsets;
    std::vector<std::vector<Eigen::VectorXd>> candidates;   // per agent
    std::vector<std::vector<Eigen::VectorXd>> cand_dm;      // per agent: B_j u_c
    std::vector<std::vector<double>> cand_cost;             // per agent: u^T R u + r.u
    std::vector<Eigen::MatrixXd> sigma_node;                // per node
    std::vector<Eigen::MatrixXd> a_node;                    // per node
    std::vector<Eigen::VectorXd> x_node;                    // per node
    std::vector<std::vector<double>> cost_x;                // per agent per node (x part + c0)

    Workspace(const sde::DiffusionModel& m, const gen::RiskCostSpec& c,
              const gen::GeneratorFunctional& gf, const SpatialGrid& s, int control_resolution)
        : model(m), costs(c), g(gf), space(s) {
        n = model.num_agents;
        d = model.state_dim;
        total = space.total();
        total_control = 0;
        for (int j = 0; j < n; ++j) {
            cdims.push_back(model.control_boxes[j].dim());
            offsets.push_back(total_control);
            total_control += cdims.back();
        }
        candidates.resize(n);
        cand_dm.resize(n);
        cand_cost.resize(n);
        const bool affine = model.drift.kind == sde::VectorField::Kind::Affine;
        for (int j = 0; j < n; ++j) {
            candidates[j] = control_grid(model.control_boxes[j], control_resolution);
            for (const auto& u : candidates[j]) {
                Eigen::VectorXd dm = Eigen::VectorXd::Zero(d);
                if (affine && model.drift.B.size())
                    dm = model.drift.B.middleCols(offsets[j], cdims[j]) * u;
                cand_dm[j].push_back(dm);
                const auto& rc = costs.running[j];
                double cu = 0.0;
                if (rc.R.size()) cu += u.dot(rc.R * u);
                if (rc.r.size()) cu += rc.r.dot(u);
                cand_cost[j].push_back(cu);
            }
        }
        sigma_node.resize(total);
        a_node.resize(total);
        x_node.resize(total);
        cost_x.assign(n, std::vector<double>(total, 0.0));
        const Eigen::VectorXd u_mid = [&] {
            Eigen::VectorXd u(total_control);
            for (int j = 0; j < n; ++j)
                u.segment(offsets[j], cdims[j]) = model.control_boxes[j].midpoint();
            return u;
        }();
        for (int node = 0; node < total; ++node) {
            x_node[node] = space.point(node);
            sigma_node[node] = model.diffusion.eval(0.0, x_node[node], u_mid);
            a_node[node] = sigma_node[node] * sigma_node[node].transpose();
            for (int j = 0; j < n; ++j) {
                const auto& rc = costs.running[j];
                double cx = rc.c0;
                if (rc.Q.size()) cx += x_node[node].dot(rc.Q * x_node[node]);
                if (rc.q.size()) cx += rc.q.dot(x_node[node]);
                cost_x[j][node] = cx;
            }
        }
    }

    // Drift with agent j's control slot zeroed; candidate deltas add on top.
    Eigen::VectorXd base_drift(double t, int node, const Eigen::VectorXd& u_frozen, int j) const {
        Eigen::VectorXd u = u_frozen;
        u.segment(offsets[j], cdims[j]).setZero();
        return model.drift.eval(t, x_node[node], u);
    }

    struct NodeEval {
        double diff_term;   // 0.5 sum a_ii d2_i + cross
        double g_plus_cx;   // g(t, phi, z) + x-part of cost
        Derivs dv;
    };

    NodeEval node_common(double t, int j, int node, const double* ph, double* zbuf) const {
        NodeEval ne;
        axis_derivs(ph, space, node, 0, ne.dv);
        if (d == 2) axis_derivs(ph, space, node, 1, ne.dv);
        const auto& a = a_node[node];
        double diff = 0.0;
        for (int i = 0; i < d; ++i) diff += 0.5 * a(i, i) * ne.dv.d2[i];
        if (d == 2 && a(0, 1) != 0.0) diff += a(0, 1) * cross_deriv(ph, space, node);
        ne.diff_term = diff;
        const auto& sg = sigma_node[node];
        for (int c = 0; c < d; ++c) {
            double acc = 0.0;
            for (int i = 0; i < d; ++i) acc += ne.dv.cen[i] * sg(i, c);
            zbuf[c] = acc;
        }
        const Eigen::Map<const Eigen::VectorXd> z(zbuf, d);
        ne.g_plus_cx = g.eval(t, ph[node], z) + cost_x[j][node];
        return ne;
    }

    double upwind(const Derivs& dv, const double* m) const {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) acc += m[i] >= 0.0 ? m[i] * dv.fwd[i] : m[i] * dv.bwd[i];
        return acc;
    }
};

struct MinimizeResult {
    int best = 0;
    double value = std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
};

MinimizeResult minimize_node(const Workspace& ws, int j, const Workspace::NodeEval& ne,
                             const Eigen::VectorXd& base_m) {
    MinimizeResult res;
    double second = std::numeric_limits<double>::infinity();
    double m[2];
    const std::size_t nc = ws.candidates[j].size();
    for (std::size_t c = 0; c < nc; ++c) {
        const auto& dm = ws.cand_dm[j][c];
        for (int i = 0; i < ws.d; ++i) m[i] = base_m[i] + dm[i];
        const double v = ne.diff_term + ws.upwind(ne.dv, m) + ws.cand_cost[j][c] + ne.g_plus_cx;
        if (v < res.value) {
            second = res.value;
            res.value = v;
            res.best = static_cast<int>(c);
        } else if (v < second) {
            second = v;
        }
    }
    res.gap = second - res.value;
    return res;
}

double frozen_objective(const Workspace& ws, int j, const Workspace::NodeEval& ne, double t,
                        int node, const Eigen::VectorXd& u_frozen) {
    const Eigen::VectorXd mfull = ws.model.drift.eval(t, ws.x_node[node], u_frozen);
    double m[2];
    for (int i = 0; i < ws.d; ++i) m[i] = mfull[i];
    const Eigen::VectorXd uj = u_frozen.segment(ws.offsets[j], ws.cdims[j]);
    const auto& rc = ws.costs.running[j];
    double cu = 0.0;
    if (rc.R.size()) cu += uj.dot(rc.R * uj);
    if (rc.r.size()) cu += rc.r.dot(uj);
    return ne.diff_term + ws.upwind(ne.dv, m) + cu + ne.g_plus_cx;
}

PolicyRow extract_policy_impl(const ValueGrid& grid, const Workspace& ws,
                              const PolicyGrid& frozen, int agent, int single_slab) {
    const int total = ws.total;
    PolicyRow row;
    const int k_lo = single_slab >= 0 ? single_slab : 0;
    const int k_hi = single_slab >= 0 ? single_slab : grid.time.steps;
    row.u.assign(static_cast<std::size_t>(k_hi - k_lo + 1) * total * ws.cdims[agent], 0.0);
    row.min_argmin_gap = std::numeric_limits<double>::infinity();

    Eigen::VectorXd u_frozen(ws.total_control);
    double zbuf[2];
    for (int k = k_lo; k <= k_hi; ++k) {
        const double t = grid.time.time(k);
        const double* ph = grid.slab(k, agent);
        for (int node = 0; node < total; ++node) {
            for (int jj = 0; jj < ws.n; ++jj)
                u_frozen.segment(ws.offsets[jj], ws.cdims[jj]) = frozen.control(jj, k, node);
            const auto ne = ws.node_common(t, agent, node, ph, zbuf);
            const Eigen::VectorXd base_m = ws.base_drift(t, node, u_frozen, agent);
            const MinimizeResult mr = minimize_node(ws, agent, ne, base_m);
            for (int c = 0; c < ws.cdims[agent]; ++c)
                row.u[(static_cast<std::size_t>(k - k_lo) * total + node) * ws.cdims[agent] + c] =
                    ws.candidates[agent][mr.best][c];
            if (ws.candidates[agent].size() > 1) {
                row.min_argmin_gap = std::min(row.min_argmin_gap, mr.gap);
                if (mr.gap < 1e-9) ++row.tie_count;
            }
        }
    }
    return row;
}

}  // namespace

HjbResult solve_hjb_system(const sde::DiffusionModel& model, const gen::RiskCostSpec& costs,
                           const gen::GeneratorFunctional& g, const PolicyGrid* frozen,
                           const std::vector<int>& active_agents, double t0, double T,
                           const HjbGridSpec& spec) {
    model.validate();
    costs.validate();
    spec.space.validate();
    const int n = model.num_agents;
    const int d = model.state_dim;
    if (d != spec.space.d) throw ValidationError("hjb: grid dimension must match state_dim");
    if (n > 4) throw ValidationError("hjb: at most 4 agents supported");
    if (costs.num_agents() != n) throw ValidationError("hjb: one cost pair per agent required");
    for (int j : active_agents)
        if (j < 0 || j >= n) throw ValidationError("hjb: active agent index out of range");
    if (!(T > t0)) throw ValidationError("hjb: T must exceed t0");

    Workspace ws(model, costs, g, spec.space, spec.control_resolution);

    // CFL scan over grid nodes and control-box corners.
    double rate = 0.0;
    {
        std::vector<Eigen::VectorXd> corner_controls;
        std::vector<std::vector<Eigen::VectorXd>> per_agent;
        for (int j = 0; j < n; ++j) {
            auto pts = control_grid(model.control_boxes[j], 2);
            pts.push_back(model.control_boxes[j].midpoint());
            per_agent.push_back(pts);
        }
        std::vector<int> idx(n, 0);
        for (;;) {
            Eigen::VectorXd u(ws.total_control);
            for (int j = 0; j < n; ++j) u.segment(ws.offsets[j], ws.cdims[j]) = per_agent[j][idx[j]];
            corner_controls.push_back(u);
            if (corner_controls.size() > 512) break;
            int j = n - 1;
            for (; j >= 0; --j) {
                if (++idx[j] < static_cast<int>(per_agent[j].size())) break;
                idx[j] = 0;
            }
            if (j < 0) break;
        }
        for (int node = 0; node < ws.total; ++node) {
            const auto& a = ws.a_node[node];
            double rdiff = 0.0;
            for (int i = 0; i < d; ++i) rdiff += a(i, i) / (spec.space.dx(i) * spec.space.dx(i));
            if (d == 2) rdiff += std::abs(a(0, 1)) / (spec.space.dx(0) * spec.space.dx(1));
            for (const auto& u : corner_controls) {
                const Eigen::VectorXd m = model.drift.eval(t0, ws.x_node[node], u);
                double r = rdiff;
                for (int i = 0; i < d; ++i) r += std::abs(m[i]) / spec.space.dx(i);
                rate = std::max(rate, r);
            }
        }
    }
    const int required_steps = rate > 0.0 ? static_cast<int>(std::ceil((T - t0) * rate / 0.9)) : 1;
    int steps = spec.time_steps;
    bool refined = false;
    if (steps < required_steps) {
        if (!spec.auto_time_refine) {
            std::ostringstream os;
            os << "hjb: CFL violated: requested M_t=" << steps
               << " but the explicit scheme needs M_t >= " << required_steps << " (dt <= 0.9/"
               << rate << " = " << 0.9 / rate << ")";
            throw NumericalError(os.str());
        }
        steps = required_steps;
        refined = true;
    }

    HjbResult out;
    out.value.space = spec.space;
    out.value.time = {t0, T, steps};
    out.value.num_agents = n;
    out.value.boundary_tag = "interior-monotone+boundary-extrapolation";
    out.value.phi.assign(static_cast<std::size_t>(steps + 1) * n * spec.space.total(), 0.0);
    out.diagnostics.cfl_number = (T - t0) / steps * rate;
    out.diagnostics.required_steps = required_steps;
    out.diagnostics.solved_steps = steps;
    out.diagnostics.auto_refined = refined;
    out.diagnostics.min_argmin_gap = std::numeric_limits<double>::infinity();

    const double dt = out.value.time.dt();
    const int total = ws.total;

    // Frozen controls: supplied profile sampled on this grid, or defaults.
    PolicyGrid frozen_here;
    frozen_here.allocate(spec.space, out.value.time, ws.cdims);
    for (int j = 0; j < n; ++j) {
        const Eigen::VectorXd dflt =
            spec.default_controls.size() == static_cast<std::size_t>(n) &&
                    spec.default_controls[j].size() == ws.cdims[j]
                ? spec.default_controls[j]
                : model.control_boxes[j].midpoint();
        for (int k = 0; k <= steps; ++k)
            for (int node = 0; node < total; ++node) {
                const Eigen::VectorXd v =
                    frozen ? frozen->control_at(j, out.value.time.time(k), ws.x_node[node]) : dflt;
                frozen_here.set_control(j, k, node, v);
            }
    }

    out.policy.allocate(spec.space, out.value.time, ws.cdims);

    for (int j = 0; j < n; ++j) {
        double* ph = out.value.slab(steps, j);
        for (int node = 0; node < total; ++node) ph[node] = costs.terminal[j].eval(ws.x_node[node]);
    }

    std::vector<bool> is_active(n, false);
    for (int j : active_agents) is_active[j] = true;

    const std::size_t chunk = 2048;
    const std::size_t nchunks = (total + chunk - 1) / chunk;
    struct GapAccum {
        double min_gap = std::numeric_limits<double>::infinity();
        long ties = 0;
    };
    std::vector<GapAccum> gaps(nchunks);

    // Interior nodes take the monotone explicit step; boundary nodes are
    // filled afterwards by second-order extrapolation from the new slab
    // (exact for quadratics, stable for the explicit scheme).
    auto is_boundary = [&](int node) {
        const int ix = spec.space.ix(node);
        if (ix == 0 || ix == spec.space.nodes[0] - 1) return true;
        if (d == 2) {
            const int iy = spec.space.iy(node);
            if (iy == 0 || iy == spec.space.nodes[1] - 1) return true;
        }
        return false;
    };
    auto extrapolate_boundary = [&](double* ph) {
        const auto& sp = spec.space;
        if (d == 1) {
            const int nn = sp.nodes[0];
            ph[0] = 3 * ph[1] - 3 * ph[2] + ph[3];
            ph[nn - 1] = 3 * ph[nn - 2] - 3 * ph[nn - 3] + ph[nn - 4];
            return;
        }
        const int nx = sp.nodes[0], ny = sp.nodes[1];
        for (int iy = 1; iy < ny - 1; ++iy) {
            ph[sp.flat(0, iy)] =
                3 * ph[sp.flat(1, iy)] - 3 * ph[sp.flat(2, iy)] + ph[sp.flat(3, iy)];
            ph[sp.flat(nx - 1, iy)] = 3 * ph[sp.flat(nx - 2, iy)] - 3 * ph[sp.flat(nx - 3, iy)] +
                                      ph[sp.flat(nx - 4, iy)];
        }
        for (int ix = 0; ix < nx; ++ix) {
            ph[sp.flat(ix, 0)] =
                3 * ph[sp.flat(ix, 1)] - 3 * ph[sp.flat(ix, 2)] + ph[sp.flat(ix, 3)];
            ph[sp.flat(ix, ny - 1)] = 3 * ph[sp.flat(ix, ny - 2)] - 3 * ph[sp.flat(ix, ny - 3)] +
                                      ph[sp.flat(ix, ny - 4)];
        }
    };

    for (int k = steps - 1; k >= 0; --k) {
        const double t_next = out.value.time.time(k + 1);
        for (int j = 0; j < n; ++j) {
            const double* ph_next = out.value.slab(k + 1, j);
            double* ph_here = out.value.slab(k, j);
            const bool active = is_active[j];
            util::parallel_chunks(total, chunk, [&](std::size_t ci, std::size_t b, std::size_t e) {
                Eigen::VectorXd u_frozen(ws.total_control);
                double zbuf[2];
                for (std::size_t node = b; node < e; ++node) {
                    const int nd = static_cast<int>(node);
                    const bool boundary = is_boundary(nd);
                    for (int jj = 0; jj < n; ++jj)
                        u_frozen.segment(ws.offsets[jj], ws.cdims[jj]) =
                            frozen_here.control(jj, k + 1, nd);
                    const auto ne = ws.node_common(t_next, j, nd, ph_next, zbuf);
                    double step_value;
                    if (active) {
                        const Eigen::VectorXd base_m = ws.base_drift(t_next, nd, u_frozen, j);
                        const MinimizeResult mr = minimize_node(ws, j, ne, base_m);
                        step_value = mr.value;
                        out.policy.set_control(j, k + 1, nd, ws.candidates[j][mr.best]);
                        if (!boundary && ws.candidates[j].size() > 1) {
                            gaps[ci].min_gap = std::min(gaps[ci].min_gap, mr.gap);
                            if (mr.gap < 1e-9) ++gaps[ci].ties;
                        }
                    } else {
                        step_value = frozen_objective(ws, j, ne, t_next, nd, u_frozen);
                        out.policy.set_control(j, k + 1, nd,
                                               frozen_here.control(j, k + 1, nd));
                    }
                    if (boundary) continue;  // value filled by extrapolation below
                    const double v = ph_next[node] + dt * step_value;
                    if (!std::isfinite(v)) {
                        std::ostringstream os;
                        os << "hjb: non-finite update for agent " << j << " at t=" << t_next
                           << ", node " << nd << " (x=[" << ws.x_node[nd].transpose() << "])";
                        throw NumericalError(os.str());
                    }
                    ph_here[node] = v;
                }
            });
            extrapolate_boundary(ph_here);
        }
    }
    for (const auto& ga : gaps) {
        out.diagnostics.min_argmin_gap = std::min(out.diagnostics.min_argmin_gap, ga.min_gap);
        out.diagnostics.tie_count += ga.ties;
    }

    // Initial-slab policy from the same argmin rule applied to phi(t_0).
    for (int j = 0; j < n; ++j) {
        if (is_active[j]) {
            const PolicyRow row = extract_policy_impl(out.value, ws, frozen_here, j, 0);
            for (int node = 0; node < total; ++node) {
                Eigen::VectorXd v(ws.cdims[j]);
                for (int c = 0; c < ws.cdims[j]; ++c)
                    v[c] = row.u[static_cast<std::size_t>(node) * ws.cdims[j] + c];
                out.policy.set_control(j, 0, node, v);
            }
        } else {
            for (int node = 0; node < total; ++node)
                out.policy.set_control(j, 0, node, frozen_here.control(j, 0, node));
        }
    }

    // Discrete-equation residual at interior nodes on sampled slabs.
    {
        double max_res = 0.0;
        Eigen::VectorXd u_frozen(ws.total_control);
        double zbuf[2];
        for (int k : {0, steps / 2, steps - 1}) {
            if (k < 0 || k >= steps) continue;
            const double t_next = out.value.time.time(k + 1);
            for (int j = 0; j < n; ++j) {
                const double* ph_next = out.value.slab(k + 1, j);
                const double* ph_here = out.value.slab(k, j);
                for (int node = 0; node < total; ++node) {
                    const int ix = spec.space.ix(node), iy = spec.space.iy(node);
                    if (ix == 0 || ix == spec.space.nodes[0] - 1) continue;
                    if (d == 2 && (iy == 0 || iy == spec.space.nodes[1] - 1)) continue;
                    for (int jj = 0; jj < n; ++jj)
                        u_frozen.segment(ws.offsets[jj], ws.cdims[jj]) =
                            frozen_here.control(jj, k + 1, node);
                    const auto ne = ws.node_common(t_next, j, node, ph_next, zbuf);
                    double val;
                    if (is_active[j]) {
                        const Eigen::VectorXd base_m = ws.base_drift(t_next, node, u_frozen, j);
                        val = minimize_node(ws, j, ne, base_m).value;
                    } else {
                        val = frozen_objective(ws, j, ne, t_next, node, u_frozen);
                    }
                    max_res = std::max(max_res,
                                       std::abs((ph_here[node] - ph_next[node]) / dt - val));
                }
            }
        }
        out.diagnostics.max_residual = max_res;
    }
    return out;
}

PolicyRow extract_policy(const ValueGrid& grid, const sde::DiffusionModel& model,
                         const gen::RiskCostSpec& costs, const gen::GeneratorFunctional& g,
                         const PolicyGrid& frozen, int agent, int control_resolution) {
    if (grid.space.d != model.state_dim)
        throw ValidationError("extract_policy: grid/model dimension mismatch");
    if (frozen.space.total() != grid.space.total() || frozen.time.steps != grid.time.steps)
        throw ValidationError("extract_policy: frozen profile grid mismatch");
    Workspace ws(model, costs, g, grid.space, control_resolution);
    return extract_policy_impl(grid, ws, frozen, agent, -1);
}

}  // namespace riskbsde::hjb
