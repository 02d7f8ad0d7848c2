#include "riskbsde/io/config.hpp"

#include <fstream>

namespace riskbsde::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError("config." + path + ": " + what);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "must be a JSON number (strings are rejected)");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "must be a JSON integer");
    return j.get<int>();
}

double get_number(const json& j, const std::string& key, const std::string& path, double dflt) {
    auto it = j.find(key);
    return it == j.end() ? dflt : as_number(*it, path + "." + key);
}

int get_int(const json& j, const std::string& key, const std::string& path, int dflt) {
    auto it = j.find(key);
    return it == j.end() ? dflt : as_int(*it, path + "." + key);
}

Eigen::VectorXd as_vector(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "must be an array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = as_number(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

Eigen::MatrixXd as_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "must be a nonempty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) fail(path, "rows must be nonempty arrays");
    Eigen::MatrixXd m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) fail(path, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = as_number(j[r][c], path + "[" + std::to_string(r) + "]");
    }
    return m;
}

json vec_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json mat_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

gen::GeneratorTerm parse_generator_term(const json& j, const std::string& path, int z_dim) {
    const std::string kind = require(j, "kind", path).get<std::string>();
    gen::GeneratorTerm t;
    if (kind == "zero") {
        t.kind = gen::GeneratorTerm::Kind::Zero;
    } else if (kind == "linear_y") {
        t.kind = gen::GeneratorTerm::Kind::LinearY;
        t.b = as_number(require(j, "b", path), path + ".b");
    } else if (kind == "linear_z") {
        t.kind = gen::GeneratorTerm::Kind::LinearZ;
        t.a = as_vector(require(j, "a", path), path + ".a");
        if (t.a.size() != z_dim) fail(path + ".a", "length must equal state_dim");
    } else if (kind == "abs_z") {
        t.kind = gen::GeneratorTerm::Kind::AbsZ;
        t.mu = as_number(require(j, "mu", path), path + ".mu");
    } else if (kind == "capped_quadratic") {
        t.kind = gen::GeneratorTerm::Kind::CappedQuadraticZ;
        t.theta = as_number(require(j, "theta", path), path + ".theta");
        t.cap_R = as_number(require(j, "R", path), path + ".R");
        if (t.cap_R <= 0.0) fail(path + ".R", "cap must be positive");
    } else {
        fail(path + ".kind", "unknown generator kind '" + kind + "'");
    }
    return t;
}

gen::GeneratorFunctional parse_generator(const json& j, const std::string& path, int z_dim) {
    gen::GeneratorFunctional g;
    g.z_dim = z_dim;
    const std::string kind = require(j, "kind", path).get<std::string>();
    if (kind == "sum") {
        const json& terms = require(j, "terms", path);
        if (!terms.is_array()) fail(path + ".terms", "must be an array");
        for (std::size_t i = 0; i < terms.size(); ++i)
            g.terms.push_back(
                parse_generator_term(terms[i], path + ".terms[" + std::to_string(i) + "]", z_dim));
    } else if (kind != "zero") {
        g.terms.push_back(parse_generator_term(j, path, z_dim));
    }
    return g;
}

json generator_term_json(const gen::GeneratorTerm& t) {
    json j;
    switch (t.kind) {
        case gen::GeneratorTerm::Kind::Zero: j["kind"] = "zero"; break;
        case gen::GeneratorTerm::Kind::LinearY:
            j["kind"] = "linear_y";
            j["b"] = t.b;
            break;
        case gen::GeneratorTerm::Kind::LinearZ:
            j["kind"] = "linear_z";
            j["a"] = vec_json(t.a);
            break;
        case gen::GeneratorTerm::Kind::AbsZ:
            j["kind"] = "abs_z";
            j["mu"] = t.mu;
            break;
        case gen::GeneratorTerm::Kind::CappedQuadraticZ:
            j["kind"] = "capped_quadratic";
            j["theta"] = t.theta;
            j["R"] = t.cap_R;
            break;
    }
    return j;
}

json generator_json(const gen::GeneratorFunctional& g) {
    if (g.terms.empty()) return json{{"kind", "zero"}};
    if (g.terms.size() == 1) return generator_term_json(g.terms[0]);
    json terms = json::array();
    for (const auto& t : g.terms) terms.push_back(generator_term_json(t));
    return json{{"kind", "sum"}, {"terms", terms}};
}

gen::CostField parse_cost(const json& j, const std::string& path, int d, int m) {
    const std::string kind = require(j, "kind", path).get<std::string>();
    if (kind == "zero") return gen::CostField::zero();
    if (kind == "constant")
        return gen::CostField::constant(as_number(require(j, "c", path), path + ".c"));
    if (kind != "quadratic") fail(path + ".kind", "unknown running-cost kind '" + kind + "'");
    gen::CostField f;
    if (j.contains("Q")) f.Q = as_matrix(j["Q"], path + ".Q");
    if (j.contains("q")) f.q = as_vector(j["q"], path + ".q");
    if (j.contains("R")) f.R = as_matrix(j["R"], path + ".R");
    if (j.contains("r")) f.r = as_vector(j["r"], path + ".r");
    f.c0 = get_number(j, "c0", path, 0.0);
    if (f.Q.size() && (f.Q.rows() != d || f.Q.cols() != d)) fail(path + ".Q", "must be d x d");
    if (f.q.size() && f.q.size() != d) fail(path + ".q", "must have length d");
    if (f.R.size() && (f.R.rows() != m || f.R.cols() != m))
        fail(path + ".R", "must be m_j x m_j for the agent's control dimension");
    if (f.r.size() && f.r.size() != m) fail(path + ".r", "must have length m_j");
    return f;
}

json cost_json(const gen::CostField& f) {
    if (f.is_zero()) return json{{"kind", "zero"}};
    if (f.Q.size() == 0 && f.q.size() == 0 && f.R.size() == 0 && f.r.size() == 0)
        return json{{"kind", "constant"}, {"c", f.c0}};
    json j{{"kind", "quadratic"}, {"c0", f.c0}};
    if (f.Q.size()) j["Q"] = mat_json(f.Q);
    if (f.q.size()) j["q"] = vec_json(f.q);
    if (f.R.size()) j["R"] = mat_json(f.R);
    if (f.r.size()) j["r"] = vec_json(f.r);
    return j;
}

gen::TerminalField parse_terminal(const json& j, const std::string& path, int d) {
    const std::string kind = require(j, "kind", path).get<std::string>();
    gen::TerminalField f;
    if (kind == "constant") {
        f.c0 = as_number(require(j, "c", path), path + ".c");
    } else if (kind == "linear") {
        f.p = as_vector(require(j, "p", path), path + ".p");
        if (f.p.size() != d) fail(path + ".p", "must have length d");
        f.c0 = get_number(j, "c0", path, 0.0);
    } else if (kind == "quadratic") {
        if (j.contains("P")) {
            f.P = as_matrix(j["P"], path + ".P");
            if (f.P.rows() != d || f.P.cols() != d) fail(path + ".P", "must be d x d");
        }
        if (j.contains("p")) {
            f.p = as_vector(j["p"], path + ".p");
            if (f.p.size() != d) fail(path + ".p", "must have length d");
        }
        f.c0 = get_number(j, "c0", path, 0.0);
    } else if (kind == "polynomial") {
        if (d != 1) fail(path, "polynomial terminal requires state_dim = 1");
        f.kind = gen::TerminalField::Kind::Polynomial1D;
        const json& c = require(j, "coeffs", path);
        if (!c.is_array()) fail(path + ".coeffs", "must be an array");
        for (std::size_t i = 0; i < c.size(); ++i)
            f.coeffs.push_back(as_number(c[i], path + ".coeffs[" + std::to_string(i) + "]"));
    } else {
        fail(path + ".kind", "unknown terminal-cost kind '" + kind + "'");
    }
    return f;
}

json terminal_json(const gen::TerminalField& f) {
    if (f.kind == gen::TerminalField::Kind::Polynomial1D) {
        json c = json::array();
        for (double v : f.coeffs) c.push_back(v);
        return json{{"kind", "polynomial"}, {"coeffs", c}};
    }
    if (f.P.size() == 0 && f.p.size() == 0) return json{{"kind", "constant"}, {"c", f.c0}};
    if (f.P.size() == 0) return json{{"kind", "linear"}, {"p", vec_json(f.p)}, {"c0", f.c0}};
    json j{{"kind", "quadratic"}, {"P", mat_json(f.P)}, {"c0", f.c0}};
    if (f.p.size()) j["p"] = vec_json(f.p);
    return j;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig cfg;
    cfg.schema_version = as_int(require(j, "schema_version", ""), "schema_version");
    if (cfg.schema_version != 1) fail("schema_version", "only version 1 is supported");
    const json& seed = require(j, "seed", "");
    if (!seed.is_number_integer()) fail("seed", "must be a JSON integer (required, no defaults)");
    cfg.seed = seed.get<std::uint64_t>();

    {
        const json& h = require(j, "horizon", "");
        cfg.horizon.t0 = get_number(h, "t0", "horizon", 0.0);
        cfg.horizon.T = as_number(require(h, "T", "horizon"), "horizon.T");
        cfg.horizon.steps = get_int(h, "steps", "horizon", 50);
        cfg.horizon.validate();
    }

    {
        const json& m = require(j, "model", "");
        cfg.model.state_dim = as_int(require(m, "state_dim", "model"), "model.state_dim");
        cfg.model.num_agents = as_int(require(m, "num_agents", "model"), "model.num_agents");
        const json& boxes = require(m, "control_boxes", "model");
        if (!boxes.is_array()) fail("model.control_boxes", "must be an array");
        for (std::size_t b = 0; b < boxes.size(); ++b) {
            const std::string bp = "model.control_boxes[" + std::to_string(b) + "]";
            sde::Box box;
            box.lo = as_vector(require(boxes[b], "lo", bp), bp + ".lo");
            box.hi = as_vector(require(boxes[b], "hi", bp), bp + ".hi");
            cfg.model.control_boxes.push_back(box);
        }
        const json& drift = require(m, "drift", "model");
        const std::string dkind = require(drift, "kind", "model.drift").get<std::string>();
        const int d = cfg.model.state_dim;
        if (dkind == "affine") {
            cfg.model.drift.kind = sde::VectorField::Kind::Affine;
            cfg.model.drift.A = drift.contains("A") ? as_matrix(drift["A"], "model.drift.A")
                                                    : Eigen::MatrixXd::Zero(d, d);
            const int mu = [&] {
                int acc = 0;
                for (const auto& b : cfg.model.control_boxes) acc += b.dim();
                return acc;
            }();
            cfg.model.drift.B = drift.contains("B") ? as_matrix(drift["B"], "model.drift.B")
                                                    : Eigen::MatrixXd::Zero(d, mu);
            cfg.model.drift.b = drift.contains("b") ? as_vector(drift["b"], "model.drift.b")
                                                    : Eigen::VectorXd::Zero(d);
            if (cfg.model.drift.A.rows() != d || cfg.model.drift.A.cols() != d)
                fail("model.drift.A", "must be d x d");
            if (cfg.model.drift.B.rows() != d || cfg.model.drift.B.cols() != mu)
                fail("model.drift.B", "must be d x total control dimension");
            if (cfg.model.drift.b.size() != d) fail("model.drift.b", "must have length d");
        } else if (dkind == "polynomial") {
            cfg.model.drift.kind = sde::VectorField::Kind::Polynomial1D;
            const json& c = require(drift, "coeffs", "model.drift");
            for (std::size_t i = 0; i < c.size(); ++i)
                cfg.model.drift.coeffs.push_back(
                    as_number(c[i], "model.drift.coeffs[" + std::to_string(i) + "]"));
        } else {
            fail("model.drift.kind", "unknown drift kind '" + dkind + "'");
        }
        const json& diff = require(m, "diffusion", "model");
        const std::string skind = require(diff, "kind", "model.diffusion").get<std::string>();
        if (skind == "constant") {
            cfg.model.diffusion.kind = sde::MatrixField::Kind::Constant;
            cfg.model.diffusion.constant =
                as_matrix(require(diff, "matrix", "model.diffusion"), "model.diffusion.matrix");
            if (cfg.model.diffusion.constant.rows() != d ||
                cfg.model.diffusion.constant.cols() != d)
                fail("model.diffusion.matrix", "must be d x d (sigma is missing or misshapen)");
        } else if (skind == "diag_affine") {
            cfg.model.diffusion.kind = sde::MatrixField::Kind::DiagAffine;
            cfg.model.diffusion.diag_c =
                as_vector(require(diff, "c", "model.diffusion"), "model.diffusion.c");
            cfg.model.diffusion.diag_G = diff.contains("G")
                                             ? as_matrix(diff["G"], "model.diffusion.G")
                                             : Eigen::MatrixXd::Zero(d, d);
            if (cfg.model.diffusion.diag_c.size() != d) fail("model.diffusion.c", "length d");
            if (cfg.model.diffusion.diag_G.rows() != d || cfg.model.diffusion.diag_G.cols() != d)
                fail("model.diffusion.G", "must be d x d");
        } else {
            fail("model.diffusion.kind", "unknown diffusion kind '" + skind + "'");
        }
        cfg.model.ellipticity = get_number(m, "ellipticity", "model", 0.0);
        if (m.contains("growth")) {
            cfg.model.growth_K = get_number(m["growth"], "K", "model.growth", 10.0);
            cfg.model.growth_p = get_number(m["growth"], "p", "model.growth", 1.0);
        }
        cfg.model.validate();
    }

    const int d = cfg.model.state_dim;
    cfg.generator = j.contains("generator") ? parse_generator(j["generator"], "generator", d)
                                            : gen::GeneratorFunctional::zero(d);

    if (j.contains("costs")) {
        const json& costs = j["costs"];
        if (!costs.is_array()) fail("costs", "must be an array with one entry per agent");
        for (std::size_t a = 0; a < costs.size(); ++a) {
            const std::string cp = "costs[" + std::to_string(a) + "]";
            const int mctl = cfg.model.control_boxes[a % cfg.model.control_boxes.size()].dim();
            cfg.costs.running.push_back(parse_cost(require(costs[a], "running", cp),
                                                   cp + ".running", d, mctl));
            cfg.costs.terminal.push_back(
                parse_terminal(require(costs[a], "terminal", cp), cp + ".terminal", d));
        }
        if (static_cast<int>(costs.size()) != cfg.model.num_agents)
            fail("costs", "must list exactly one entry per agent");
    } else {
        for (int a = 0; a < cfg.model.num_agents; ++a) {
            cfg.costs.running.push_back(gen::CostField::zero());
            cfg.costs.terminal.push_back(gen::TerminalField::constant(0.0));
        }
    }

    if (j.contains("profile")) {
        const json& p = j["profile"];
        const json& cc = require(p, "constant", "profile");
        if (!cc.is_array() || static_cast<int>(cc.size()) != cfg.model.num_agents)
            fail("profile.constant", "must list one control vector per agent");
        for (std::size_t a = 0; a < cc.size(); ++a)
            cfg.profile_constants.push_back(
                as_vector(cc[a], "profile.constant[" + std::to_string(a) + "]"));
    } else {
        for (int a = 0; a < cfg.model.num_agents; ++a)
            cfg.profile_constants.push_back(cfg.model.control_boxes[a].midpoint());
    }

    if (j.contains("convex_set")) {
        const json& k = j["convex_set"];
        const std::string kind = require(k, "kind", "convex_set").get<std::string>();
        if (kind == "box") {
            cfg.convex_set = viability::ConvexSetK::box(
                as_vector(require(k, "lo", "convex_set"), "convex_set.lo"),
                as_vector(require(k, "hi", "convex_set"), "convex_set.hi"));
        } else if (kind == "ball") {
            cfg.convex_set = viability::ConvexSetK::ball(
                as_vector(require(k, "center", "convex_set"), "convex_set.center"),
                as_number(require(k, "radius", "convex_set"), "convex_set.radius"));
        } else if (kind == "polyhedron") {
            cfg.convex_set = viability::ConvexSetK::polyhedron(
                as_matrix(require(k, "A", "convex_set"), "convex_set.A"),
                as_vector(require(k, "b", "convex_set"), "convex_set.b"));
        } else {
            fail("convex_set.kind", "unknown convex set kind '" + kind + "'");
        }
    }

    {
        const json& e = require(j, "evaluation", "");
        cfg.eval_t = get_number(e, "t", "evaluation", 0.0);
        cfg.eval_x = as_vector(require(e, "x", "evaluation"), "evaluation.x");
        if (cfg.eval_x.size() != d) fail("evaluation.x", "must have length state_dim");
    }

    if (j.contains("paths")) {
        cfg.num_paths = get_int(j["paths"], "num_paths", "paths", cfg.num_paths);
        cfg.csv_max_paths = get_int(j["paths"], "csv_max_paths", "paths", cfg.csv_max_paths);
        if (cfg.num_paths < 1) fail("paths.num_paths", "must be >= 1");
    }
    if (j.contains("lsmc")) {
        cfg.lsmc_basis.degree = get_int(j["lsmc"], "basis_degree", "lsmc", 2);
        cfg.lsmc_ridge = get_number(j["lsmc"], "ridge", "lsmc", 1e-8);
        cfg.lsmc_steps = get_int(j["lsmc"], "steps", "lsmc", cfg.horizon.steps);
    } else {
        cfg.lsmc_steps = cfg.horizon.steps;
    }
    if (j.contains("tree")) cfg.tree_depth = get_int(j["tree"], "depth", "tree", 12);

    if (j.contains("hjb")) {
        const json& h = j["hjb"];
        cfg.has_hjb = true;
        cfg.hjb.space.d = d;
        cfg.hjb.space.lo = as_vector(require(h, "domain_lo", "hjb"), "hjb.domain_lo");
        cfg.hjb.space.hi = as_vector(require(h, "domain_hi", "hjb"), "hjb.domain_hi");
        const json& nodes = require(h, "nodes", "hjb");
        if (!nodes.is_array() || static_cast<int>(nodes.size()) != d)
            fail("hjb.nodes", "must list nodes per dimension");
        cfg.hjb.space.nodes = {as_int(nodes[0], "hjb.nodes[0]"),
                               d == 2 ? as_int(nodes[1], "hjb.nodes[1]") : 1};
        cfg.hjb.time_steps = get_int(h, "time_steps", "hjb", 100);
        cfg.hjb.control_resolution = get_int(h, "control_resolution", "hjb", 33);
        cfg.hjb.auto_time_refine =
            h.contains("auto_time_refine") ? h["auto_time_refine"].get<bool>() : false;
        cfg.crosscheck_allowance = get_number(h, "crosscheck_allowance", "hjb", 10.0);
        cfg.hjb.space.validate();
    }

    if (j.contains("equilibrium")) {
        cfg.equilibrium.tol = get_number(j["equilibrium"], "tol", "equilibrium", 1e-9);
        cfg.equilibrium.max_iters = get_int(j["equilibrium"], "max_iters", "equilibrium", 20);
        if (j["equilibrium"].contains("order")) {
            for (const auto& v : j["equilibrium"]["order"])
                cfg.equilibrium.order.push_back(as_int(v, "equilibrium.order"));
        }
    }

    if (j.contains("frontier")) {
        cfg.frontier_aggregate =
            parse_terminal(require(j["frontier"], "aggregate", "frontier"), "frontier.aggregate", d);
        cfg.frontier_resolution = get_int(j["frontier"], "resolution", "frontier", 10);
    }

    if (j.contains("bsvp")) {
        const json& b = j["bsvp"];
        cfg.has_bsvp = true;
        cfg.bsvp.num_samples = get_int(b, "num_samples", "bsvp", 1000);
        cfg.bsvp.y_lo = as_vector(require(b, "y_lo", "bsvp"), "bsvp.y_lo");
        cfg.bsvp.y_hi = as_vector(require(b, "y_hi", "bsvp"), "bsvp.y_hi");
        cfg.bsvp.z_scale = get_number(b, "z_scale", "bsvp", 1.0);
        cfg.bsvp.x_scale = get_number(b, "x_scale", "bsvp", 2.0);
    }

    if (j.contains("axioms")) {
        const json& a = j["axioms"];
        cfg.axioms.tree_depth = get_int(a, "tree_depth", "axioms", 10);
        cfg.axioms.trials = get_int(a, "trials", "axioms", 100);
        cfg.axioms.lsmc_trials = get_int(a, "lsmc_trials", "axioms", 2);
        cfg.axioms.lsmc_paths = get_int(a, "lsmc_paths", "axioms", 10000);
        cfg.axioms.lsmc_steps = get_int(a, "lsmc_steps", "axioms", 25);
    }
    cfg.axioms.seed = cfg.seed;

    if (j.contains("output")) {
        const json& o = j["output"];
        if (o.contains("dir")) {
            if (!o["dir"].is_string()) fail("output.dir", "must be a string");
            cfg.out_dir = o["dir"].get<std::string>();
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw ValidationError(std::string("config is not valid JSON: ") + ex.what());
    }
    return parse_config(j);
}

json serialize_config(const ExperimentConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    j["seed"] = cfg.seed;
    j["horizon"] = {{"t0", cfg.horizon.t0}, {"T", cfg.horizon.T}, {"steps", cfg.horizon.steps}};

    json model;
    model["state_dim"] = cfg.model.state_dim;
    model["num_agents"] = cfg.model.num_agents;
    json boxes = json::array();
    for (const auto& b : cfg.model.control_boxes)
        boxes.push_back({{"lo", vec_json(b.lo)}, {"hi", vec_json(b.hi)}});
    model["control_boxes"] = boxes;
    if (cfg.model.drift.kind == sde::VectorField::Kind::Affine) {
        model["drift"] = {{"kind", "affine"},
                          {"A", mat_json(cfg.model.drift.A)},
                          {"B", mat_json(cfg.model.drift.B)},
                          {"b", vec_json(cfg.model.drift.b)}};
    } else {
        json c = json::array();
        for (double v : cfg.model.drift.coeffs) c.push_back(v);
        model["drift"] = {{"kind", "polynomial"}, {"coeffs", c}};
    }
    if (cfg.model.diffusion.kind == sde::MatrixField::Kind::Constant) {
        model["diffusion"] = {{"kind", "constant"}, {"matrix", mat_json(cfg.model.diffusion.constant)}};
    } else {
        model["diffusion"] = {{"kind", "diag_affine"},
                              {"c", vec_json(cfg.model.diffusion.diag_c)},
                              {"G", mat_json(cfg.model.diffusion.diag_G)}};
    }
    model["ellipticity"] = cfg.model.ellipticity;
    model["growth"] = {{"K", cfg.model.growth_K}, {"p", cfg.model.growth_p}};
    j["model"] = model;

    j["generator"] = generator_json(cfg.generator);

    json costs = json::array();
    for (int a = 0; a < cfg.costs.num_agents(); ++a)
        costs.push_back({{"running", cost_json(cfg.costs.running[a])},
                         {"terminal", terminal_json(cfg.costs.terminal[a])}});
    j["costs"] = costs;

    json prof = json::array();
    for (const auto& p : cfg.profile_constants) prof.push_back(vec_json(p));
    j["profile"] = {{"constant", prof}};

    if (cfg.convex_set) {
        const auto& k = *cfg.convex_set;
        switch (k.kind()) {
            case viability::ConvexSetK::Kind::Box:
                j["convex_set"] = {{"kind", "box"}, {"lo", vec_json(k.box_lo())},
                                   {"hi", vec_json(k.box_hi())}};
                break;
            case viability::ConvexSetK::Kind::Ball:
                j["convex_set"] = {{"kind", "ball"}, {"center", vec_json(k.ball_center())},
                                   {"radius", k.ball_radius()}};
                break;
            case viability::ConvexSetK::Kind::Polyhedron:
                j["convex_set"] = {{"kind", "polyhedron"}, {"A", mat_json(k.poly_A())},
                                   {"b", vec_json(k.poly_b())}};
                break;
        }
    }

    j["evaluation"] = {{"t", cfg.eval_t}, {"x", vec_json(cfg.eval_x)}};
    j["paths"] = {{"num_paths", cfg.num_paths}, {"csv_max_paths", cfg.csv_max_paths}};
    j["lsmc"] = {{"basis_degree", cfg.lsmc_basis.degree},
                 {"ridge", cfg.lsmc_ridge},
                 {"steps", cfg.lsmc_steps}};
    j["tree"] = {{"depth", cfg.tree_depth}};

    if (cfg.has_hjb) {
        json h;
        h["domain_lo"] = vec_json(cfg.hjb.space.lo);
        h["domain_hi"] = vec_json(cfg.hjb.space.hi);
        json nodes = json::array();
        nodes.push_back(cfg.hjb.space.nodes[0]);
        if (cfg.hjb.space.d == 2) nodes.push_back(cfg.hjb.space.nodes[1]);
        h["nodes"] = nodes;
        h["time_steps"] = cfg.hjb.time_steps;
        h["control_resolution"] = cfg.hjb.control_resolution;
        h["auto_time_refine"] = cfg.hjb.auto_time_refine;
        h["crosscheck_allowance"] = cfg.crosscheck_allowance;
        j["hjb"] = h;
    }

    {
        json e;
        e["tol"] = cfg.equilibrium.tol;
        e["max_iters"] = cfg.equilibrium.max_iters;
        if (!cfg.equilibrium.order.empty()) e["order"] = cfg.equilibrium.order;
        j["equilibrium"] = e;
    }

    if (cfg.frontier_aggregate) {
        j["frontier"] = {{"aggregate", terminal_json(*cfg.frontier_aggregate)},
                         {"resolution", cfg.frontier_resolution}};
    }
    if (cfg.has_bsvp) {
        j["bsvp"] = {{"num_samples", cfg.bsvp.num_samples},
                     {"y_lo", vec_json(cfg.bsvp.y_lo)},
                     {"y_hi", vec_json(cfg.bsvp.y_hi)},
                     {"z_scale", cfg.bsvp.z_scale},
                     {"x_scale", cfg.bsvp.x_scale}};
    }
    j["axioms"] = {{"tree_depth", cfg.axioms.tree_depth},
                   {"trials", cfg.axioms.trials},
                   {"lsmc_trials", cfg.axioms.lsmc_trials},
                   {"lsmc_paths", cfg.axioms.lsmc_paths},
                   {"lsmc_steps", cfg.axioms.lsmc_steps}};
    j["output"] = {{"dir", cfg.out_dir}};
    return j;
}

sde::DecisionRule config_profile(const ExperimentConfig& cfg) {
    return sde::constant_profile(cfg.model, cfg.profile_constants);
}

}  // namespace riskbsde::io
