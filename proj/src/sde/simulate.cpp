#include "riskbsde/sde/simulate.hpp"

#include <cmath>
#include <sstream>

#include "riskbsde/kernels/kernels.hpp"
#include "riskbsde/rng.hpp"
#include "riskbsde/util/parallel.hpp"

namespace riskbsde::sde {

namespace {

[[noreturn]] void throw_nonfinite(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    std::ostringstream os;
    os << "non-finite drift/diffusion value at t=" << t << ", x=[" << x.transpose() << "], u=["
       << u.transpose() << "]";
    throw NumericalError(os.str());
}

void check_control(const DiffusionModel& model, int agent, const Eigen::VectorXd& uj, double t) {
    if (!model.control_boxes[agent].contains(uj)) {
        std::ostringstream os;
        os << "control for agent " << agent << " outside its box at t=" << t << ": ["
           << uj.transpose() << "]";
        throw ValidationError(os.str());
    }
}

// Fast path applies when the whole stepping rule collapses to
// x <- x + (alpha x + kappa) dt + (gamma x + delta) dB per path.
struct Affine1D {
    double alpha, kappa, gamma, delta;
};

std::optional<Affine1D> affine1d_coeffs(const DiffusionModel& model, const DecisionRule& profile) {
    if (model.state_dim != 1 || !profile.all_constant()) return std::nullopt;
    if (model.drift.kind != VectorField::Kind::Affine) return std::nullopt;
    Eigen::VectorXd u(model.total_control_dim());
    int off = 0;
    for (int j = 0; j < model.num_agents; ++j) {
        u.segment(off, profile.agents[j].constant->size()) = *profile.agents[j].constant;
        off += static_cast<int>(profile.agents[j].constant->size());
    }
    Affine1D c{};
    c.alpha = model.drift.A(0, 0);
    c.kappa = (model.drift.B.size() ? (model.drift.B * u)(0) : 0.0) + model.drift.b(0);
    if (model.diffusion.kind == MatrixField::Kind::Constant) {
        c.gamma = 0.0;
        c.delta = model.diffusion.constant(0, 0);
    } else {
        c.gamma = model.diffusion.diag_G(0, 0);
        c.delta = model.diffusion.diag_c(0);
    }
    return c;
}

}  // namespace

std::vector<double> generate_increments(const TimeGrid& grid, int dim, int num_paths,
                                        std::uint64_t seed) {
    const double sq_dt = std::sqrt(grid.dt());
    std::vector<double> incr(static_cast<std::size_t>(grid.steps) * num_paths * dim);
    const rng::NormalStream normals(seed);
    for (int k = 0; k < grid.steps; ++k) {
        double* slab = incr.data() + static_cast<std::size_t>(k) * num_paths * dim;
        util::parallel_chunks(num_paths, util::kDefaultChunk,
                              [&](std::size_t, std::size_t b, std::size_t e) {
                                  for (std::size_t p = b; p < e; ++p) {
                                      for (int i = 0; i < dim; i += 2) {
                                          const auto z = normals.pair(p, static_cast<std::uint32_t>(k),
                                                                      static_cast<std::uint32_t>(i / 2));
                                          slab[p * dim + i] = z[0] * sq_dt;
                                          if (i + 1 < dim) slab[p * dim + i + 1] = z[1] * sq_dt;
                                      }
                                  }
                              });
    }
    return incr;
}

PathBundle simulate_with_increments(const DiffusionModel& model, const DecisionRule& profile,
                                    const TimeGrid& grid, const Eigen::VectorXd& x0,
                                    std::vector<double> increments, int num_paths,
                                    std::uint64_t seed_record) {
    model.validate();
    grid.validate();
    if (num_paths < 1) throw ValidationError("simulate: num_paths must be >= 1");
    if (x0.size() != model.state_dim)
        throw ValidationError("simulate: initial point dimension does not match state_dim");
    if (static_cast<int>(profile.agents.size()) != model.num_agents)
        throw ValidationError("simulate: profile must supply one policy per agent");
    for (int j = 0; j < model.num_agents; ++j)
        if (profile.agents[j].constant) check_control(model, j, *profile.agents[j].constant, grid.t0);

    const int d = model.state_dim;
    const int M = grid.steps;
    const double dt = grid.dt();

    PathBundle out;
    out.num_paths = num_paths;
    out.steps = M;
    out.dim = d;
    out.t0 = grid.t0;
    out.T = grid.T;
    out.seed = seed_record;
    out.increments = std::move(increments);
    out.states.resize(static_cast<std::size_t>(M + 1) * num_paths * d);

    double* first = out.slab(0);
    util::parallel_chunks(num_paths, util::kDefaultChunk,
                          [&](std::size_t, std::size_t b, std::size_t e) {
                              for (std::size_t p = b; p < e; ++p)
                                  for (int i = 0; i < d; ++i) first[p * d + i] = x0[i];
                          });

    if (const auto fast = affine1d_coeffs(model, profile)) {
        const auto& k = kernels::ops();
        for (int step = 0; step < M; ++step) {
            const double* prev = out.slab(step);
            double* next = out.slab(step + 1);
            const double* db = out.increment_slab(step);
            util::parallel_chunks(num_paths, util::kDefaultChunk,
                                  [&](std::size_t, std::size_t b, std::size_t e) {
                                      const std::size_t n = e - b;
                                      std::copy(prev + b, prev + e, next + b);
                                      k.euler_step_affine1d(next + b, db + b, n, fast->alpha,
                                                            fast->kappa, fast->gamma, fast->delta,
                                                            dt);
                                  });
        }
        return out;
    }

    // Generic path: evaluate policy/drift/diffusion per path and step.
    for (int step = 0; step < M; ++step) {
        const double t = grid.time(step);
        const double* prev = out.slab(step);
        double* next = out.slab(step + 1);
        const double* db = out.increment_slab(step);
        util::parallel_chunks(num_paths, util::kDefaultChunk,
                              [&](std::size_t, std::size_t b, std::size_t e) {
                                  Eigen::VectorXd x(d), dB(d), u(model.total_control_dim());
                                  for (std::size_t p = b; p < e; ++p) {
                                      for (int i = 0; i < d; ++i) {
                                          x[i] = prev[p * d + i];
                                          dB[i] = db[p * d + i];
                                      }
                                      int off = 0;
                                      for (int j = 0; j < model.num_agents; ++j) {
                                          Eigen::VectorXd uj = profile.agents[j](t, x);
                                          if (!profile.agents[j].constant)
                                              check_control(model, j, uj, t);
                                          u.segment(off, uj.size()) = uj;
                                          off += static_cast<int>(uj.size());
                                      }
                                      const Eigen::VectorXd m = model.drift.eval(t, x, u);
                                      const Eigen::MatrixXd s = model.diffusion.eval(t, x, u);
                                      if (!m.allFinite() || !s.allFinite()) throw_nonfinite(t, x, u);
                                      const Eigen::VectorXd xn = x + m * dt + s * dB;
                                      for (int i = 0; i < d; ++i) next[p * d + i] = xn[i];
                                  }
                              });
    }
    return out;
}

PathBundle simulate_forward(const DiffusionModel& model, const DecisionRule& profile,
                            const TimeGrid& grid, const Eigen::VectorXd& x0, int num_paths,
                            std::uint64_t seed) {
    auto incr = generate_increments(grid, model.state_dim, num_paths, seed);
    return simulate_with_increments(model, profile, grid, x0, std::move(incr), num_paths, seed);
}

DecisionRule constant_profile(const DiffusionModel& model,
                              const std::vector<Eigen::VectorXd>& controls) {
    if (static_cast<int>(controls.size()) != model.num_agents)
        throw ValidationError("constant_profile: one control per agent required");
    DecisionRule rule;
    for (int j = 0; j < model.num_agents; ++j) {
        if (controls[j].size() != model.control_boxes[j].dim())
            throw ValidationError("constant_profile: control dimension mismatch for agent " +
                                  std::to_string(j));
        AgentPolicy p;
        p.constant = controls[j];
        rule.agents.push_back(std::move(p));
    }
    return rule;
}

DecisionRule midpoint_profile(const DiffusionModel& model) {
    std::vector<Eigen::VectorXd> mids;
    for (const auto& bx : model.control_boxes) mids.push_back(bx.midpoint());
    return constant_profile(model, mids);
}

}  // namespace riskbsde::sde
