#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "riskbsde/common.hpp"

namespace riskbsde::sde {

// Closed bounded box, used for per-agent control sets.
struct Box {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const Eigen::VectorXd& u, double tol = 0.0) const {
        if (u.size() != lo.size()) return false;
        for (int i = 0; i < u.size(); ++i)
            if (u[i] < lo[i] - tol || u[i] > hi[i] + tol) return false;
        return true;
    }
    Eigen::VectorXd midpoint() const { return 0.5 * (lo + hi); }
    void validate(const std::string& what) const {
        if (lo.size() != hi.size() || lo.size() == 0)
            throw ValidationError(what + ": box bounds must be nonempty and of equal dimension");
        for (int i = 0; i < lo.size(); ++i)
            if (!(lo[i] <= hi[i]))
                throw ValidationError(what + ": box lower bound exceeds upper bound at component " +
                                      std::to_string(i));
    }
};

// Catalog-declared drift m(t, x, u) -> R^d. The stacked control vector u
// concatenates all agents' controls.
struct VectorField {
    enum class Kind { Affine, Polynomial1D };
    Kind kind = Kind::Affine;

    // affine: m = A x + B u + b
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::VectorXd b;

    // polynomial (d = 1, control-independent): m = sum coeffs[k] * x^k
    std::vector<double> coeffs;

    Eigen::VectorXd eval(double /*t*/, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
        if (kind == Kind::Affine) return A * x + B * u + b;
        double acc = 0.0, p = 1.0;
        for (double c : coeffs) {
            acc += c * p;
            p *= x[0];
        }
        Eigen::VectorXd out(1);
        out[0] = acc;
        return out;
    }
    bool control_independent() const {
        return kind == Kind::Polynomial1D || B.size() == 0 || B.isZero(0.0);
    }
};

// Catalog-declared diffusion sigma(t, x, u) -> R^{d x d}.
struct MatrixField {
    enum class Kind { Constant, DiagAffine };
    Kind kind = Kind::Constant;

    Eigen::MatrixXd constant;  // d x d
    // diag_affine: sigma = diag(c + G x)
    Eigen::VectorXd diag_c;
    Eigen::MatrixXd diag_G;

    Eigen::MatrixXd eval(double /*t*/, const Eigen::VectorXd& x, const Eigen::VectorXd& /*u*/) const {
        if (kind == Kind::Constant) return constant;
        return Eigen::MatrixXd((diag_c + diag_G * x).asDiagonal());
    }
    bool state_independent() const {
        return kind == Kind::Constant || diag_G.size() == 0 || diag_G.isZero(0.0);
    }
};

// Controlled diffusion dX = m(t,X,u) dt + sigma(t,X,u) dB with per-agent
// control boxes and declared ellipticity/growth constants.
struct DiffusionModel {
    int state_dim = 1;
    int num_agents = 1;
    std::vector<Box> control_boxes;  // one per agent
    VectorField drift;
    MatrixField diffusion;
    double ellipticity = 0.0;   // declared lambda: sigma sigma^T >= lambda I (checked by sampling)
    double growth_K = 10.0;     // |m| + |sigma| <= K (1 + |x|^p + |u|)
    double growth_p = 1.0;

    int total_control_dim() const {
        int m = 0;
        for (const auto& bx : control_boxes) m += bx.dim();
        return m;
    }

    void validate() const {
        if (state_dim < 1) throw ValidationError("model.state_dim must be positive");
        if (num_agents < 1) throw ValidationError("model.num_agents must be positive");
        if (static_cast<int>(control_boxes.size()) != num_agents)
            throw ValidationError("model.control_boxes must have one box per agent");
        for (int j = 0; j < num_agents; ++j)
            control_boxes[j].validate("model.control_boxes[" + std::to_string(j) + "]");
        if (ellipticity < 0.0) throw ValidationError("model.ellipticity must be nonnegative");
        if (growth_p < 1.0) throw ValidationError("model.growth.p must be >= 1");
        if (drift.kind == VectorField::Kind::Polynomial1D && state_dim != 1)
            throw ValidationError("polynomial drift requires state_dim = 1");
    }
};

struct TimeGrid {
    double t0 = 0.0;
    double T = 1.0;
    int steps = 1;

    double dt() const { return (T - t0) / steps; }
    double time(int k) const { return t0 + k * dt(); }
    void validate() const {
        if (!(T > t0)) throw ValidationError("grid: T must exceed t0");
        if (steps < 1) throw ValidationError("grid: steps must be >= 1");
        if (t0 < 0.0) throw ValidationError("grid: t0 must be >= 0");
    }
};

// Runtime decision profile: one feedback map per agent. Constant policies
// are tagged so simulators can take the vectorized fast path.
struct AgentPolicy {
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> fn;
    std::optional<Eigen::VectorXd> constant;

    Eigen::VectorXd operator()(double t, const Eigen::VectorXd& x) const {
        return constant ? *constant : fn(t, x);
    }
};

struct DecisionRule {
    std::vector<AgentPolicy> agents;

    bool all_constant() const {
        for (const auto& a : agents)
            if (!a.constant) return false;
        return true;
    }
    // Stacked control vector across agents at (t, x).
    Eigen::VectorXd stacked(double t, const Eigen::VectorXd& x, const DiffusionModel& model) const {
        Eigen::VectorXd u(model.total_control_dim());
        int off = 0;
        for (int j = 0; j < model.num_agents; ++j) {
            const Eigen::VectorXd uj = agents[j](t, x);
            u.segment(off, uj.size()) = uj;
            off += static_cast<int>(uj.size());
        }
        return u;
    }
};

DecisionRule constant_profile(const DiffusionModel& model,
                              const std::vector<Eigen::VectorXd>& controls);
DecisionRule midpoint_profile(const DiffusionModel& model);

}  // namespace riskbsde::sde
