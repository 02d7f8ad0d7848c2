#pragma once

#include <memory>

#include "riskbsde/gen/generator.hpp"
#include "riskbsde/sde/model.hpp"

namespace riskbsde::gen {

// Running cost c_j(t, x, u_j): quadratic family
// x^T Q x + q.x + u^T R u + r.u + c0.
struct CostField {
    Eigen::MatrixXd Q;  // d x d (may be empty = zero)
    Eigen::VectorXd q;  // d
    Eigen::MatrixXd R;  // m_j x m_j
    Eigen::VectorXd r;  // m_j
    double c0 = 0.0;

    double eval(double /*t*/, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
        double acc = c0;
        if (Q.size()) acc += x.dot(Q * x);
        if (q.size()) acc += q.dot(x);
        if (R.size()) acc += u.dot(R * u);
        if (r.size()) acc += r.dot(u);
        return acc;
    }
    bool is_zero() const { return Q.size() == 0 && q.size() == 0 && R.size() == 0 && r.size() == 0 && c0 == 0.0; }
    static CostField zero() { return {}; }
    static CostField constant(double c) {
        CostField f;
        f.c0 = c;
        return f;
    }
};

// Terminal cost Psi_j(x): quadratic form or a 1-d polynomial.
struct TerminalField {
    enum class Kind { Quadratic, Polynomial1D };
    Kind kind = Kind::Quadratic;
    Eigen::MatrixXd P;
    Eigen::VectorXd p;
    double c0 = 0.0;
    std::vector<double> coeffs;  // polynomial: sum coeffs[k] x^k

    double eval(const Eigen::VectorXd& x) const {
        if (kind == Kind::Quadratic) {
            double acc = c0;
            if (P.size()) acc += x.dot(P * x);
            if (p.size()) acc += p.dot(x);
            return acc;
        }
        double acc = 0.0, pw = 1.0;
        for (double c : coeffs) {
            acc += c * pw;
            pw *= x[0];
        }
        return acc;
    }
    TerminalField scaled(double s) const {
        TerminalField f = *this;
        f.P *= s;
        f.p *= s;
        f.c0 *= s;
        for (double& c : f.coeffs) c *= s;
        return f;
    }
    static TerminalField constant(double c) {
        TerminalField f;
        f.c0 = c;
        return f;
    }
    static TerminalField linear(const Eigen::VectorXd& p, double c = 0.0) {
        TerminalField f;
        f.p = p;
        f.c0 = c;
        return f;
    }
};

// Per-agent risk-cost data: (c_j, Psi_j) for each agent.
struct RiskCostSpec {
    std::vector<CostField> running;
    std::vector<TerminalField> terminal;

    int num_agents() const { return static_cast<int>(running.size()); }
    void validate() const {
        if (running.size() != terminal.size() || running.empty())
            throw ValidationError("costs: running and terminal cost lists must align, one per agent");
    }
};

// g_j(t, x, y, z) = c_j(t, x, u_j(t, x)) + g(t, y, z), the cost-augmented
// generator that prices the running cost inside the BSDE drift.
class CompositeGenerator final : public BsdeGenerator {
public:
    CompositeGenerator(GeneratorFunctional base, CostField cost, sde::AgentPolicy policy)
        : base_(std::move(base)), cost_(std::move(cost)), policy_(std::move(policy)) {}

    double eval(double t, const Eigen::VectorXd& x, double y,
                const Eigen::VectorXd& z) const override {
        return cost_.eval(t, x, policy_(t, x)) + base_.eval(t, y, z);
    }
    double lipschitz() const override { return base_.lipschitz(); }
    bool affine_in_y() const override { return true; }
    double beta_y() const override { return base_.beta_y(); }

    const GeneratorFunctional& base() const { return base_; }

private:
    GeneratorFunctional base_;
    CostField cost_;
    sde::AgentPolicy policy_;
};

}  // namespace riskbsde::gen
