#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "riskbsde/common.hpp"

namespace riskbsde::gen {

// One catalog term of a generator functional g(t, y, z).
struct GeneratorTerm {
    enum class Kind { Zero, LinearY, LinearZ, AbsZ, CappedQuadraticZ };
    Kind kind = Kind::Zero;
    double b = 0.0;          // linear_y: b * y
    Eigen::VectorXd a;       // linear_z: a . z
    double mu = 0.0;         // abs_z: mu * |z|
    double theta = 0.0;      // capped quadratic: theta |z|^2 / 2 for |z| <= R,
    double cap_R = 0.0;      //                   theta (R |z| - R^2/2) beyond

    double eval(double y, const Eigen::VectorXd& z) const {
        switch (kind) {
            case Kind::Zero: return 0.0;
            case Kind::LinearY: return b * y;
            case Kind::LinearZ: return a.dot(z);
            case Kind::AbsZ: return mu * z.norm();
            case Kind::CappedQuadraticZ: {
                const double r = z.norm();
                if (r <= cap_R) return 0.5 * theta * r * r;
                return theta * (cap_R * r - 0.5 * cap_R * cap_R);
            }
        }
        return 0.0;
    }
    double lipschitz() const {
        switch (kind) {
            case Kind::Zero: return 0.0;
            case Kind::LinearY: return std::abs(b);
            case Kind::LinearZ: return a.norm();
            case Kind::AbsZ: return std::abs(mu);
            case Kind::CappedQuadraticZ: return theta * cap_R;
        }
        return 0.0;
    }
};

// Sum of catalog terms. Every catalog generator is affine in y (the only
// y-dependent kind is linear), which the tree solver exploits for exact
// one-step updates.
struct GeneratorFunctional {
    std::vector<GeneratorTerm> terms;  // empty list is the zero generator
    int z_dim = 1;

    double eval(double /*t*/, double y, const Eigen::VectorXd& z) const {
        if (z.size() != z_dim)
            throw ValidationError("generator: z dimension mismatch (expected " +
                                  std::to_string(z_dim) + ", got " + std::to_string(z.size()) + ")");
        double acc = 0.0;
        for (const auto& term : terms) acc += term.eval(y, z);
        return acc;
    }
    double lipschitz() const {
        double acc = 0.0;
        for (const auto& term : terms) acc += term.lipschitz();
        return acc;
    }
    double beta_y() const {
        double acc = 0.0;
        for (const auto& term : terms)
            if (term.kind == GeneratorTerm::Kind::LinearY) acc += term.b;
        return acc;
    }
    bool y_independent() const { return beta_y() == 0.0; }
    bool vanishes_at_z0() const { return y_independent(); }  // all z-kinds vanish at z = 0
    bool convex() const { return true; }                     // every catalog term is convex
    bool positively_homogeneous() const {
        for (const auto& term : terms)
            if (term.kind == GeneratorTerm::Kind::CappedQuadraticZ) return false;
        return true;
    }

    static GeneratorFunctional zero(int z_dim) { return {{}, z_dim}; }
    static GeneratorFunctional linear_y(double b, int z_dim) {
        GeneratorTerm t;
        t.kind = GeneratorTerm::Kind::LinearY;
        t.b = b;
        return {{t}, z_dim};
    }
    static GeneratorFunctional linear_z(const Eigen::VectorXd& a) {
        GeneratorTerm t;
        t.kind = GeneratorTerm::Kind::LinearZ;
        t.a = a;
        return {{t}, static_cast<int>(a.size())};
    }
    static GeneratorFunctional abs_z(double mu, int z_dim) {
        GeneratorTerm t;
        t.kind = GeneratorTerm::Kind::AbsZ;
        t.mu = mu;
        return {{t}, z_dim};
    }
    static GeneratorFunctional capped_quadratic(double theta, double cap, int z_dim) {
        GeneratorTerm t;
        t.kind = GeneratorTerm::Kind::CappedQuadraticZ;
        t.theta = theta;
        t.cap_R = cap;
        return {{t}, z_dim};
    }
};

// Interface the BSDE solvers consume. eval sees the forward state so
// composite (cost-augmented) generators can price running costs.
class BsdeGenerator {
public:
    virtual ~BsdeGenerator() = default;
    virtual double eval(double t, const Eigen::VectorXd& x, double y,
                        const Eigen::VectorXd& z) const = 0;
    virtual double lipschitz() const = 0;
    // Affine-in-y decomposition g = beta_y * y + g(t, x, 0, z). When false,
    // the tree solver falls back to bisection on the implicit step.
    virtual bool affine_in_y() const { return false; }
    virtual double beta_y() const { return 0.0; }
};

class PlainGenerator final : public BsdeGenerator {
public:
    explicit PlainGenerator(GeneratorFunctional g) : g_(std::move(g)) {}
    double eval(double t, const Eigen::VectorXd&, double y,
                const Eigen::VectorXd& z) const override {
        return g_.eval(t, y, z);
    }
    double lipschitz() const override { return g_.lipschitz(); }
    bool affine_in_y() const override { return true; }
    double beta_y() const override { return g_.beta_y(); }
    const GeneratorFunctional& functional() const { return g_; }

private:
    GeneratorFunctional g_;
};

// Arbitrary callable generator, used by tests to exercise the generic
// (non-affine) solver paths.
class FunctionGenerator final : public BsdeGenerator {
public:
    using Fn = std::function<double(double, const Eigen::VectorXd&, double, const Eigen::VectorXd&)>;
    FunctionGenerator(Fn fn, double lip) : fn_(std::move(fn)), lip_(lip) {}
    double eval(double t, const Eigen::VectorXd& x, double y,
                const Eigen::VectorXd& z) const override {
        return fn_(t, x, y, z);
    }
    double lipschitz() const override { return lip_; }

private:
    Fn fn_;
    double lip_;
};

// Assumption battery for a generator: sampled Lipschitz quotient and the
// vanishing-at-z=0 clause. Always returns a report.
struct GeneratorAssumptionReport {
    int probes = 0;
    double max_lipschitz_quotient = 0.0;
    double max_abs_g_at_z0 = 0.0;
    bool lipschitz_pass = false;     // quotient within the declared constant
    bool integrability_pass = false; // g(t,0,0) finite
    bool vanishes_pass = false;      // g(t,y,0) = 0 at probes
};

GeneratorAssumptionReport check_assumption1(const GeneratorFunctional& g, int probes,
                                            std::uint64_t seed = 0xa551);

}  // namespace riskbsde::gen
