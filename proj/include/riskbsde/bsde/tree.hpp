#pragma once

#include <cstdint>
#include <vector>

#include "riskbsde/gen/generator.hpp"
#include "riskbsde/sde/model.hpp"

namespace riskbsde::bsde {

// Recombining binomial lattice for a 1-d diffusion with constant
// coefficients: X(k, i) = x0 + m t_k + sigma sqrt(dt) (2i - k), up/down
// probability 1/2 each. Serves as the exact discrete-filtration oracle
// for the BSDE solvers.
struct TreeModel {
    double x0 = 0.0;
    double t0 = 0.0;
    double T = 1.0;
    double drift = 0.0;
    double vol = 1.0;
    int depth = 8;

    double dt() const { return (T - t0) / depth; }
    double time(int k) const { return t0 + k * dt(); }
    double node_x(int k, int i) const {
        return x0 + drift * (time(k) - t0) + vol * std::sqrt(dt()) * (2.0 * i - k);
    }
    std::vector<double> leaf_x() const {
        std::vector<double> xs(depth + 1);
        for (int i = 0; i <= depth; ++i) xs[i] = node_x(depth, i);
        return xs;
    }
    void validate() const {
        if (depth < 1) throw ValidationError("tree: depth must be >= 1");
        if (!(T > t0)) throw ValidationError("tree: T must exceed t0");
    }

    // Builds a lattice matching a catalog model under a constant-control
    // profile; rejects state-dependent coefficients (they cannot recombine).
    static TreeModel from_model(const sde::DiffusionModel& model, const sde::DecisionRule& profile,
                                double t0, double T, double x0, int depth);
};

// Node-wise solution; level k holds k+1 nodes at flat offset k(k+1)/2.
struct TreeSolution {
    int depth = 0;
    std::vector<double> Y;
    std::vector<double> Z;  // levels 0..depth-1

    static std::size_t offset(int k) { return static_cast<std::size_t>(k) * (k + 1) / 2; }
    double y(int k, int i) const { return Y[offset(k) + i]; }
    double z(int k, int i) const { return Z[offset(k) + i]; }
    double root() const { return Y[0]; }
};

// Exact backward induction. Z comes from the successor spread; the
// per-node value integrates the generator over the step: catalog
// generators are affine in y, so the one-step update is closed-form
// (exponential in the y-coefficient); non-affine generators fall back to
// bisection on the implicit equation, solved to 1e-12.
TreeSolution solve_bsde_tree(const TreeModel& tree, const gen::BsdeGenerator& g,
                             const std::vector<double>& leaf_values);

}  // namespace riskbsde::bsde
