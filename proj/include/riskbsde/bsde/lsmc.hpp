#pragma once

#include <vector>

#include "riskbsde/gen/generator.hpp"
#include "riskbsde/sde/path_bundle.hpp"

namespace riskbsde::bsde {

struct LsmcBasis {
    int degree = 2;  // total polynomial degree on standardized coordinates
};

// Regression Monte Carlo solution of the backward equation on simulated
// paths. Slabs are step-major like PathBundle.
struct BsdeSolution {
    int num_paths = 0;
    int steps = 0;
    int z_dim = 0;
    std::vector<double> Y;  // (M+1) slabs of N
    std::vector<double> Z;  // M slabs of N*d
    double y0 = 0.0;
    double y0_stderr = 0.0;

    // Diagnostics: per regression step the condition number of the normal
    // equations (before ridge), plus the ridge actually applied.
    std::vector<double> condition_numbers;
    double ridge = 0.0;
    int basis_degree = 0;

    double y(int path, int step) const {
        return Y[static_cast<std::size_t>(step) * num_paths + path];
    }
    double z(int path, int step, int i = 0) const {
        return Z[(static_cast<std::size_t>(step) * num_paths + path) * z_dim + i];
    }
    double max_condition() const {
        double m = 0.0;
        for (double c : condition_numbers) m = std::max(m, c);
        return m;
    }
};

// Backward induction with least-squares conditional expectations:
//   Z_k = regress(Y_{k+1} dB_k / dt | X_k),
//   Y_k = regress(Y_{k+1} | X_k) + g(t_k, X_k, Y_k, Z_k) dt,
// the implicit Y_k resolved by a single Picard pass seeded at the
// regressed mean (requires K_g dt < 1). Y at the final step equals the
// supplied terminal values exactly. y0 is the plain mean at step 0 since
// all paths share X_0.
BsdeSolution solve_bsde_lsmc(const sde::PathBundle& paths, const gen::BsdeGenerator& g,
                             const std::vector<double>& terminal, const LsmcBasis& basis,
                             double ridge = 1e-8);

}  // namespace riskbsde::bsde
