#pragma once

#include <cstdint>
#include <vector>

namespace riskbsde::sde {

// Simulated forward paths. Logical shape: states N x (M+1) x d,
// increments N x M x d. Storage is step-major so each time slab is
// contiguous for the stepping kernels.
struct PathBundle {
    int num_paths = 0;
    int steps = 0;      // M
    int dim = 0;        // d
    double t0 = 0.0;
    double T = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> states;       // [(M+1) * N * d], slab k at offset k*N*d
    std::vector<double> increments;   // [M * N * d]

    double state(int path, int step, int i = 0) const {
        return states[(static_cast<std::size_t>(step) * num_paths + path) * dim + i];
    }
    double increment(int path, int step, int i = 0) const {
        return increments[(static_cast<std::size_t>(step) * num_paths + path) * dim + i];
    }
    const double* slab(int step) const {
        return states.data() + static_cast<std::size_t>(step) * num_paths * dim;
    }
    double* slab(int step) {
        return states.data() + static_cast<std::size_t>(step) * num_paths * dim;
    }
    const double* increment_slab(int step) const {
        return increments.data() + static_cast<std::size_t>(step) * num_paths * dim;
    }
    double* increment_slab(int step) {
        return increments.data() + static_cast<std::size_t>(step) * num_paths * dim;
    }
    double dt() const { return (T - t0) / steps; }
    double time(int k) const { return t0 + k * dt(); }
};

}  // namespace riskbsde::sde
