#pragma once

#include <cstdint>

#include "riskbsde/sde/model.hpp"
#include "riskbsde/sde/path_bundle.hpp"

namespace riskbsde::sde {

// Brownian increments for N paths on the grid, addressed per
// (seed, path, step) so the draw is independent of thread count.
std::vector<double> generate_increments(const TimeGrid& grid, int dim, int num_paths,
                                        std::uint64_t seed);

// Euler-Maruyama with caller-supplied increments (used for common-random-
// number refinement studies and by simulate_forward).
PathBundle simulate_with_increments(const DiffusionModel& model, const DecisionRule& profile,
                                    const TimeGrid& grid, const Eigen::VectorXd& x0,
                                    std::vector<double> increments, int num_paths,
                                    std::uint64_t seed_record);

PathBundle simulate_forward(const DiffusionModel& model, const DecisionRule& profile,
                            const TimeGrid& grid, const Eigen::VectorXd& x0, int num_paths,
                            std::uint64_t seed);

}  // namespace riskbsde::sde
