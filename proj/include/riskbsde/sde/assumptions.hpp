#pragma once

#include <cstdint>

#include "riskbsde/sde/model.hpp"

namespace riskbsde::sde {

// Sampled verification of the model's declared regularity: Lipschitz
// quotients for m and sigma, the ellipticity floor of sigma sigma^T, and
// the growth bound |m| + |sigma| <= K (1 + |x|^p + |u|). Never throws;
// violations are reported, not fatal.
struct AssumptionReport {
    int probes = 0;
    double lipschitz_m = 0.0;        // max sampled quotient
    double lipschitz_sigma = 0.0;
    double min_eig_a = 0.0;          // min over probes of lambda_min(sigma sigma^T)
    double growth_margin = 0.0;      // max of (|m|+|sigma|_F) / (K (1+|x|^p+|u|))
    bool lipschitz_pass = false;     // quotients finite at all probes
    bool ellipticity_pass = false;   // min_eig_a >= lambda (vacuous when lambda = 0)
    bool growth_pass = false;        // growth_margin <= 1

    // Worst growth probe, for diagnostics.
    Eigen::VectorXd worst_growth_x;
    Eigen::VectorXd worst_growth_u;

    bool all_pass() const { return lipschitz_pass && ellipticity_pass && growth_pass; }
};

AssumptionReport check_model_assumptions(const DiffusionModel& model, int probe_count,
                                         const Box& probe_box, std::uint64_t seed = 0x5a11);

}  // namespace riskbsde::sde
