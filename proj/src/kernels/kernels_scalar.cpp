#include "riskbsde/kernels/kernels.hpp"

// Reference kernels. Keep the per-element expressions in exact sync with
// the AVX2 variants: same operations, same order, no fused multiply-add.

namespace riskbsde::kernels::scalar {

void euler_step_affine1d(double* x, const double* db, std::size_t n,
                         double alpha, double kappa, double gamma, double delta,
                         double dt) {
    for (std::size_t i = 0; i < n; ++i) {
        const double drift = (alpha * x[i] + kappa) * dt;
        const double diff = (gamma * x[i] + delta) * db[i];
        x[i] = x[i] + drift + diff;
    }
}

void mul_scale(double* out, const double* a, const double* b, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] * s;
}

void poly_powers(double* out, const double* x, std::size_t n,
                 double shift, double scale, int max_power) {
    for (std::size_t i = 0; i < n; ++i) {
        const double s = (x[i] - shift) * scale;
        double p = s;
        out[i] = p;
        for (int k = 1; k < max_power; ++k) {
            p = p * s;
            out[static_cast<std::size_t>(k) * n + i] = p;
        }
    }
}

double reduce_sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double reduce_sq_dev(const double* x, std::size_t n, double mean) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        acc += d * d;
    }
    return acc;
}

const Ops kTable = {
    &euler_step_affine1d,
    &mul_scale,
    &poly_powers,
    &reduce_sum,
    &reduce_sq_dev,
};

}  // namespace riskbsde::kernels::scalar
