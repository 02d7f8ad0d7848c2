#pragma once

#include <cstddef>
#include <string_view>

namespace riskbsde::kernels {

// Hot inner loops used by the simulators and the regression solver.
// Each op has a scalar reference implementation and an AVX2 variant;
// the active table is chosen once at startup (CPU detection, overridable
// via RISKBSDE_KERNEL_IMPL=scalar|avx2). Elementwise ops are written so
// that both variants perform the same IEEE operations per element and
// agree bit-for-bit; reductions differ only in accumulation order.
struct Ops {
    // x[i] += (alpha*x[i] + kappa)*dt + (gamma*x[i] + delta)*db[i]
    void (*euler_step_affine1d)(double* x, const double* db, std::size_t n,
                                double alpha, double kappa, double gamma, double delta,
                                double dt);
    // out[i] = a[i]*b[i]*s
    void (*mul_scale)(double* out, const double* a, const double* b, std::size_t n, double s);
    // Column-major n x max_power: column k-1 holds ((x[i]-shift)*scale)^k.
    void (*poly_powers)(double* out, const double* x, std::size_t n,
                        double shift, double scale, int max_power);
    double (*reduce_sum)(const double* x, std::size_t n);
    double (*reduce_sq_dev)(const double* x, std::size_t n, double mean);
};

enum class Impl { Scalar, Avx2 };

bool avx2_available();
Impl active_impl();
const Ops& ops();            // active table
const Ops& ops(Impl which);  // explicit table (Avx2 requires avx2_available())
std::string_view impl_name(Impl which);

}  // namespace riskbsde::kernels
