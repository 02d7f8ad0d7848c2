#include "riskbsde/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

// AVX2 variants. Elementwise kernels mirror the scalar expressions
// operation-for-operation (mul/add only, no FMA) so lanes reproduce the
// scalar results bit-for-bit; tails fall back to the same scalar code.

namespace riskbsde::kernels::avx2 {

void euler_step_affine1d(double* x, const double* db, std::size_t n,
                         double alpha, double kappa, double gamma, double delta,
                         double dt) {
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vk = _mm256_set1_pd(kappa);
    const __m256d vg = _mm256_set1_pd(gamma);
    const __m256d vd = _mm256_set1_pd(delta);
    const __m256d vdt = _mm256_set1_pd(dt);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vb = _mm256_loadu_pd(db + i);
        const __m256d drift = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(va, vx), vk), vdt);
        const __m256d diff = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(vg, vx), vd), vb);
        _mm256_storeu_pd(x + i, _mm256_add_pd(_mm256_add_pd(vx, drift), diff));
    }
    for (; i < n; ++i) {
        const double drift = (alpha * x[i] + kappa) * dt;
        const double diff = (gamma * x[i] + delta) * db[i];
        x[i] = x[i] + drift + diff;
    }
}

void mul_scale(double* out, const double* a, const double* b, std::size_t n, double s) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(va, vb), vs));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i] * s;
}

void poly_powers(double* out, const double* x, std::size_t n,
                 double shift, double scale, int max_power) {
    const __m256d vsh = _mm256_set1_pd(shift);
    const __m256d vsc = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d s = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), vsh), vsc);
        __m256d p = s;
        _mm256_storeu_pd(out + i, p);
        for (int k = 1; k < max_power; ++k) {
            p = _mm256_mul_pd(p, s);
            _mm256_storeu_pd(out + static_cast<std::size_t>(k) * n + i, p);
        }
    }
    for (; i < n; ++i) {
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
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) total += x[i];
    return total;
}

double reduce_sq_dev(const double* x, std::size_t n, double mean) {
    const __m256d vm = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vm);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        total += d * d;
    }
    return total;
}

const Ops kTable = {
    &euler_step_affine1d,
    &mul_scale,
    &poly_powers,
    &reduce_sum,
    &reduce_sq_dev,
};

}  // namespace riskbsde::kernels::avx2

#endif  // x86_64
