#include "riskbsde/kernels/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace riskbsde::kernels {

namespace scalar {
extern const Ops kTable;
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const Ops kTable;
}
#endif

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

Impl select_impl() {
    if (const char* env = std::getenv("RISKBSDE_KERNEL_IMPL")) {
        const std::string v(env);
        if (v == "scalar") return Impl::Scalar;
        if (v == "avx2") {
            if (!avx2_available())
                throw std::runtime_error("RISKBSDE_KERNEL_IMPL=avx2 but the CPU lacks AVX2");
            return Impl::Avx2;
        }
        throw std::runtime_error("RISKBSDE_KERNEL_IMPL must be 'scalar' or 'avx2', got: " + v);
    }
    return avx2_available() ? Impl::Avx2 : Impl::Scalar;
}

}  // namespace

Impl active_impl() {
    static const Impl impl = select_impl();
    return impl;
}

const Ops& ops(Impl which) {
#if defined(__x86_64__) || defined(_M_X64)
    if (which == Impl::Avx2) return avx2::kTable;
#endif
    return scalar::kTable;
}

const Ops& ops() { return ops(active_impl()); }

std::string_view impl_name(Impl which) {
    return which == Impl::Avx2 ? "avx2" : "scalar";
}

}  // namespace riskbsde::kernels
