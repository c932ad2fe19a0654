#include <atomic>

#include "chips/kernels.hpp"

namespace chips::kern {

#if defined(CHIPS_HAVE_AVX2_TU)
const KernelOps* avx2_kernels_impl();
#endif
#if defined(CHIPS_HAVE_NEON_TU)
const KernelOps* neon_kernels_impl();
#endif

namespace {

const KernelOps* detect_best() {
#if defined(CHIPS_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2")) return avx2_kernels_impl();
#endif
#if defined(CHIPS_HAVE_NEON_TU)
    // NEON is mandatory on aarch64.
    return neon_kernels_impl();
#endif
    return &scalar_kernels();
}

std::atomic<const KernelOps*>& active_slot() {
    static std::atomic<const KernelOps*> slot{detect_best()};
    return slot;
}

}  // namespace

std::vector<const KernelOps*> available_kernels() {
    std::vector<const KernelOps*> out{&scalar_kernels()};
#if defined(CHIPS_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2")) out.push_back(avx2_kernels_impl());
#endif
#if defined(CHIPS_HAVE_NEON_TU)
    out.push_back(neon_kernels_impl());
#endif
    return out;
}

const KernelOps& active_kernels() { return *active_slot().load(std::memory_order_relaxed); }

bool set_active_kernels(std::string_view name) {
    if (name == "auto") {
        active_slot().store(detect_best(), std::memory_order_relaxed);
        return true;
    }
    for (const KernelOps* ops : available_kernels()) {
        if (name == ops->name) {
            active_slot().store(ops, std::memory_order_relaxed);
            return true;
        }
    }
    return false;
}

}  // namespace chips::kern
