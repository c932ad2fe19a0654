#include "chips/kernels.hpp"

namespace chips::kern {

namespace {

std::int64_t count_masked_eq_scalar(const std::uint8_t* mask, const std::int32_t* a,
                                    const std::int32_t* b, std::size_t m) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < m; ++i)
        count += (mask[i] != 0 && a[i] == b[i]) ? 1 : 0;
    return count;
}

std::int64_t mask_and_eq_scalar(std::uint8_t* mask, const std::int32_t* a, const std::int32_t* b,
                                std::size_t m) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint8_t bit = (mask[i] != 0 && a[i] == b[i]) ? 1 : 0;
        mask[i] = bit;
        count += bit;
    }
    return count;
}

std::int64_t mask_and_ne_scalar(std::uint8_t* mask, const std::int32_t* a, const std::int32_t* b,
                                std::size_t m) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint8_t bit = (mask[i] != 0 && a[i] != b[i]) ? 1 : 0;
        mask[i] = bit;
        count += bit;
    }
    return count;
}

std::int64_t count_eq_scalar(const std::int32_t* a, const std::int32_t* b, std::size_t m) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < m; ++i) count += (a[i] == b[i]) ? 1 : 0;
    return count;
}

}  // namespace

const KernelOps& scalar_kernels() {
    static const KernelOps ops{"scalar", count_masked_eq_scalar, mask_and_eq_scalar,
                               mask_and_ne_scalar, count_eq_scalar};
    return ops;
}

}  // namespace chips::kern
