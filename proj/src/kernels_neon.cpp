// NEON variants of the label-column kernels (aarch64). Four int32 lanes per
// vector; the byte mask is widened to 32-bit lanes, combined with the
// comparison, then narrowed back to 0x00/0x01 bytes.

#include <arm_neon.h>

#include <cstring>

#include "chips/kernels.hpp"

namespace chips::kern {

const KernelOps* neon_kernels_impl();

namespace {

// Widens four mask bytes to 32-bit lanes (little-endian byte 0 -> lane 0).
inline uint32x4_t load_mask_lanes(const std::uint8_t* mask, std::size_t i) {
    std::uint32_t packed;
    std::memcpy(&packed, mask + i, 4);
    const uint8x8_t bytes = vcreate_u8(packed);
    const uint16x8_t wide16 = vmovl_u8(bytes);
    return vmovl_u16(vget_low_u16(wide16));
}

inline uint32x4_t masked_eq_lanes(const std::uint8_t* mask, const std::int32_t* a,
                                  const std::int32_t* b, std::size_t i) {
    const uint32x4_t eq = vceqq_s32(vld1q_s32(a + i), vld1q_s32(b + i));
    const uint32x4_t mset = vcgtq_u32(load_mask_lanes(mask, i), vdupq_n_u32(0));
    return vandq_u32(eq, mset);
}

inline std::int64_t lane_count(uint32x4_t lanes) {
    // Lanes are all-ones or zero; shift to 0/1 and sum.
    return vaddvq_u32(vshrq_n_u32(lanes, 31));
}

// Narrows 0/-1 lanes back to four 0x00/0x01 mask bytes.
inline void store_lane_mask(std::uint8_t* mask, std::size_t i, uint32x4_t lanes) {
    const uint32x4_t bits = vshrq_n_u32(lanes, 31);
    const uint16x4_t narrow16 = vmovn_u32(bits);
    const uint8x8_t narrow8 = vmovn_u16(vcombine_u16(narrow16, narrow16));
    const std::uint32_t packed = vget_lane_u32(vreinterpret_u32_u8(narrow8), 0);
    std::memcpy(mask + i, &packed, 4);
}

std::int64_t count_masked_eq_neon(const std::uint8_t* mask, const std::int32_t* a,
                                  const std::int32_t* b, std::size_t m) {
    std::int64_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) count += lane_count(masked_eq_lanes(mask, a, b, i));
    for (; i < m; ++i) count += (mask[i] != 0 && a[i] == b[i]) ? 1 : 0;
    return count;
}

std::int64_t mask_and_eq_neon(std::uint8_t* mask, const std::int32_t* a, const std::int32_t* b,
                              std::size_t m) {
    std::int64_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const uint32x4_t lanes = masked_eq_lanes(mask, a, b, i);
        store_lane_mask(mask, i, lanes);
        count += lane_count(lanes);
    }
    for (; i < m; ++i) {
        const std::uint8_t bit = (mask[i] != 0 && a[i] == b[i]) ? 1 : 0;
        mask[i] = bit;
        count += bit;
    }
    return count;
}

std::int64_t mask_and_ne_neon(std::uint8_t* mask, const std::int32_t* a, const std::int32_t* b,
                              std::size_t m) {
    std::int64_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const uint32x4_t ne = vmvnq_u32(vceqq_s32(vld1q_s32(a + i), vld1q_s32(b + i)));
        const uint32x4_t mset = vcgtq_u32(load_mask_lanes(mask, i), vdupq_n_u32(0));
        const uint32x4_t lanes = vandq_u32(ne, mset);
        store_lane_mask(mask, i, lanes);
        count += lane_count(lanes);
    }
    for (; i < m; ++i) {
        const std::uint8_t bit = (mask[i] != 0 && a[i] != b[i]) ? 1 : 0;
        mask[i] = bit;
        count += bit;
    }
    return count;
}

std::int64_t count_eq_neon(const std::int32_t* a, const std::int32_t* b, std::size_t m) {
    std::int64_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const uint32x4_t eq = vceqq_s32(vld1q_s32(a + i), vld1q_s32(b + i));
        count += lane_count(eq);
    }
    for (; i < m; ++i) count += (a[i] == b[i]) ? 1 : 0;
    return count;
}

}  // namespace

const KernelOps* neon_kernels_impl() {
    static const KernelOps ops{"neon", count_masked_eq_neon, mask_and_eq_neon, mask_and_ne_neon,
                               count_eq_neon};
    return &ops;
}

}  // namespace chips::kern
