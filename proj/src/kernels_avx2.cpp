// AVX2 variants of the label-column kernels. Built with -mavx2 in this
// translation unit only; callers go through the runtime dispatcher.

#include <immintrin.h>

#include <array>
#include <bit>
#include <cstring>

#include "chips/kernels.hpp"

namespace chips::kern {

const KernelOps* avx2_kernels_impl();

namespace {

// Expands an 8-bit lane mask into eight 0x00/0x01 bytes for the store back
// into the byte mask.
constexpr std::array<std::uint64_t, 256> kExpandByte = [] {
    std::array<std::uint64_t, 256> lut{};
    for (unsigned v = 0; v < 256; ++v) {
        std::uint64_t pattern = 0;
        for (unsigned j = 0; j < 8; ++j)
            if (v >> j & 1u) pattern |= std::uint64_t{1} << (8 * j);
        lut[v] = pattern;
    }
    return lut;
}();

// Lane mask (bit per lane) of mask[i..i+8) != 0 && a[i..i+8) == b[i..i+8).
inline unsigned masked_eq_bits(const std::uint8_t* mask, const std::int32_t* a,
                               const std::int32_t* b, std::size_t i) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i eq = _mm256_cmpeq_epi32(va, vb);
    const __m128i mbytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(mask + i));
    const __m256i mwide = _mm256_cvtepu8_epi32(mbytes);
    const __m256i mset = _mm256_cmpgt_epi32(mwide, _mm256_setzero_si256());
    const __m256i both = _mm256_and_si256(eq, mset);
    return static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(both)));
}

std::int64_t count_masked_eq_avx2(const std::uint8_t* mask, const std::int32_t* a,
                                  const std::int32_t* b, std::size_t m) {
    std::int64_t count = 0;
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) count += std::popcount(masked_eq_bits(mask, a, b, i));
    for (; i < m; ++i) count += (mask[i] != 0 && a[i] == b[i]) ? 1 : 0;
    return count;
}

std::int64_t mask_and_eq_avx2(std::uint8_t* mask, const std::int32_t* a, const std::int32_t* b,
                              std::size_t m) {
    std::int64_t count = 0;
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) {
        const unsigned bits = masked_eq_bits(mask, a, b, i);
        std::memcpy(mask + i, &kExpandByte[bits], 8);
        count += std::popcount(bits);
    }
    for (; i < m; ++i) {
        const std::uint8_t bit = (mask[i] != 0 && a[i] == b[i]) ? 1 : 0;
        mask[i] = bit;
        count += bit;
    }
    return count;
}

std::int64_t mask_and_ne_avx2(std::uint8_t* mask, const std::int32_t* a, const std::int32_t* b,
                              std::size_t m) {
    std::int64_t count = 0;
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i eq = _mm256_cmpeq_epi32(va, vb);
        const __m128i mbytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(mask + i));
        const __m256i mwide = _mm256_cvtepu8_epi32(mbytes);
        const __m256i mset = _mm256_cmpgt_epi32(mwide, _mm256_setzero_si256());
        const __m256i keep = _mm256_andnot_si256(eq, mset);
        const unsigned bits =
            static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(keep)));
        std::memcpy(mask + i, &kExpandByte[bits], 8);
        count += std::popcount(bits);
    }
    for (; i < m; ++i) {
        const std::uint8_t bit = (mask[i] != 0 && a[i] != b[i]) ? 1 : 0;
        mask[i] = bit;
        count += bit;
    }
    return count;
}

std::int64_t count_eq_avx2(const std::int32_t* a, const std::int32_t* b, std::size_t m) {
    std::int64_t count = 0;
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i eq = _mm256_cmpeq_epi32(va, vb);
        count += std::popcount(
            static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq))));
    }
    for (; i < m; ++i) count += (a[i] == b[i]) ? 1 : 0;
    return count;
}

}  // namespace

const KernelOps* avx2_kernels_impl() {
    static const KernelOps ops{"avx2", count_masked_eq_avx2, mask_and_eq_avx2, mask_and_ne_avx2,
                               count_eq_avx2};
    return &ops;
}

}  // namespace chips::kern
