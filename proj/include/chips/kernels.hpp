#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace chips::kern {

// The hot loops of this library all reduce to element-wise comparisons of two
// int32 label columns of length M (one entry per posterior draw), combined
// with a byte mask of still-consistent draws. Masks store 0 or 1 per draw.
//
// Each operation has a scalar reference implementation plus ISA-specific
// variants (AVX2 on x86-64, NEON on aarch64) selected at runtime. All
// variants return bit-identical results; tests/test_kernels.cpp checks
// equivalence on randomized inputs.
struct KernelOps {
    const char* name;

    // #{ i : mask[i] && a[i] == b[i] }
    std::int64_t (*count_masked_eq)(const std::uint8_t* mask, const std::int32_t* a,
                                    const std::int32_t* b, std::size_t m);

    // mask[i] &= (a[i] == b[i]); returns the resulting true count.
    std::int64_t (*mask_and_eq)(std::uint8_t* mask, const std::int32_t* a, const std::int32_t* b,
                                std::size_t m);

    // mask[i] &= (a[i] != b[i]); returns the resulting true count.
    std::int64_t (*mask_and_ne)(std::uint8_t* mask, const std::int32_t* a, const std::int32_t* b,
                                std::size_t m);

    // #{ i : a[i] == b[i] }
    std::int64_t (*count_eq)(const std::int32_t* a, const std::int32_t* b, std::size_t m);
};

const KernelOps& scalar_kernels();

// Variants compiled into this binary whose ISA the running CPU supports;
// scalar_kernels() is always first.
std::vector<const KernelOps*> available_kernels();

// Currently dispatched implementation (the widest available by default).
const KernelOps& active_kernels();

// Forces a variant by name ("scalar", "avx2", "neon") or re-detects with
// "auto". Returns false if the name is unknown or unsupported on this CPU.
// Intended for startup configuration; not thread-safe against concurrent use.
bool set_active_kernels(std::string_view name);

}  // namespace chips::kern
