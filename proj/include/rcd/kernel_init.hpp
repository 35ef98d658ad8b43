#pragma once

#include <cstdint>

#include "rcd/model.hpp"

namespace rcd {

// Oriented anisotropic Gaussian ridge; the procedural stand-in for learned
// rain kernels.
struct StreakParams {
    double angle = 0.0;     // radians in (-pi/2, pi/2]
    double length = 7.0;    // pixels, 0 < length <= k
    double width = 1.0;     // pixels, 0 < width <= k
    std::size_t k = 9;      // kernel side, odd
    bool gray = true;       // replicate one ridge across the 3 channels

    void validate() const;  // ConfigError
};

// k x k x 3 kernel with unit Frobenius norm. The value at offset (u,v) from
// the center is exp(-(a^2/(2(length/2)^2) + b^2/(2(width/2)^2))) with (a,b)
// the offset rotated by -angle. gray=false applies a fixed per-channel tint
// (0.9, 1.0, 1.1) before normalization.
Tensor make_streak_kernel(const StreakParams& p);

struct DictionaryParams {
    std::size_t count = 32;
    std::size_t k = 9;
    double angle_lo = -1.0471975511965976, angle_hi = 1.0471975511965976;  // +-pi/3
    double length_lo = 6.0, length_hi = 9.0;
    double width_lo = 0.8, width_hi = 1.6;
    bool gray = true;
    std::uint64_t seed = 0;

    void validate() const;
};

// Deterministic dictionary: atom parameters lie on a low-discrepancy
// (additive-recurrence) grid over the ranges; the seed shifts the grid phase.
// A single-atom dictionary sits exactly at the range midpoints.
KernelDictionary init_dictionary(const DictionaryParams& p);

// Largest |<atom_i, atom_j>| / (|atom_i| |atom_j|) over distinct pairs.
double max_pairwise_correlation(const KernelDictionary& dict);

// Kernels rendered as a tile sheet, each tile min-max normalized to [0,1],
// tiles separated by a 1-pixel mid-gray border.
Image render_tile_sheet(const Tensor& kernels);

}  // namespace rcd
