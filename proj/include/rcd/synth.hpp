#pragma once

#include <cstdint>

#include "rcd/model.hpp"

namespace rcd {

// Ground-truth rainy-image generation: sparse Bernoulli activations convolved
// with a given kernel stack, added to a clean background.
struct SynthSpec {
    double density = 0.005;  // fraction of active map sites, (0, 0.05]
    double amplitude_lo = 0.2;
    double amplitude_hi = 0.8;
    std::uint64_t seed = 0;
    KernelStack kernels;

    void validate() const;  // ConfigError
};

// Independent Bernoulli(density) support with amplitudes uniform in
// [amplitude_lo, amplitude_hi); deterministic under the seed. Maps may be
// entirely empty when H*W*N*density is small.
RainMaps sample_sparse_maps(std::size_t H, std::size_t W, std::size_t N, const SynthSpec& spec);

struct SynthResult {
    Image observation;  // clamp(background + rain, 0, 1)
    Image rain_layer;   // before clamping
    RainMaps maps;
    Tensor clip_mask;   // H x W x 3; 1 where the composite stayed in range
    double clip_fraction;
};

SynthResult render_rainy(const Image& background, const SynthSpec& spec);

}  // namespace rcd
