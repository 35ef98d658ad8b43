#include "rcd/synth.hpp"

#include <cmath>

#include "rcd/rng.hpp"

namespace rcd {

void SynthSpec::validate() const {
    if (!(density > 0.0) || density > 0.05) {
        throw ConfigError("synth density must lie in (0, 0.05]");
    }
    if (!(amplitude_lo > 0.0) || !(amplitude_hi >= amplitude_lo)) {
        throw ConfigError("synth amplitude range must be positive and ordered");
    }
}

RainMaps sample_sparse_maps(std::size_t H, std::size_t W, std::size_t N, const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Tensor maps({H, W, N});
    double* p = maps.data();
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (rng.bernoulli(spec.density)) {
            p[i] = rng.uniform(spec.amplitude_lo, spec.amplitude_hi);
        }
    }
    return RainMaps(std::move(maps));
}

SynthResult render_rainy(const Image& background, const SynthSpec& spec) {
    spec.validate();
    background.check_unit_range();
    const std::size_t H = background.height(), W = background.width();

    SynthResult out;
    out.maps = sample_sparse_maps(H, W, spec.kernels.count(), spec);
    out.rain_layer = synthesize_rain(spec.kernels, out.maps);

    Tensor obs({H, W, 3});
    Tensor mask = Tensor::full({H, W, 3}, 1.0);
    const double* pb = background.pixels.data();
    const double* pr = out.rain_layer.pixels.data();
    double* po = obs.data();
    double* pm = mask.data();
    std::size_t clipped = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double v = pb[i] + pr[i];
        if (v < 0.0 || v > 1.0) {
            pm[i] = 0.0;
            ++clipped;
        }
        po[i] = std::min(1.0, std::max(0.0, v));
    }
    out.observation = Image(std::move(obs));
    out.clip_mask = std::move(mask);
    out.clip_fraction = static_cast<double>(clipped) / static_cast<double>(H * W * 3);
    return out;
}

}  // namespace rcd
