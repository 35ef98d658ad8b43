#include "ref/reference_ops.hpp"

namespace rcd::ref {

namespace {

// Zero-padded sample.
double sample(const Tensor& t, std::ptrdiff_t h, std::ptrdiff_t w, std::size_t c) {
    if (h < 0 || w < 0 || h >= static_cast<std::ptrdiff_t>(t.extent(0)) ||
        w >= static_cast<std::ptrdiff_t>(t.extent(1))) {
        return 0.0;
    }
    return t.at({static_cast<std::size_t>(h), static_cast<std::size_t>(w), c});
}

}  // namespace

Tensor conv2d_multi(const Tensor& kernels, const Tensor& input) {
    const std::size_t k = kernels.extent(0);
    const std::size_t No = kernels.extent(2), Ni = kernels.extent(3);
    const std::size_t H = input.extent(0), W = input.extent(1);
    const std::ptrdiff_t c0 = static_cast<std::ptrdiff_t>(k / 2);

    Tensor out({H, W, No});
    for (std::size_t h = 0; h < H; ++h)
        for (std::size_t w = 0; w < W; ++w)
            for (std::size_t j = 0; j < No; ++j) {
                double acc = 0.0;
                for (std::size_t n = 0; n < Ni; ++n)
                    for (std::size_t u = 0; u < k; ++u)
                        for (std::size_t v = 0; v < k; ++v)
                            acc += kernels.at({u, v, j, n}) *
                                   sample(input, static_cast<std::ptrdiff_t>(h + u) - c0,
                                          static_cast<std::ptrdiff_t>(w + v) - c0, n);
                out.at({h, w, j}) = acc;
            }
    return out;
}

Tensor conv2d_transpose(const Tensor& kernels, const Tensor& cotangent) {
    const std::size_t k = kernels.extent(0);
    const std::size_t No = kernels.extent(2), Ni = kernels.extent(3);
    const std::size_t H = cotangent.extent(0), W = cotangent.extent(1);
    const std::ptrdiff_t c0 = static_cast<std::ptrdiff_t>(k / 2);

    // Scatter form of the adjoint: every forward contribution is mirrored.
    Tensor out({H, W, Ni});
    for (std::size_t h = 0; h < H; ++h)
        for (std::size_t w = 0; w < W; ++w)
            for (std::size_t j = 0; j < No; ++j) {
                const double cv = cotangent.at({h, w, j});
                for (std::size_t n = 0; n < Ni; ++n)
                    for (std::size_t u = 0; u < k; ++u)
                        for (std::size_t v = 0; v < k; ++v) {
                            const std::ptrdiff_t hh = static_cast<std::ptrdiff_t>(h + u) - c0;
                            const std::ptrdiff_t ww = static_cast<std::ptrdiff_t>(w + v) - c0;
                            if (hh < 0 || ww < 0 || hh >= static_cast<std::ptrdiff_t>(H) ||
                                ww >= static_cast<std::ptrdiff_t>(W)) {
                                continue;
                            }
                            out.at({static_cast<std::size_t>(hh), static_cast<std::size_t>(ww), n}) +=
                                kernels.at({u, v, j, n}) * cv;
                        }
            }
    return out;
}

Tensor depthwise_conv(const Tensor& kernels, const Tensor& maps) {
    const std::size_t k = kernels.extent(0);
    const std::size_t No = kernels.extent(2), Ni = kernels.extent(3);
    const std::size_t H = maps.extent(0), W = maps.extent(1), N = maps.extent(2);
    const std::ptrdiff_t c0 = static_cast<std::ptrdiff_t>(k / 2);

    Tensor out({H, W, No, Ni, N});
    for (std::size_t h = 0; h < H; ++h)
        for (std::size_t w = 0; w < W; ++w)
            for (std::size_t j = 0; j < No; ++j)
                for (std::size_t c = 0; c < Ni; ++c)
                    for (std::size_t n = 0; n < N; ++n) {
                        double acc = 0.0;
                        for (std::size_t u = 0; u < k; ++u)
                            for (std::size_t v = 0; v < k; ++v)
                                acc += kernels.at({u, v, j, c}) *
                                       sample(maps, static_cast<std::ptrdiff_t>(h + u) - c0,
                                              static_cast<std::ptrdiff_t>(w + v) - c0, n);
                        out.at({h, w, j, c, n}) = acc;
                    }
    return out;
}

Tensor kernel_correlation(std::size_t k, const Tensor& residual, const Tensor& maps) {
    const std::size_t H = residual.extent(0), W = residual.extent(1);
    const std::size_t C = residual.extent(2), N = maps.extent(2);
    const std::ptrdiff_t c0 = static_cast<std::ptrdiff_t>(k / 2);

    Tensor out({k, k, C, N});
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v)
            for (std::size_t c = 0; c < C; ++c)
                for (std::size_t n = 0; n < N; ++n) {
                    double acc = 0.0;
                    for (std::size_t h = 0; h < H; ++h)
                        for (std::size_t w = 0; w < W; ++w)
                            acc += sample(maps, static_cast<std::ptrdiff_t>(h + u) - c0,
                                          static_cast<std::ptrdiff_t>(w + v) - c0, n) *
                                   residual.at({h, w, c});
                    out.at({u, v, c, n}) = acc;
                }
    return out;
}

}  // namespace rcd::ref
