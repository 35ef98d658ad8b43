#include "rcd/conv.hpp"

#include <algorithm>
#include <atomic>

namespace rcd {

namespace {

std::atomic<int> g_max_threads{1};

struct KernelDims {
    std::size_t k, no, ni, c0;
};

KernelDims check_kernels(const Tensor& kernels) {
    if (kernels.order() != 4) throw DimensionError("kernel tensor must have order 4");
    const std::size_t k = kernels.extent(0);
    if (kernels.extent(1) != k) throw DimensionError("kernels must be square in the first two extents");
    if (k % 2 == 0) throw ConfigError("kernel size must be odd, got " + std::to_string(k));
    return {k, kernels.extent(2), kernels.extent(3), k / 2};
}

void check_output(const Tensor& t, const char* op) {
    if (!t.all_finite()) throw NumericError(std::string(op) + " produced non-finite values");
}

}  // namespace

void set_max_threads(int n) { g_max_threads.store(n < 1 ? 1 : n); }
int max_threads() { return g_max_threads.load(); }

Tensor conv2d_multi(const Tensor& kernels, const Tensor& input) {
    const KernelDims kd = check_kernels(kernels);
    if (input.order() != 3) throw DimensionError("conv2d_multi input must have order 3");
    if (input.extent(2) != kd.ni) {
        throw DimensionError("conv2d_multi channel mismatch: kernels expect " +
                             std::to_string(kd.ni) + ", input has " +
                             std::to_string(input.extent(2)));
    }
    const std::size_t H = input.extent(0), W = input.extent(1);
    const std::size_t k = kd.k, No = kd.no, Ni = kd.ni, c0 = kd.c0;

    Tensor out({H, W, No});
    const double* ker = kernels.data();
    const double* in = input.data();
    double* dst = out.data();
    const std::ptrdiff_t sH = static_cast<std::ptrdiff_t>(H);
    const std::ptrdiff_t sW = static_cast<std::ptrdiff_t>(W);

#pragma omp parallel for schedule(static) num_threads(g_max_threads.load())
    for (std::ptrdiff_t h = 0; h < sH; ++h) {
        const std::size_t u_lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (std::ptrdiff_t)c0 - h));
        const std::size_t u_hi = std::min(k, H + c0 - static_cast<std::size_t>(h));
        for (std::ptrdiff_t w = 0; w < sW; ++w) {
            const std::size_t v_lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (std::ptrdiff_t)c0 - w));
            const std::size_t v_hi = std::min(k, W + c0 - static_cast<std::size_t>(w));
            double* orow = dst + (static_cast<std::size_t>(h) * W + static_cast<std::size_t>(w)) * No;
            for (std::size_t j = 0; j < No; ++j) {
                double acc = 0.0;
                for (std::size_t u = u_lo; u < u_hi; ++u) {
                    const std::size_t hh = static_cast<std::size_t>(h) + u - c0;
                    for (std::size_t v = v_lo; v < v_hi; ++v) {
                        const std::size_t ww = static_cast<std::size_t>(w) + v - c0;
                        const double* kr = ker + ((u * k + v) * No + j) * Ni;
                        const double* ir = in + (hh * W + ww) * Ni;
                        double s = 0.0;
#pragma omp simd reduction(+ : s)
                        for (std::size_t n = 0; n < Ni; ++n) s += kr[n] * ir[n];
                        acc += s;
                    }
                }
                orow[j] = acc;
            }
        }
    }
    check_output(out, "conv2d_multi");
    return out;
}

Tensor conv2d_transpose(const Tensor& kernels, const Tensor& cotangent) {
    const KernelDims kd = check_kernels(kernels);
    if (cotangent.order() != 3) throw DimensionError("conv2d_transpose cotangent must have order 3");
    if (cotangent.extent(2) != kd.no) {
        throw DimensionError("conv2d_transpose channel mismatch: kernels produce " +
                             std::to_string(kd.no) + ", cotangent has " +
                             std::to_string(cotangent.extent(2)));
    }
    const std::size_t H = cotangent.extent(0), W = cotangent.extent(1);
    const std::size_t k = kd.k, No = kd.no, Ni = kd.ni, c0 = kd.c0;

    Tensor out({H, W, Ni});
    const double* ker = kernels.data();
    const double* cot = cotangent.data();
    double* dst = out.data();
    const std::ptrdiff_t sH = static_cast<std::ptrdiff_t>(H);

    // out[h,w,n] = sum_{u,v,j} kernels[u,v,j,n] * cotangent[h-u+c0, w-v+c0, j]
#pragma omp parallel for schedule(static) num_threads(g_max_threads.load())
    for (std::ptrdiff_t h = 0; h < sH; ++h) {
        // valid u: 0 <= h-u+c0 < H
        const std::size_t u_lo = static_cast<std::size_t>(
            std::max<std::ptrdiff_t>(0, h + (std::ptrdiff_t)c0 - (std::ptrdiff_t)H + 1));
        const std::size_t u_hi = std::min(k, static_cast<std::size_t>(h) + c0 + 1);
        for (std::size_t w = 0; w < W; ++w) {
            const std::size_t v_lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                0, (std::ptrdiff_t)w + (std::ptrdiff_t)c0 - (std::ptrdiff_t)W + 1));
            const std::size_t v_hi = std::min(k, w + c0 + 1);
            double* orow = dst + (static_cast<std::size_t>(h) * W + w) * Ni;
            for (std::size_t n = 0; n < Ni; ++n) orow[n] = 0.0;
            for (std::size_t u = u_lo; u < u_hi; ++u) {
                const std::size_t hh = static_cast<std::size_t>(h) - u + c0;
                for (std::size_t v = v_lo; v < v_hi; ++v) {
                    const std::size_t ww = w - v + c0;
                    const double* crow = cot + (hh * W + ww) * No;
                    for (std::size_t j = 0; j < No; ++j) {
                        const double cv = crow[j];
                        const double* kr = ker + ((u * k + v) * No + j) * Ni;
#pragma omp simd
                        for (std::size_t n = 0; n < Ni; ++n) orow[n] += cv * kr[n];
                    }
                }
            }
        }
    }
    check_output(out, "conv2d_transpose");
    return out;
}

Tensor depthwise_conv(const Tensor& kernels, const Tensor& maps) {
    const KernelDims kd = check_kernels(kernels);
    if (maps.order() != 3) throw DimensionError("depthwise_conv maps must have order 3");
    const std::size_t H = maps.extent(0), W = maps.extent(1), N = maps.extent(2);
    const std::size_t k = kd.k, No = kd.no, Ni = kd.ni, c0 = kd.c0;

    Tensor out({H, W, No, Ni, N});
    const double* ker = kernels.data();
    const double* mp = maps.data();
    double* dst = out.data();
    const std::ptrdiff_t sH = static_cast<std::ptrdiff_t>(H);

#pragma omp parallel for schedule(static) num_threads(g_max_threads.load())
    for (std::ptrdiff_t h = 0; h < sH; ++h) {
        const std::size_t u_lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (std::ptrdiff_t)c0 - h));
        const std::size_t u_hi = std::min(k, H + c0 - static_cast<std::size_t>(h));
        for (std::size_t w = 0; w < W; ++w) {
            const std::size_t v_lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (std::ptrdiff_t)c0 - w));
            const std::size_t v_hi = std::min(k, W + c0 - w);
            double* cell = dst + ((static_cast<std::size_t>(h) * W + w) * No) * Ni * N;
            for (std::size_t j = 0; j < No; ++j) {
                for (std::size_t c = 0; c < Ni; ++c) {
                    double* on = cell + (j * Ni + c) * N;
                    for (std::size_t n = 0; n < N; ++n) on[n] = 0.0;
                    for (std::size_t u = u_lo; u < u_hi; ++u) {
                        const std::size_t hh = static_cast<std::size_t>(h) + u - c0;
                        for (std::size_t v = v_lo; v < v_hi; ++v) {
                            const std::size_t ww = w + v - c0;
                            const double kv = ker[((u * k + v) * No + j) * Ni + c];
                            const double* mrow = mp + (hh * W + ww) * N;
#pragma omp simd
                            for (std::size_t n = 0; n < N; ++n) on[n] += kv * mrow[n];
                        }
                    }
                }
            }
        }
    }
    check_output(out, "depthwise_conv");
    return out;
}

Tensor kernel_correlation(std::size_t k, const Tensor& residual, const Tensor& maps) {
    if (k % 2 == 0) throw ConfigError("kernel size must be odd, got " + std::to_string(k));
    if (residual.order() != 3 || maps.order() != 3) {
        throw DimensionError("kernel_correlation expects order-3 residual and maps");
    }
    if (residual.extent(0) != maps.extent(0) || residual.extent(1) != maps.extent(1)) {
        throw DimensionError("kernel_correlation grid mismatch between residual and maps");
    }
    const std::size_t H = residual.extent(0), W = residual.extent(1);
    const std::size_t C = residual.extent(2), N = maps.extent(2);
    const std::size_t c0 = k / 2;

    Tensor out({k, k, C, N});
    const double* res = residual.data();
    const double* mp = maps.data();
    double* dst = out.data();
    const std::ptrdiff_t kk = static_cast<std::ptrdiff_t>(k * k);

    // out[u,v,c,n] = sum over the grid where the shifted map overlaps it.
#pragma omp parallel for schedule(static) num_threads(g_max_threads.load())
    for (std::ptrdiff_t uv = 0; uv < kk; ++uv) {
        const std::size_t u = static_cast<std::size_t>(uv) / k;
        const std::size_t v = static_cast<std::size_t>(uv) % k;
        // valid h: 0 <= h+u-c0 < H
        const std::size_t h_lo = (u >= c0) ? 0 : c0 - u;
        const std::size_t h_hi = std::min(H, H + c0 - u);
        const std::size_t w_lo = (v >= c0) ? 0 : c0 - v;
        const std::size_t w_hi = std::min(W, W + c0 - v);
        double* cell = dst + static_cast<std::size_t>(uv) * C * N;
        for (std::size_t i = 0; i < C * N; ++i) cell[i] = 0.0;
        for (std::size_t h = h_lo; h < h_hi; ++h) {
            const std::size_t hh = h + u - c0;
            for (std::size_t w = w_lo; w < w_hi; ++w) {
                const std::size_t ww = w + v - c0;
                const double* rrow = res + (h * W + w) * C;
                const double* mrow = mp + (hh * W + ww) * N;
                for (std::size_t c = 0; c < C; ++c) {
                    const double rv = rrow[c];
                    double* on = cell + c * N;
#pragma omp simd
                    for (std::size_t n = 0; n < N; ++n) on[n] += rv * mrow[n];
                }
            }
        }
    }
    check_output(out, "kernel_correlation");
    return out;
}

}  // namespace rcd
