#pragma once

#include "rcd/tensor.hpp"

namespace rcd {

// Cap on the OpenMP threads used by the convolution kernels. Results are
// bit-identical for any cap: every output element is accumulated by exactly
// one thread in a fixed order. Default is 1.
void set_max_threads(int n);
int max_threads();

// Multi-channel 2D cross-correlation with zero-padded "same" boundaries.
//   kernels : k x k x No x Ni, k odd
//   input   : H x W x Ni
//   output  : H x W x No,  out[h,w,j] = sum_{n,u,v} kernels[u,v,j,n] *
//             input[h+u-k/2, w+v-k/2, n]   (zero outside the grid)
Tensor conv2d_multi(const Tensor& kernels, const Tensor& input);

// Exact adjoint of conv2d_multi under the Frobenius inner product:
// <conv2d_multi(C,X), Y> == <X, conv2d_transpose(C,Y)> for all X, Y.
//   kernels   : k x k x No x Ni
//   cotangent : H x W x No
//   output    : H x W x Ni
Tensor conv2d_transpose(const Tensor& kernels, const Tensor& cotangent);

// Per-slice 2D correlation of every kernel plane with every map.
//   kernels : k x k x No x Ni
//   maps    : H x W x N
//   output  : H x W x No x Ni x N, out[:,:,j,c,n] = kernels[:,:,j,c] * maps[:,:,n]
Tensor depthwise_conv(const Tensor& kernels, const Tensor& maps);

// Kernel-side adjoint of conv2d_multi: correlation of a residual image with
// each map over all kernel offsets.
//   residual : H x W x C
//   maps     : H x W x N
//   output   : k x k x C x N,
//   out[u,v,c,n] = sum_{h,w} maps[h+u-k/2, w+v-k/2, n] * residual[h,w,c]
Tensor kernel_correlation(std::size_t k, const Tensor& residual, const Tensor& maps);

}  // namespace rcd
