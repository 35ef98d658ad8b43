#pragma once

#include "rcd/tensor.hpp"

// Serial reference implementations of the convolution kernels, written as
// plain nested loops over the defining sums. They share no code with the
// parallel kernels in src/conv.cpp and exist for tests and the benchmark;
// nothing in the library links against them.
namespace rcd::ref {

Tensor conv2d_multi(const Tensor& kernels, const Tensor& input);
Tensor conv2d_transpose(const Tensor& kernels, const Tensor& cotangent);
Tensor depthwise_conv(const Tensor& kernels, const Tensor& maps);
Tensor kernel_correlation(std::size_t k, const Tensor& residual, const Tensor& maps);

}  // namespace rcd::ref
