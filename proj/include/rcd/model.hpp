#pragma once

#include <string>

#include "rcd/prox.hpp"
#include "rcd/tensor.hpp"

namespace rcd {

// H x W x 3 intensities. Observations and accepted backgrounds live in [0,1];
// rain layers may leave that range but stay finite.
struct Image {
    Tensor pixels;

    Image() = default;
    explicit Image(Tensor t);

    std::size_t height() const { return pixels.extent(0); }
    std::size_t width() const { return pixels.extent(1); }

    // Throws ConstraintError if any value leaves [0,1] by more than tol.
    void check_unit_range(double tol = 0.0) const;
};

// H x W x N activation maps, one per rain kernel.
struct RainMaps {
    Tensor maps;

    RainMaps() = default;
    explicit RainMaps(Tensor t);

    std::size_t count() const { return maps.extent(2); }
};

// k x k x 3 x N stack of color rain kernels. Each kernel's Frobenius norm is
// kept at or below norm_bound by the kernel update.
struct KernelStack {
    Tensor kernels;
    double norm_bound = 1.0;

    KernelStack() = default;
    explicit KernelStack(Tensor t, double bound = 1.0);

    std::size_t kernel_size() const { return kernels.extent(0); }
    std::size_t count() const { return kernels.extent(3); }
};

// k x k x 3 x d dictionary of unit-Frobenius-norm atoms; the coefficients
// alone carry magnitude.
struct KernelDictionary {
    Tensor atoms;

    KernelDictionary() = default;
    explicit KernelDictionary(Tensor t);

    std::size_t kernel_size() const { return atoms.extent(0); }
    std::size_t count() const { return atoms.extent(3); }
};

// d x N weighting matrix with unit-l2 columns after projection.
struct Coefficients {
    Tensor weights;

    Coefficients() = default;
    explicit Coefficients(Tensor t);

    std::size_t dictionary_size() const { return weights.extent(0); }
    std::size_t count() const { return weights.extent(1); }

    // Largest deviation of any column's l2 norm from 1.
    double max_unit_norm_violation() const;
};

// Rain layer R with R[:,:,c] = sum_n kernels[:,:,c,n] (*) maps[:,:,n].
Image synthesize_rain(const KernelStack& kernels, const RainMaps& maps);

// K_n = sum_i atoms[:,:,:,i] * weights[i,n].
KernelStack dict_apply(const KernelDictionary& dictionary, const Coefficients& coeffs);

// |O - B - K(*)M|_F^2 + tau_m * |M|_1 + penalty of reg_b at B (0 for box
// projection, which acts as an indicator).
double objective_crcd(const Image& O, const Image& B, const RainMaps& M, const KernelStack& K,
                      double tau_m, const ProxSpec& reg_b);

// As objective_crcd with K = dictionary * alpha plus tau_alpha * |alpha|_1.
// Throws ConstraintError if any alpha column's norm deviates from 1 by more
// than 1e-9.
double objective_drcd(const Image& O, const Image& B, const RainMaps& M,
                      const KernelDictionary& D, const Coefficients& alpha, double tau_m,
                      double tau_alpha, const ProxSpec& reg_b);

// Shared tail of the objectives once the rain layer is known; the objective
// functions and the solver trace both go through it so reported values agree
// bit for bit.
double objective_given_rain(const Image& O, const Image& B, const Tensor& rain,
                            const RainMaps& M, double tau_m, const ProxSpec& reg_b);

// --- "RCDK1" binary container ------------------------------------------------
//
// Layout: 5 magic bytes "RCDK1", three little-endian u32 extents, then the
// float64 payload in row-major order.
//   kernel stacks / dictionaries: extents (k, channels, count),
//                                 payload k*k*channels*count values
//   rain maps:                    extents (H, W, N), payload H*W*N values
// The two loaders validate the payload length against their own layout.

void save_kernel_container(const std::string& path, const Tensor& kernels);
Tensor load_kernel_container(const std::string& path);

void save_map_container(const std::string& path, const Tensor& maps);
Tensor load_map_container(const std::string& path);

}  // namespace rcd
