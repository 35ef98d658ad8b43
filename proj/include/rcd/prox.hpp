#pragma once

#include <string>

#include "rcd/tensor.hpp"

namespace rcd {

enum class ProxKind {
    SoftThreshold,        // sign(x) * max(|x| - threshold, 0)
    NonnegSoftThreshold,  // max(x - threshold, 0)
    BoxProject,           // clamp to [lo, hi]
    BoxThenSmooth,        // clamp, then per-channel Gaussian smoothing
    Identity,
    L1ThenUnitColumns,    // soft-threshold, then scale each column to unit l2
};

ProxKind prox_kind_from_string(const std::string& name);  // ConfigError on unknown
std::string to_string(ProxKind kind);

struct ProxSpec {
    ProxKind kind = ProxKind::Identity;
    double threshold = 0.0;     // >= 0
    double smooth_sigma = 0.0;  // BoxThenSmooth only; 0 disables the smoothing
    double lo = 0.0;
    double hi = 1.0;

    void validate() const;  // ConfigError on invalid fields
};

// Applies the operator elementwise (or columnwise for L1ThenUnitColumns,
// which expects an order-2 tensor). Output has the input's shape.
//
// BoxThenSmooth is a heuristic composite, not the prox of any single
// function: clamp to the box, then convolve each channel with a normalized
// Gaussian (truncated at 3*sigma, weights renormalized to sum 1, borders
// replicate the edge sample). It plays the role of a background smoothness
// prior.
//
// L1ThenUnitColumns: a column that is entirely zero after thresholding is
// reset to the first standard basis vector, keeping the unit-norm constraint
// satisfiable at zero.
Tensor apply_prox(const ProxSpec& spec, const Tensor& x);

// Penalty value of the regularizer the prox stands for, used in reported
// objectives: threshold * l1 for the soft-threshold family, 0 for
// projections, identity and the smoothing composite.
double penalty_value(const ProxSpec& spec, const Tensor& x);

}  // namespace rcd
