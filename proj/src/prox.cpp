#include "rcd/prox.hpp"

#include <cmath>
#include <vector>

namespace rcd {

ProxKind prox_kind_from_string(const std::string& name) {
    if (name == "soft_threshold") return ProxKind::SoftThreshold;
    if (name == "nonneg_soft_threshold") return ProxKind::NonnegSoftThreshold;
    if (name == "box_project") return ProxKind::BoxProject;
    if (name == "box_then_smooth") return ProxKind::BoxThenSmooth;
    if (name == "identity") return ProxKind::Identity;
    if (name == "l1_then_unit_columns") return ProxKind::L1ThenUnitColumns;
    throw ConfigError("unknown prox kind: " + name);
}

std::string to_string(ProxKind kind) {
    switch (kind) {
        case ProxKind::SoftThreshold: return "soft_threshold";
        case ProxKind::NonnegSoftThreshold: return "nonneg_soft_threshold";
        case ProxKind::BoxProject: return "box_project";
        case ProxKind::BoxThenSmooth: return "box_then_smooth";
        case ProxKind::Identity: return "identity";
        case ProxKind::L1ThenUnitColumns: return "l1_then_unit_columns";
    }
    throw ConfigError("invalid prox kind value");
}

void ProxSpec::validate() const {
    if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
        throw ConfigError("prox threshold must be a finite nonnegative value");
    }
    if (!(smooth_sigma >= 0.0) || !std::isfinite(smooth_sigma)) {
        throw ConfigError("prox smooth_sigma must be a finite nonnegative value");
    }
    if (!(lo <= hi)) throw ConfigError("prox box bounds require lo <= hi");
}

namespace {

Tensor soft_threshold(const Tensor& x, double t) {
    Tensor out = x;
    double* p = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double a = std::abs(p[i]) - t;
        p[i] = a > 0.0 ? (p[i] > 0.0 ? a : -a) : 0.0;
    }
    return out;
}

Tensor nonneg_soft_threshold(const Tensor& x, double t) {
    Tensor out = x;
    double* p = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        p[i] = std::max(p[i] - t, 0.0);
    }
    return out;
}

std::vector<double> gaussian_weights(double sigma) {
    const int r = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> w(2 * r + 1);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        w[i + r] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += w[i + r];
    }
    for (double& v : w) v /= sum;
    return w;
}

// Separable Gaussian on each channel of an H x W x C tensor (C absent for
// order 2). Borders replicate the edge sample so constants are preserved.
Tensor smooth_channels(const Tensor& x, double sigma) {
    if (sigma <= 0.0) return x;
    const std::vector<double> w = gaussian_weights(sigma);
    const int r = static_cast<int>(w.size() / 2);
    const std::size_t H = x.extent(0);
    const std::size_t W = x.order() >= 2 ? x.extent(1) : 1;
    const std::size_t C = x.order() >= 3 ? x.extent(2) : 1;

    auto clampi = [](std::ptrdiff_t i, std::size_t n) {
        if (i < 0) return static_cast<std::size_t>(0);
        if (i >= static_cast<std::ptrdiff_t>(n)) return n - 1;
        return static_cast<std::size_t>(i);
    };

    Tensor tmp = x, out = x;
    const double* src = x.data();
    double* mid = tmp.data();
    // rows
    for (std::size_t h = 0; h < H; ++h)
        for (std::size_t ww = 0; ww < W; ++ww)
            for (std::size_t c = 0; c < C; ++c) {
                double acc = 0.0;
                for (int i = -r; i <= r; ++i) {
                    const std::size_t hh = clampi(static_cast<std::ptrdiff_t>(h) + i, H);
                    acc += w[i + r] * src[(hh * W + ww) * C + c];
                }
                mid[(h * W + ww) * C + c] = acc;
            }
    // columns
    double* dst = out.data();
    for (std::size_t h = 0; h < H; ++h)
        for (std::size_t ww = 0; ww < W; ++ww)
            for (std::size_t c = 0; c < C; ++c) {
                double acc = 0.0;
                for (int i = -r; i <= r; ++i) {
                    const std::size_t w2 = clampi(static_cast<std::ptrdiff_t>(ww) + i, W);
                    acc += w[i + r] * mid[(h * W + w2) * C + c];
                }
                dst[(h * W + ww) * C + c] = acc;
            }
    return out;
}

Tensor l1_then_unit_columns(const Tensor& x, double t) {
    if (x.order() != 2) {
        throw DimensionError("l1_then_unit_columns expects an order-2 tensor");
    }
    Tensor out = soft_threshold(x, t);
    const std::size_t rows = out.extent(0), cols = out.extent(1);
    double* p = out.data();
    for (std::size_t c = 0; c < cols; ++c) {
        double ss = 0.0;
        for (std::size_t rI = 0; rI < rows; ++rI) {
            const double v = p[rI * cols + c];
            ss += v * v;
        }
        if (ss == 0.0) {
            // zero column: the unit-norm constraint is infeasible, reset to e1
            p[c] = 1.0;
            continue;
        }
        const double inv = 1.0 / std::sqrt(ss);
        for (std::size_t rI = 0; rI < rows; ++rI) p[rI * cols + c] *= inv;
    }
    return out;
}

}  // namespace

Tensor apply_prox(const ProxSpec& spec, const Tensor& x) {
    spec.validate();
    switch (spec.kind) {
        case ProxKind::SoftThreshold:
            return soft_threshold(x, spec.threshold);
        case ProxKind::NonnegSoftThreshold:
            return nonneg_soft_threshold(x, spec.threshold);
        case ProxKind::BoxProject:
            return clamp(x, spec.lo, spec.hi);
        case ProxKind::BoxThenSmooth:
            return smooth_channels(clamp(x, spec.lo, spec.hi), spec.smooth_sigma);
        case ProxKind::Identity:
            return x;
        case ProxKind::L1ThenUnitColumns:
            return l1_then_unit_columns(x, spec.threshold);
    }
    throw ConfigError("invalid prox kind value");
}

double penalty_value(const ProxSpec& spec, const Tensor& x) {
    spec.validate();
    switch (spec.kind) {
        case ProxKind::SoftThreshold:
        case ProxKind::NonnegSoftThreshold:
        case ProxKind::L1ThenUnitColumns:
            return spec.threshold * l1_norm(x);
        case ProxKind::BoxProject:
        case ProxKind::BoxThenSmooth:
        case ProxKind::Identity:
            return 0.0;
    }
    throw ConfigError("invalid prox kind value");
}

}  // namespace rcd
