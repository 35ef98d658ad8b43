#include "rcd/tensor.hpp"

#include <cmath>
#include <utility>

namespace rcd {

namespace {

void check_shape(const std::vector<std::size_t>& shape) {
    if (shape.empty() || shape.size() > 5) {
        throw DimensionError("tensor order must be between 1 and 5, got " +
                             std::to_string(shape.size()));
    }
    for (std::size_t e : shape) {
        if (e == 0) throw DimensionError("tensor extents must be at least 1");
    }
}

}  // namespace

std::size_t numel(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t e : shape) n *= e;
    return n;
}

Tensor::Tensor(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
    check_shape(shape_);
    data_.assign(numel(shape_), 0.0);
}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    check_shape(shape_);
    if (data_.size() != numel(shape_)) {
        throw DimensionError("tensor data length does not match shape");
    }
    if (!all_finite()) throw NumericError("tensor constructed with non-finite values");
}

Tensor Tensor::full(std::vector<std::size_t> shape, double value) {
    if (!std::isfinite(value)) throw NumericError("tensor fill value not finite");
    Tensor t(std::move(shape));
    for (double& v : t.data_) v = value;
    return t;
}

std::size_t Tensor::offset(std::initializer_list<std::size_t> idx) const {
    if (idx.size() != shape_.size()) throw DimensionError("index order does not match tensor order");
    std::size_t off = 0;
    std::size_t mode = 0;
    for (std::size_t i : idx) {
        if (i >= shape_[mode]) throw DimensionError("tensor index out of range");
        off = off * shape_[mode] + i;
        ++mode;
    }
    return off;
}

bool Tensor::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

// --- reshaping --------------------------------------------------------------

Tensor mode_unfold(const Tensor& x, std::size_t mode) {
    const std::size_t order = x.order();
    if (mode < 1 || mode > order) throw DimensionError("unfold mode out of range");
    const std::size_t m = mode - 1;
    const std::size_t rows = x.extent(m);
    const std::size_t cols = x.size() / rows;

    // Strides of the source tensor (row-major).
    std::size_t stride[5];
    std::size_t s = 1;
    for (std::size_t i = order; i-- > 0;) {
        stride[i] = s;
        s *= x.extent(i);
    }

    Tensor out({rows, cols});
    const double* src = x.data();
    double* dst = out.data();
    std::size_t idx[5] = {0, 0, 0, 0, 0};
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t base = 0;
        for (std::size_t i = 0; i < order; ++i) {
            if (i != m) base += idx[i] * stride[i];
        }
        for (std::size_t r = 0; r < rows; ++r) {
            dst[r * cols + c] = src[base + r * stride[m]];
        }
        // advance the remaining modes, last one fastest
        for (std::size_t i = order; i-- > 0;) {
            if (i == m) continue;
            if (++idx[i] < x.extent(i)) break;
            idx[i] = 0;
        }
    }
    return out;
}

Tensor mode_fold(const Tensor& matrix, std::size_t mode, const std::vector<std::size_t>& shape) {
    if (matrix.order() != 2) throw DimensionError("mode_fold expects a matrix");
    const std::size_t order = shape.size();
    if (mode < 1 || mode > order) throw DimensionError("fold mode out of range");
    const std::size_t m = mode - 1;
    if (matrix.extent(0) != shape[m] || matrix.extent(1) != numel(shape) / shape[m]) {
        throw DimensionError("mode_fold matrix extents do not match target shape");
    }

    Tensor out(shape);
    std::size_t stride[5];
    std::size_t s = 1;
    for (std::size_t i = order; i-- > 0;) {
        stride[i] = s;
        s *= shape[i];
    }

    const std::size_t rows = matrix.extent(0);
    const std::size_t cols = matrix.extent(1);
    const double* src = matrix.data();
    double* dst = out.data();
    std::size_t idx[5] = {0, 0, 0, 0, 0};
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t base = 0;
        for (std::size_t i = 0; i < order; ++i) {
            if (i != m) base += idx[i] * stride[i];
        }
        for (std::size_t r = 0; r < rows; ++r) {
            dst[base + r * stride[m]] = src[r * cols + c];
        }
        for (std::size_t i = order; i-- > 0;) {
            if (i == m) continue;
            if (++idx[i] < shape[i]) break;
            idx[i] = 0;
        }
    }
    return out;
}

Tensor vec(const Tensor& x) {
    std::vector<double> copy(x.data(), x.data() + x.size());
    return Tensor({x.size()}, std::move(copy));
}

// --- elementwise ------------------------------------------------------------

namespace {

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b)) throw DimensionError(std::string(op) + ": shape mismatch");
}

}  // namespace

double dot(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "dot");
    double acc = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) acc += pa[i] * pb[i];
    return acc;
}

double frobenius_norm(const Tensor& a) {
    double acc = 0.0;
    const double* p = a.data();
    for (std::size_t i = 0; i < a.size(); ++i) acc += p[i] * p[i];
    return std::sqrt(acc);
}

double l1_norm(const Tensor& a) {
    double acc = 0.0;
    const double* p = a.data();
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(p[i]);
    return acc;
}

double max_abs(const Tensor& a) {
    double m = 0.0;
    const double* p = a.data();
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

Tensor add(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "add");
    Tensor out = a;
    double* po = out.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < out.size(); ++i) po[i] += pb[i];
    return out;
}

Tensor subtract(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "subtract");
    Tensor out = a;
    double* po = out.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < out.size(); ++i) po[i] -= pb[i];
    return out;
}

Tensor scaled(const Tensor& a, double s) {
    Tensor out = a;
    double* po = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) po[i] *= s;
    return out;
}

Tensor clamp(const Tensor& a, double lo, double hi) {
    Tensor out = a;
    double* po = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        po[i] = std::min(hi, std::max(lo, po[i]));
    }
    return out;
}

void axpy_inplace(Tensor& a, double s, const Tensor& b) {
    check_same_shape(a, b, "axpy");
    double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) pa[i] += s * pb[i];
}

}  // namespace rcd
