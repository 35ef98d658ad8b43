#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "rcd/errors.hpp"

namespace rcd {

// Dense row-major tensor of doubles, order 1..5, last mode fastest.
// Every extent is at least 1 and all stored values are finite; constructors
// and the operations in conv.hpp enforce both.
class Tensor {
public:
    Tensor() = default;

    // Zero-filled tensor of the given shape.
    explicit Tensor(std::vector<std::size_t> shape);

    // Takes ownership of `data`, which must have numel(shape) finite values.
    Tensor(std::vector<std::size_t> shape, std::vector<double> data);

    static Tensor full(std::vector<std::size_t> shape, double value);

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t order() const { return shape_.size(); }
    std::size_t extent(std::size_t mode) const { return shape_[mode]; }  // 0-based
    std::size_t size() const { return data_.size(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    // Row-major multi-index access, intended for tests and cold paths.
    double at(std::initializer_list<std::size_t> idx) const { return data_[offset(idx)]; }
    double& at(std::initializer_list<std::size_t> idx) { return data_[offset(idx)]; }
    std::size_t offset(std::initializer_list<std::size_t> idx) const;

    bool all_finite() const;
    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

std::size_t numel(const std::vector<std::size_t>& shape);

// --- reshaping primitives -------------------------------------------------
//
// mode_unfold places the mode-n fibers of x as the columns of an
// I_n x (prod of remaining extents) matrix. The column index enumerates the
// remaining modes in increasing mode order, last of them fastest, i.e. the
// same row-major order vec() uses. mode is 1-based.
Tensor mode_unfold(const Tensor& x, std::size_t mode);

// Inverse of mode_unfold for the given original shape.
Tensor mode_fold(const Tensor& matrix, std::size_t mode, const std::vector<std::size_t>& shape);

// Row-major flattening (last mode fastest), returns an order-1 tensor.
Tensor vec(const Tensor& x);

// --- elementwise helpers and reductions ------------------------------------

double dot(const Tensor& a, const Tensor& b);
double frobenius_norm(const Tensor& a);
double l1_norm(const Tensor& a);
double max_abs(const Tensor& a);

Tensor add(const Tensor& a, const Tensor& b);
Tensor subtract(const Tensor& a, const Tensor& b);
Tensor scaled(const Tensor& a, double s);
Tensor clamp(const Tensor& a, double lo, double hi);

// a += s * b
void axpy_inplace(Tensor& a, double s, const Tensor& b);

}  // namespace rcd
