#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace frul {

// Dense n-dimensional array of doubles, row-major.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> shape);
    Tensor(std::initializer_list<std::size_t> shape)
        : Tensor(std::vector<std::size_t>(shape)) {}

    static Tensor zeros(std::vector<std::size_t> shape) { return Tensor(std::move(shape)); }
    static Tensor full(std::vector<std::size_t> shape, double value);
    static Tensor from(std::vector<std::size_t> shape, std::vector<double> data);
    static Tensor scalar(double value) { return from({1}, {value}); }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return data_.size(); }
    std::size_t dim(std::size_t i) const { return shape_[i]; }
    bool empty() const { return data_.empty(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    // rank-2 accessors
    std::size_t rows() const;
    std::size_t cols() const;
    double& at(std::size_t r, std::size_t c);
    double at(std::size_t r, std::size_t c) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    void fill(double value);

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

// c = a[m,k] * b[k,n]
Tensor matmul(const Tensor& a, const Tensor& b);
// c = aᵀ[m,k] * b[m,n]  (a transposed)
Tensor matmul_tn(const Tensor& a, const Tensor& b);
// c = a[m,k] * bᵀ[n,k]  (b transposed)
Tensor matmul_nt(const Tensor& a, const Tensor& b);
// c += a * b
void matmul_acc(Tensor& c, const Tensor& a, const Tensor& b);
// c += aᵀ * b
void matmul_tn_acc(Tensor& c, const Tensor& a, const Tensor& b);
// c += a * bᵀ
void matmul_nt_acc(Tensor& c, const Tensor& a, const Tensor& b);

void add_inplace(Tensor& a, const Tensor& b);
// y += alpha * x
void axpy(double alpha, const Tensor& x, Tensor& y);
void scale_inplace(Tensor& a, double alpha);
// broadcast-add a row vector [n] onto every row of a [m,n]
void add_row_inplace(Tensor& a, const Tensor& row);
// column sums of a [m,n] accumulated into out [n]
void col_sum_acc(Tensor& out, const Tensor& a);

double max_abs(const Tensor& a);
double l2_norm(const Tensor& a);

}  // namespace frul
