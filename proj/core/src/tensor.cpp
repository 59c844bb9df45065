#include "frul/tensor.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "frul/errors.hpp"

namespace frul {

namespace {

using EigenRowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const EigenRowMat>;
using MutMap = Eigen::Map<EigenRowMat>;

std::size_t shape_product(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
}

void require_rank2(const Tensor& t, const char* what) {
    if (t.rank() != 2) throw InvalidArgument(std::string(what) + ": rank-2 tensor required");
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_product(shape_), 0.0) {
    for (std::size_t d : shape_) {
        if (d == 0) throw InvalidArgument("tensor dimensions must be positive");
    }
}

Tensor Tensor::full(std::vector<std::size_t> shape, double value) {
    Tensor t(std::move(shape));
    t.fill(value);
    return t;
}

Tensor Tensor::from(std::vector<std::size_t> shape, std::vector<double> data) {
    Tensor t(std::move(shape));
    if (data.size() != t.size())
        throw InvalidArgument("tensor data length does not match shape product");
    t.data_ = std::move(data);
    return t;
}

std::size_t Tensor::rows() const {
    require_rank2(*this, "rows");
    return shape_[0];
}

std::size_t Tensor::cols() const {
    require_rank2(*this, "cols");
    return shape_[1];
}

double& Tensor::at(std::size_t r, std::size_t c) { return data_[r * shape_[1] + c]; }
double Tensor::at(std::size_t r, std::size_t c) const { return data_[r * shape_[1] + c]; }

void Tensor::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

namespace {

void check_mm(const Tensor& a, const Tensor& b, std::size_t ak, std::size_t bk) {
    require_rank2(a, "matmul");
    require_rank2(b, "matmul");
    if (ak != bk) throw InvalidArgument("matmul: inner dimensions differ");
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
    check_mm(a, b, a.cols(), b.rows());
    Tensor c({a.rows(), b.cols()});
    MutMap(c.data(), c.rows(), c.cols()).noalias() =
        ConstMap(a.data(), a.rows(), a.cols()) * ConstMap(b.data(), b.rows(), b.cols());
    return c;
}

Tensor matmul_tn(const Tensor& a, const Tensor& b) {
    check_mm(a, b, a.rows(), b.rows());
    Tensor c({a.cols(), b.cols()});
    MutMap(c.data(), c.rows(), c.cols()).noalias() =
        ConstMap(a.data(), a.rows(), a.cols()).transpose() *
        ConstMap(b.data(), b.rows(), b.cols());
    return c;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
    check_mm(a, b, a.cols(), b.cols());
    Tensor c({a.rows(), b.rows()});
    MutMap(c.data(), c.rows(), c.cols()).noalias() =
        ConstMap(a.data(), a.rows(), a.cols()) *
        ConstMap(b.data(), b.rows(), b.cols()).transpose();
    return c;
}

void matmul_acc(Tensor& c, const Tensor& a, const Tensor& b) {
    check_mm(a, b, a.cols(), b.rows());
    MutMap(c.data(), c.rows(), c.cols()).noalias() +=
        ConstMap(a.data(), a.rows(), a.cols()) * ConstMap(b.data(), b.rows(), b.cols());
}

void matmul_tn_acc(Tensor& c, const Tensor& a, const Tensor& b) {
    check_mm(a, b, a.rows(), b.rows());
    MutMap(c.data(), c.rows(), c.cols()).noalias() +=
        ConstMap(a.data(), a.rows(), a.cols()).transpose() *
        ConstMap(b.data(), b.rows(), b.cols());
}

void matmul_nt_acc(Tensor& c, const Tensor& a, const Tensor& b) {
    check_mm(a, b, a.cols(), b.cols());
    MutMap(c.data(), c.rows(), c.cols()).noalias() +=
        ConstMap(a.data(), a.rows(), a.cols()) *
        ConstMap(b.data(), b.rows(), b.cols()).transpose();
}

void add_inplace(Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw InvalidArgument("add: shape mismatch");
    double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) pa[i] += pb[i];
}

void axpy(double alpha, const Tensor& x, Tensor& y) {
    if (!x.same_shape(y)) throw InvalidArgument("axpy: shape mismatch");
    double* py = y.data();
    const double* px = x.data();
    for (std::size_t i = 0; i < y.size(); ++i) py[i] += alpha * px[i];
}

void scale_inplace(Tensor& a, double alpha) {
    for (double& v : a.values()) v *= alpha;
}

void add_row_inplace(Tensor& a, const Tensor& row) {
    if (a.rank() != 2 || row.size() != a.cols())
        throw InvalidArgument("add_row: shape mismatch");
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double* pa = a.data() + r * a.cols();
        const double* pr = row.data();
        for (std::size_t c = 0; c < a.cols(); ++c) pa[c] += pr[c];
    }
}

void col_sum_acc(Tensor& out, const Tensor& a) {
    if (a.rank() != 2 || out.size() != a.cols())
        throw InvalidArgument("col_sum: shape mismatch");
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const double* pa = a.data() + r * a.cols();
        double* po = out.data();
        for (std::size_t c = 0; c < a.cols(); ++c) po[c] += pa[c];
    }
}

double max_abs(const Tensor& a) {
    double m = 0.0;
    for (double v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

double l2_norm(const Tensor& a) {
    double s = 0.0;
    for (double v : a.values()) s += v * v;
    return std::sqrt(s);
}

}  // namespace frul
