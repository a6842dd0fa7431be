#include "coles/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coles/error.hpp"

namespace coles {

DenseMat::DenseMat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

DenseMat::DenseMat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data))
{
    if (data_.size() != rows * cols)
        throw InvalidArgument("DenseMat: data length " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(rows) + "x" +
                              std::to_string(cols));
}

DenseMat DenseMat::identity(std::size_t n)
{
    DenseMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

bool DenseMat::all_finite() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMat DenseMat::transposed() const
{
    DenseMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

DenseMat matmul(const DenseMat& a, const DenseMat& b)
{
    if (a.cols() != b.rows())
        throw InvalidArgument("matmul: inner dimensions differ");
    DenseMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            const auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                out[j] += aik * brow[j];
        }
    }
    return c;
}

DenseMat matmul_tn(const DenseMat& a, const DenseMat& b)
{
    if (a.rows() != b.rows())
        throw InvalidArgument("matmul_tn: row counts differ");
    DenseMat c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const auto arow = a.row(k);
        const auto brow = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = arow[i];
            auto out = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j)
                out[j] += aki * brow[j];
        }
    }
    return c;
}

namespace {
void require_same_shape(const DenseMat& a, const DenseMat& b, const char* op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidArgument(std::string(op) + ": shape mismatch");
}
} // namespace

DenseMat operator+(const DenseMat& a, const DenseMat& b)
{
    require_same_shape(a, b, "operator+");
    DenseMat c = a;
    auto out = c.data();
    const auto in = b.data();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += in[i];
    return c;
}

DenseMat operator-(const DenseMat& a, const DenseMat& b)
{
    require_same_shape(a, b, "operator-");
    DenseMat c = a;
    auto out = c.data();
    const auto in = b.data();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] -= in[i];
    return c;
}

DenseMat operator*(double s, const DenseMat& a)
{
    DenseMat c = a;
    for (double& v : c.data())
        v *= s;
    return c;
}

double frobenius_norm(const DenseMat& a)
{
    double sum = 0.0;
    for (double v : a.data())
        sum += v * v;
    return std::sqrt(sum);
}

double max_abs_diff(const DenseMat& a, const DenseMat& b)
{
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw InvalidArgument("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace coles
