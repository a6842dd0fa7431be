#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coles {

/// Row-major dense matrix of doubles.
class DenseMat {
public:
    DenseMat() = default;
    DenseMat(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMat(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMat identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept
    {
        return {data_.data() + i * cols_, cols_};
    }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    bool all_finite() const noexcept;

    DenseMat transposed() const;

    friend bool operator==(const DenseMat&, const DenseMat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Plain triple loop a * b.
DenseMat matmul(const DenseMat& a, const DenseMat& b);

/// a^T * b without forming the transpose.
DenseMat matmul_tn(const DenseMat& a, const DenseMat& b);

DenseMat operator+(const DenseMat& a, const DenseMat& b);
DenseMat operator-(const DenseMat& a, const DenseMat& b);
DenseMat operator*(double s, const DenseMat& a);

double frobenius_norm(const DenseMat& a);
double max_abs_diff(const DenseMat& a, const DenseMat& b);

double dot(std::span<const double> a, std::span<const double> b);

} // namespace coles
