#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "sogkit/integer.hpp"

namespace sogkit {

/// Dense integer matrix, row-major, arbitrary-precision entries.
/// Columns double as lattice generators throughout the group layer.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long long> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols);
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    std::vector<Int> column(std::size_t j) const;
    std::vector<Int> row(std::size_t i) const;
    IntMatrix columns(const std::vector<std::size_t>& idx) const;

    IntMatrix operator*(const IntMatrix& o) const;
    std::vector<Int> apply(const std::vector<Int>& x) const;  // this * x
    IntMatrix transpose() const;
    IntMatrix scaled(const Int& c) const;

    bool is_zero() const;
    bool is_zero_column(std::size_t j) const;

    // Elementary operations used by the normal-form kernels.
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& c);  // row dst += c * row src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& c);  // col dst += c * col src

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

}  // namespace sogkit
