#include "sogkit/int_matrix.hpp"

#include "sogkit/errors.hpp"

namespace sogkit {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long long> entries)
    : rows_(rows), cols_(cols), a_(rows * cols) {
    if (entries.size() != rows * cols)
        throw dimension_mismatch("initializer size does not match matrix shape");
    std::size_t k = 0;
    for (long long e : entries)
        a_[k++] = e;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw dimension_mismatch("column length does not match row count");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty() && b.empty())
        return IntMatrix(std::max(a.rows(), b.rows()), 0);
    if (a.cols() == 0)
        return b;
    if (b.cols() == 0)
        return a;
    if (a.rows() != b.rows())
        throw dimension_mismatch("hstack row counts differ");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
    std::vector<Int> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        r[j] = (*this)(i, j);
    return r;
}

IntMatrix IntMatrix::columns(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i)
            m(i, j) = (*this)(i, idx[j]);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_)
        throw dimension_mismatch("matrix product shape mismatch");
    IntMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = (*this)(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                m(i, j) += aik * o(k, j);
        }
    return m;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_)
        throw dimension_mismatch("vector length does not match column count");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            y[i] += (*this)(i, j) * x[j];
    return y;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = (*this)(i, j);
    return m;
}

IntMatrix IntMatrix::scaled(const Int& c) const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = c * (*this)(i, j);
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0)
            return false;
    return true;
}

bool IntMatrix::is_zero_column(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, j) != 0)
            return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j)
        return;
    for (std::size_t k = 0; k < rows_; ++k)
        std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k)
        (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k)
        (*this)(k, j) = -(*this)(k, j);
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        (*this)(dst, k) += c * (*this)(src, k);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0)
        return;
    for (std::size_t k = 0; k < rows_; ++k)
        (*this)(k, dst) += c * (*this)(k, src);
}

}  // namespace sogkit
