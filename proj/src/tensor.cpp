#include "v2v/tensor.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace v2v {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("Matrix: dimensions must be >= 1");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) {
        throw std::invalid_argument("Matrix: empty initializer");
    }
    cols_ = rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("Matrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::ones(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, 1.0);
}

bool Matrix::is_binary() const {
    for (double v : data_) {
        if (v != 0.0 && v != 1.0) {
            return false;
        }
    }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t.at(c, r) = at(r, c);
        }
    }
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("Matrix multiply: inner dimensions differ");
    }
    Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = at(r, k);
            if (a == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                out.at(r, c) += a * rhs.at(k, c);
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("Matrix add: shape mismatch");
    }
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = data_[i] + rhs.data_[i];
    }
    return out;
}

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      words_per_row_((cols + 63) / 64),
      bits_(rows * words_per_row_, 0) {}

BinaryMatrix BinaryMatrix::from_dense(const Matrix& m) {
    BinaryMatrix b(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const double v = m.at(r, c);
            if (v != 0.0 && v != 1.0) {
                throw std::invalid_argument("BinaryMatrix: entry not 0/1");
            }
            if (v == 1.0) {
                b.set(r, c);
            }
        }
    }
    return b;
}

bool BinaryMatrix::get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_per_row_ + c / 64] >> (c % 64)) & 1u;
}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool v) {
    auto& word = bits_[r * words_per_row_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    if (v) {
        word |= mask;
    } else {
        word &= ~mask;
    }
}

std::size_t BinaryMatrix::row_popcount(std::size_t r) const {
    std::size_t n = 0;
    for (std::size_t w = 0; w < words_per_row_; ++w) {
        n += std::popcount(bits_[r * words_per_row_ + w]);
    }
    return n;
}

Matrix BinaryMatrix::dense() const {
    if (rows_ == 0) {
        throw std::logic_error("BinaryMatrix::dense: matrix has no rows");
    }
    Matrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (get(r, c)) {
                m.at(r, c) = 1.0;
            }
        }
    }
    return m;
}

Matrix kronecker(const Matrix& a, const Matrix& b, std::size_t entry_cap) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows != 0 && cols > entry_cap / rows) {
        throw std::length_error("kronecker: result exceeds entry cap");
    }
    Matrix out(rows, cols);
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const double v = a.at(ar, ac);
            if (v == 0.0) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out.at(ar * b.rows() + br, ac * b.cols() + bc) =
                        v * b.at(br, bc);
                }
            }
        }
    }
    return out;
}

Vector hadamard(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("hadamard: length mismatch");
    }
    Vector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = u[i] * v[i];
    }
    return out;
}

double quad_form_trace(const Vector& x, const Matrix& a, const Matrix& b,
                       const Vector& y) {
    if (x.size() != a.rows() || x.size() != b.rows() || y.size() != a.cols() ||
        y.size() != b.cols()) {
        throw std::invalid_argument("quad_form_trace: dimension mismatch");
    }
    // tr{diag(x) A diag(y) Bᵀ} accumulated without forming the products.
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (x[i] == 0.0) {
            continue;
        }
        double row = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            row += a.at(i, j) * y[j] * b.at(i, j);
        }
        acc += x[i] * row;
    }
    return acc;
}

Matrix kron_compose(const Matrix& x, const Matrix& y, const Matrix& w,
                    const Matrix& z) {
    if (x.cols() != y.rows() || w.cols() != z.rows()) {
        throw std::invalid_argument("kron_compose: inner dimension mismatch");
    }
    return kronecker(x * y, w * z);
}

}  // namespace v2v
