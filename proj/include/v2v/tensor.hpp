#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace v2v {

using Vector = std::vector<double>;

/// Dense real matrix, row-major. Small by design: conflict-matrix algebra
/// and the two Kronecker/Hadamard identities, nothing more.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix ones(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }

    bool is_binary() const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;

    bool operator==(const Matrix& rhs) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// 0/1 matrix with bit-packed rows. Conflict matrices are large and sparse,
/// so rows are stored as 64-bit words.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols);

    static BinaryMatrix from_dense(const Matrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool v = true);

    std::size_t row_popcount(std::size_t r) const;

    Matrix dense() const;

    bool operator==(const BinaryMatrix& rhs) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Default cap on dense Kronecker materialization (entries).
inline constexpr std::size_t kKroneckerEntryCap = 10'000'000;

/// A ⊗ B. Throws std::length_error when the result would exceed `entry_cap`.
Matrix kronecker(const Matrix& a, const Matrix& b,
                 std::size_t entry_cap = kKroneckerEntryCap);

/// Elementwise product of equal-length vectors.
Vector hadamard(const Vector& u, const Vector& v);

/// xᵀ(A∘B)y evaluated through the trace form tr{diag(x)·A·diag(y)·Bᵀ}.
double quad_form_trace(const Vector& x, const Matrix& a, const Matrix& b,
                       const Vector& y);

/// (X⊗W)(Y⊗Z) evaluated as XY ⊗ WZ.
Matrix kron_compose(const Matrix& x, const Matrix& y, const Matrix& w,
                    const Matrix& z);

}  // namespace v2v
